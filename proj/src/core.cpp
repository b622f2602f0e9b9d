#include "powpres/core.h"

#include <algorithm>

namespace powpres {

LinearTerm LinearTerm::var(VarId v, const BigInt& c)
{
  LinearTerm t;
  t.setCoeff(v, c);
  return t;
}

BigInt LinearTerm::coeff(VarId v) const
{
  auto it = d_coeffs.find(v);
  return it == d_coeffs.end() ? BigInt(0) : it->second;
}

void LinearTerm::setCoeff(VarId v, const BigInt& c)
{
  if (c == 0)
    d_coeffs.erase(v);
  else
    d_coeffs[v] = c;
}

void LinearTerm::addCoeff(VarId v, const BigInt& c)
{
  if (c == 0) return;
  auto it = d_coeffs.find(v);
  if (it == d_coeffs.end())
  {
    d_coeffs.emplace(v, c);
    return;
  }
  it->second += c;
  if (it->second == 0) d_coeffs.erase(it);
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& o)
{
  d_const += o.d_const;
  for (const auto& [v, c] : o.d_coeffs) addCoeff(v, c);
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& o)
{
  d_const -= o.d_const;
  for (const auto& [v, c] : o.d_coeffs) addCoeff(v, -c);
  return *this;
}

LinearTerm& LinearTerm::operator*=(const BigInt& k)
{
  if (k == 0)
  {
    d_const = 0;
    d_coeffs.clear();
    return *this;
  }
  d_const *= k;
  for (auto& [v, c] : d_coeffs) c *= k;
  return *this;
}

LinearTerm LinearTerm::operator-() const
{
  LinearTerm t = *this;
  t *= BigInt(-1);
  return t;
}

LinearTerm LinearTerm::substitute(VarId v, const LinearTerm& t) const
{
  auto it = d_coeffs.find(v);
  if (it == d_coeffs.end()) return *this;
  LinearTerm r = *this;
  BigInt c = it->second;
  r.d_coeffs.erase(v);
  r += t * c;
  return r;
}

LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
LinearTerm operator*(LinearTerm a, const BigInt& k) { return a *= k; }

const char* relText(Rel r)
{
  switch (r)
  {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

bool relHolds(const BigInt& v, Rel r)
{
  int s = sgn(v);
  switch (r)
  {
    case Rel::Lt: return s < 0;
    case Rel::Le: return s <= 0;
    case Rel::Eq: return s == 0;
    case Rel::Ne: return s != 0;
    case Rel::Ge: return s >= 0;
    case Rel::Gt: return s > 0;
  }
  return false;
}

bool Atom::operator==(const Atom& o) const
{
  if (kind != o.kind || !(term == o.term)) return false;
  return kind == Kind::Cmp ? rel == o.rel : tag == o.tag;
}

namespace {

FormulaPtr make(Formula::Kind k, std::vector<FormulaPtr> kids,
                std::vector<VarId> vars = {})
{
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->kids = std::move(kids);
  f->vars = std::move(vars);
  return f;
}

}  // namespace

FormulaPtr mkAtom(const Atom& a)
{
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Atom;
  f->atom = a;
  return f;
}

FormulaPtr mkCmp(const LinearTerm& t, Rel r)
{
  Atom a;
  a.kind = Atom::Kind::Cmp;
  a.term = t;
  a.rel = r;
  return mkAtom(a);
}

FormulaPtr mkPower(const LinearTerm& t, BaseTag tag)
{
  Atom a;
  a.kind = Atom::Kind::Power;
  a.term = t;
  a.tag = tag;
  return mkAtom(a);
}

FormulaPtr mkTrue() { return make(Formula::Kind::And, {}); }
FormulaPtr mkFalse() { return make(Formula::Kind::Or, {}); }

FormulaPtr mkAnd(std::vector<FormulaPtr> kids)
{
  if (kids.size() == 1) return kids[0];
  return make(Formula::Kind::And, std::move(kids));
}

FormulaPtr mkOr(std::vector<FormulaPtr> kids)
{
  if (kids.size() == 1) return kids[0];
  return make(Formula::Kind::Or, std::move(kids));
}

FormulaPtr mkNot(FormulaPtr f) { return make(Formula::Kind::Not, {f}); }

FormulaPtr mkExists(std::vector<VarId> vars, FormulaPtr body)
{
  return make(Formula::Kind::Exists, {body}, std::move(vars));
}

FormulaPtr mkForall(std::vector<VarId> vars, FormulaPtr body)
{
  return make(Formula::Kind::Forall, {body}, std::move(vars));
}

FormulaPtr mkImplies(FormulaPtr a, FormulaPtr b)
{
  return mkOr({mkNot(a), b});
}

bool structurallyEqual(const Formula& a, const Formula& b)
{
  if (a.kind != b.kind || a.vars != b.vars || a.kids.size() != b.kids.size())
    return false;
  if (a.kind == Formula::Kind::Atom && !(a.atom == b.atom)) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!structurallyEqual(*a.kids[i], *b.kids[i])) return false;
  return true;
}

bool isQuantifierFree(const Formula& f)
{
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall)
    return false;
  for (const auto& k : f.kids)
    if (!isQuantifierFree(*k)) return false;
  return true;
}

namespace {

void collectFree(const Formula& f, std::set<VarId>& bound,
                 std::set<VarId>& out)
{
  if (f.kind == Formula::Kind::Atom)
  {
    for (const auto& [v, c] : f.atom.term.coeffs())
      if (!bound.count(v)) out.insert(v);
    return;
  }
  std::vector<VarId> added;
  for (VarId v : f.vars)
    if (bound.insert(v).second) added.push_back(v);
  for (const auto& k : f.kids) collectFree(*k, bound, out);
  for (VarId v : added) bound.erase(v);
}

}  // namespace

std::set<VarId> freeVars(const Formula& f)
{
  std::set<VarId> bound, out;
  collectFree(f, bound, out);
  return out;
}

VarId Symbols::intern(const std::string& name)
{
  auto it = d_ids.find(name);
  if (it != d_ids.end()) return it->second;
  VarId id = static_cast<VarId>(d_names.size());
  d_names.push_back(name);
  d_ids.emplace(name, id);
  return id;
}

VarId Symbols::fresh(const std::string& hint)
{
  for (size_t i = d_names.size();; ++i)
  {
    std::string n = hint + "_" + std::to_string(i);
    if (!has(n)) return intern(n);
  }
}

BigInt evalTerm(const LinearTerm& t, const Model& m, const Symbols* syms)
{
  BigInt r = t.constant();
  for (const auto& [v, c] : t.coeffs())
  {
    auto it = m.find(v);
    if (it == m.end())
    {
      std::string n = syms && static_cast<size_t>(v) < syms->size()
                          ? syms->name(v)
                          : "#" + std::to_string(v);
      throw EvalError("unbound variable " + n);
    }
    r += c * it->second;
  }
  return r;
}

bool isPowerOf(const BigInt& x, const BigInt& gamma)
{
  if (x < 1) return false;
  BigInt y = x;
  while (y != 1)
  {
    if (!mpz_divisible_p(y.get_mpz_t(), gamma.get_mpz_t())) return false;
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), gamma.get_mpz_t());
  }
  return true;
}

bool evalFormula(const Formula& f, const Model& m, const BigInt& alpha,
                 const BigInt& beta, const Symbols* syms)
{
  switch (f.kind)
  {
    case Formula::Kind::Atom:
    {
      BigInt v = evalTerm(f.atom.term, m, syms);
      if (f.atom.kind == Atom::Kind::Cmp) return relHolds(v, f.atom.rel);
      return isPowerOf(v, f.atom.tag == BaseTag::A ? alpha : beta);
    }
    case Formula::Kind::And:
      for (const auto& k : f.kids)
        if (!evalFormula(*k, m, alpha, beta, syms)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& k : f.kids)
        if (evalFormula(*k, m, alpha, beta, syms)) return true;
      return false;
    case Formula::Kind::Not:
      return !evalFormula(*f.kids[0], m, alpha, beta, syms);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw EvalError("quantifier-free expected");
  }
  return false;
}

BigInt ipow(const BigInt& base, unsigned long e)
{
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace powpres
