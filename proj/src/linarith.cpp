#include "powpres/linarith.h"

#include <algorithm>
#include <stdexcept>

namespace powpres {

BigInt floorDiv(const BigInt& a, const BigInt& b)
{
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt posMod(const BigInt& a, const BigInt& m)
{
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b)
{
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

BigInt content(const LinearTerm& t)
{
  BigInt g = 0;
  for (const auto& [v, c] : t.coeffs())
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

LinearTerm divideVars(const LinearTerm& t, const BigInt& g)
{
  LinearTerm r;
  for (const auto& [v, c] : t.coeffs()) r.setCoeff(v, c / g);
  return r;
}

}  // namespace

bool normalizeComparison(Comparison& c)
{
  switch (c.rel)
  {
    case Rel::Gt:
    case Rel::Eq: break;
    case Rel::Lt:
      c.form = -c.form;
      break;
    case Rel::Le:
      c.form = -c.form + LinearTerm(1);
      break;
    case Rel::Ge:
      c.form += LinearTerm(1);
      break;
    case Rel::Ne: throw std::logic_error("disequality must be split first");
  }
  c.rel = c.rel == Rel::Eq ? Rel::Eq : Rel::Gt;
  if (c.form.isConstant())
  {
    bool ok = relHolds(c.form.constant(), c.rel);
    c.form = LinearTerm(1);
    c.rel = Rel::Gt;
    return ok;
  }
  BigInt g = content(c.form);
  BigInt k = c.form.constant();
  if (c.rel == Rel::Eq)
  {
    if (k % g != 0) return false;
    if (c.form.coeffs().begin()->second < 0) g = -g;
    LinearTerm r = divideVars(c.form, g);
    r.setConstant(k / g);
    c.form = r;
    return true;
  }
  LinearTerm r = divideVars(c.form, g);
  r.setConstant(-floorDiv(-k, g));
  c.form = r;
  return true;
}

bool normalizeCongruence(Congruence& c)
{
  if (c.modulus < 1) throw std::logic_error("modulus must be positive");
  LinearTerm r;
  for (const auto& [v, k] : c.form.coeffs()) r.setCoeff(v, posMod(k, c.modulus));
  r.setConstant(posMod(c.form.constant(), c.modulus));
  BigInt g = content(r);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.constant().get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.modulus.get_mpz_t());
  if (g > 1)
  {
    LinearTerm s = divideVars(r, g);
    s.setConstant(r.constant() / g);
    r = s;
    c.modulus /= g;
  }
  c.form = r;
  if (c.modulus == 1)
  {
    c.form = LinearTerm();
    return true;
  }
  if (r.isConstant()) return r.constant() == 0;
  return true;
}

namespace {

bool trivial(const Comparison& c) { return c.form.isConstant(); }
bool trivial(const Congruence& c) { return c.modulus == 1; }

// Normalizes and drops tautologies; false if the conjunct is unsatisfiable.
bool tidy(GuardedConjunct& g)
{
  std::vector<Comparison> cs;
  for (auto c : g.comparisons)
  {
    if (!normalizeComparison(c)) return false;
    if (trivial(c)) continue;
    bool dup = false;
    for (const auto& d : cs) dup = dup || (d.rel == c.rel && d.form == c.form);
    if (!dup) cs.push_back(c);
  }
  std::vector<Congruence> ks;
  for (auto k : g.congruences)
  {
    if (!normalizeCongruence(k)) return false;
    if (trivial(k)) continue;
    bool dup = false;
    for (const auto& d : ks) dup = dup || (d.modulus == k.modulus && d.form == k.form);
    if (!dup) ks.push_back(k);
  }
  g.comparisons = std::move(cs);
  g.congruences = std::move(ks);
  return true;
}

GuardedConjunct substituteAll(const GuardedConjunct& g, VarId x,
                              const LinearTerm& t)
{
  GuardedConjunct r;
  r.steps = g.steps;
  for (const auto& c : g.comparisons)
    r.comparisons.push_back({c.form.substitute(x, t), c.rel});
  for (const auto& k : g.congruences)
    r.congruences.push_back({k.form.substitute(x, t), k.modulus});
  return r;
}

void eliminateVar(const GuardedConjunct& in, VarId x,
                  std::vector<GuardedConjunct>& out)
{
  bool mentioned = false;
  for (const auto& c : in.comparisons) mentioned = mentioned || c.form.coeff(x) != 0;
  for (const auto& k : in.congruences) mentioned = mentioned || k.form.coeff(x) != 0;
  if (!mentioned)
  {
    GuardedConjunct g = in;
    WitnessStep s;
    s.var = x;
    g.steps.push_back(s);
    out.push_back(std::move(g));
    return;
  }

  // An equality fixes x up to a divisibility condition.
  const Comparison* eq = nullptr;
  for (const auto& c : in.comparisons)
    if (c.rel == Rel::Eq && c.form.coeff(x) != 0 &&
        (!eq || abs(c.form.coeff(x)) < abs(eq->form.coeff(x))))
      eq = &c;
  if (eq)
  {
    LinearTerm e = eq->form;
    if (e.coeff(x) < 0) e = -e;
    BigInt a = e.coeff(x);
    LinearTerm t = e;
    t.setCoeff(x, 0);
    GuardedConjunct g;
    g.steps = in.steps;
    if (a > 1) g.congruences.push_back({t, a});
    for (const auto& c : in.comparisons)
    {
      if (&c == eq) continue;
      BigInt k = c.form.coeff(x);
      LinearTerm s = c.form;
      s.setCoeff(x, 0);
      g.comparisons.push_back({s * a - t * k, c.rel});
    }
    for (const auto& c : in.congruences)
    {
      BigInt k = c.form.coeff(x);
      LinearTerm s = c.form;
      s.setCoeff(x, 0);
      g.congruences.push_back({s * a - t * k, c.modulus * a});
    }
    WitnessStep st;
    st.var = x;
    st.term = -t;
    st.divisor = a;
    g.steps.push_back(st);
    if (tidy(g)) out.push_back(std::move(g));
    return;
  }

  // Scale so every coefficient of x is +-L, then work with x' = L*x.
  BigInt L = 1;
  for (const auto& c : in.comparisons)
    if (c.form.coeff(x) != 0) L = lcm(L, abs(c.form.coeff(x)));
  for (const auto& k : in.congruences)
    if (k.form.coeff(x) != 0) L = lcm(L, abs(k.form.coeff(x)));

  GuardedConjunct scaled;
  scaled.steps = in.steps;
  std::vector<LinearTerm> lower, upper;  // x' > l, x' < u
  for (const auto& c : in.comparisons)
  {
    BigInt k = c.form.coeff(x);
    if (k == 0)
    {
      scaled.comparisons.push_back(c);
      continue;
    }
    LinearTerm s = c.form * (L / abs(k));
    s.setCoeff(x, 0);
    if (k > 0)
      lower.push_back(-s);
    else
      upper.push_back(s);
  }
  BigInt delta = L;
  if (L > 1) scaled.congruences.push_back({LinearTerm::var(x), L});
  for (const auto& k : in.congruences)
  {
    BigInt c = k.form.coeff(x);
    if (c == 0)
    {
      scaled.congruences.push_back(k);
      continue;
    }
    BigInt f = L / abs(c);
    LinearTerm s = k.form * f;
    s.setCoeff(x, c > 0 ? BigInt(1) : BigInt(-1));
    scaled.congruences.push_back({s, k.modulus * f});
    delta = lcm(delta, k.modulus * f);
  }

  bool useLower = lower.size() <= upper.size();
  const auto& side = useLower ? lower : upper;
  const auto& other = useLower ? upper : lower;
  auto bound = [&](const LinearTerm& b, bool isLower) {
    // x' > b is x' - b > 0, x' < b is b - x' > 0
    return isLower ? LinearTerm::var(x) - b : b - LinearTerm::var(x);
  };

  if (side.empty())
  {
    for (BigInt j = 1; j <= delta; ++j)
    {
      GuardedConjunct g = substituteAll(scaled, x, LinearTerm(j));
      WitnessStep st;
      st.kind = WitnessStep::Kind::Unbounded;
      st.var = x;
      st.divisor = L;
      st.residue = j;
      st.period = delta;
      st.below = useLower;
      st.bounds = other;
      g.steps.push_back(st);
      if (tidy(g)) out.push_back(std::move(g));
    }
    return;
  }

  for (const auto& b : side)
  {
    for (BigInt j = 1; j <= delta; ++j)
    {
      LinearTerm val = useLower ? b + LinearTerm(j) : b - LinearTerm(j);
      GuardedConjunct base = scaled;
      for (const auto& l : lower) base.comparisons.push_back({bound(l, true), Rel::Gt});
      for (const auto& u : upper) base.comparisons.push_back({bound(u, false), Rel::Gt});
      GuardedConjunct g = substituteAll(base, x, val);
      WitnessStep st;
      st.var = x;
      st.term = val;
      st.divisor = L;
      g.steps.push_back(st);
      if (tidy(g)) out.push_back(std::move(g));
    }
  }
}

FormulaPtr complementCmp(const Atom& a)
{
  const LinearTerm& t = a.term;
  switch (a.rel)
  {
    case Rel::Gt: return mkOr({mkCmp(t, Rel::Lt), mkCmp(t, Rel::Eq)});
    case Rel::Lt: return mkOr({mkCmp(t, Rel::Gt), mkCmp(t, Rel::Eq)});
    case Rel::Eq: return mkOr({mkCmp(t, Rel::Gt), mkCmp(t, Rel::Lt)});
    case Rel::Ne: return mkCmp(t, Rel::Eq);
    case Rel::Ge: return mkCmp(t, Rel::Lt);
    case Rel::Le: return mkCmp(t, Rel::Gt);
  }
  return mkFalse();
}

FormulaPtr nnf(const FormulaPtr& f, bool neg, Symbols& syms,
               const BigInt& alpha, const BigInt& beta)
{
  switch (f->kind)
  {
    case Formula::Kind::Atom:
    {
      if (!neg) return f;
      const Atom& a = f->atom;
      if (a.kind == Atom::Kind::Cmp) return complementCmp(a);
      const LinearTerm& t = a.term;
      BigInt gamma = a.tag == BaseTag::A ? alpha : beta;
      VarId u = syms.fresh("u");
      LinearTerm ut = LinearTerm::var(u);
      auto between = mkAnd({mkPower(ut, a.tag), mkCmp(ut - t, Rel::Lt),
                            mkCmp(t - ut * gamma, Rel::Lt)});
      return mkOr({mkCmp(t - LinearTerm(1), Rel::Lt), mkExists({u}, between)});
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(nnf(k, neg, syms, alpha, beta));
      bool conj = (f->kind == Formula::Kind::And) != neg;
      return conj ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case Formula::Kind::Not: return nnf(f->kids[0], !neg, syms, alpha, beta);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    {
      bool ex = (f->kind == Formula::Kind::Exists) != neg;
      if (!ex) throw std::invalid_argument("formula is not existential");
      return mkExists(f->vars, nnf(f->kids[0], neg, syms, alpha, beta));
    }
  }
  return f;
}

using Clause = std::vector<const Atom*>;

std::vector<Clause> dnf(const FormulaPtr& f, std::vector<FormulaPtr>& keep)
{
  switch (f->kind)
  {
    case Formula::Kind::Atom:
      if (f->atom.kind == Atom::Kind::Cmp && f->atom.rel == Rel::Ne)
      {
        auto gt = mkCmp(f->atom.term, Rel::Gt);
        auto lt = mkCmp(f->atom.term, Rel::Lt);
        keep.push_back(gt);
        keep.push_back(lt);
        return {{&gt->atom}, {&lt->atom}};
      }
      return {{&f->atom}};
    case Formula::Kind::And:
    {
      std::vector<Clause> acc = {{}};
      for (const auto& k : f->kids)
      {
        std::vector<Clause> part = dnf(k, keep), next;
        for (const auto& a : acc)
          for (const auto& b : part)
          {
            Clause c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
    case Formula::Kind::Or:
    {
      std::vector<Clause> acc;
      for (const auto& k : f->kids)
      {
        auto part = dnf(k, keep);
        acc.insert(acc.end(), part.begin(), part.end());
      }
      return acc;
    }
    case Formula::Kind::Exists: return dnf(f->kids[0], keep);
    case Formula::Kind::Not:
      throw std::invalid_argument("negation-free formula expected");
    case Formula::Kind::Forall:
      throw std::invalid_argument("formula is not existential");
  }
  return {};
}

bool isBareVar(const LinearTerm& t, VarId& v)
{
  if (t.constant() != 0 || t.coeffs().size() != 1) return false;
  if (t.coeffs().begin()->second != 1) return false;
  v = t.coeffs().begin()->first;
  return true;
}

}  // namespace

FormulaPtr normalizeNegations(const FormulaPtr& f, Symbols& syms,
                              const BigInt& alpha, const BigInt& beta)
{
  return nnf(f, false, syms, alpha, beta);
}

PowerTaggedFormula toPowerTaggedDnf(const FormulaPtr& f, Symbols& syms)
{
  std::vector<FormulaPtr> keep;
  PowerTaggedFormula out;
  for (const auto& clause : dnf(f, keep))
  {
    TaggedDisjunct d;
    bool ok = true;
    for (const Atom* a : clause)
    {
      if (a->kind == Atom::Kind::Cmp)
      {
        Comparison c{a->term, a->rel};
        if (!normalizeComparison(c))
        {
          ok = false;
          break;
        }
        if (!trivial(c)) d.comparisons.push_back(c);
        continue;
      }
      VarId v;
      if (isBareVar(a->term, v))
      {
        auto it = std::find_if(d.powerVars.begin(), d.powerVars.end(),
                               [&](const auto& p) { return p.first == v; });
        if (it == d.powerVars.end())
        {
          d.powerVars.push_back({v, a->tag});
          continue;
        }
        if (it->second == a->tag) continue;
      }
      VarId y = syms.fresh("y");
      d.powerVars.push_back({y, a->tag});
      Comparison c{LinearTerm::var(y) - a->term, Rel::Eq};
      normalizeComparison(c);
      d.comparisons.push_back(c);
    }
    if (ok) out.disjuncts.push_back(std::move(d));
  }
  return out;
}

GuardedSystem eliminateIntegerVars(const std::vector<Comparison>& conj,
                                   const std::set<VarId>& elimVars)
{
  GuardedConjunct start;
  start.comparisons = conj;
  GuardedSystem gs;
  if (!tidy(start)) return gs;
  std::vector<GuardedConjunct> cur = {start};
  for (VarId x : elimVars)
  {
    std::vector<GuardedConjunct> next;
    for (const auto& g : cur) eliminateVar(g, x, next);
    cur = std::move(next);
  }
  gs.disjuncts = std::move(cur);
  return gs;
}

bool holds(const GuardedConjunct& g, const Model& m)
{
  for (const auto& c : g.comparisons)
    if (!relHolds(evalTerm(c.form, m), c.rel)) return false;
  for (const auto& k : g.congruences)
    if (posMod(evalTerm(k.form, m), k.modulus) != 0) return false;
  return true;
}

bool holds(const GuardedSystem& g, const Model& m)
{
  for (const auto& d : g.disjuncts)
    if (holds(d, m)) return true;
  return false;
}

void recoverWitness(const GuardedConjunct& g, Model& m)
{
  for (auto it = g.steps.rbegin(); it != g.steps.rend(); ++it)
  {
    const WitnessStep& s = *it;
    BigInt v;
    if (s.kind == WitnessStep::Kind::Exact)
    {
      v = evalTerm(s.term, m);
    }
    else if (s.bounds.empty())
    {
      v = s.residue;
    }
    else if (s.below)
    {
      BigInt lim = evalTerm(s.bounds[0], m);
      for (const auto& b : s.bounds) lim = std::min(lim, BigInt(evalTerm(b, m)));
      v = lim - 1 - posMod(lim - 1 - s.residue, s.period);
    }
    else
    {
      BigInt lim = evalTerm(s.bounds[0], m);
      for (const auto& b : s.bounds) lim = std::max(lim, BigInt(evalTerm(b, m)));
      v = lim + 1 + posMod(s.residue - lim - 1, s.period);
    }
    if (v % s.divisor != 0)
      throw std::logic_error("witness recovery hit a non-integral value");
    m[s.var] = v / s.divisor;
  }
}

}  // namespace powpres
