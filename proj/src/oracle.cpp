#include "powpres/oracle.h"

#include <algorithm>
#include <stdexcept>

namespace powpres {

namespace {

void collect(const FormulaPtr& f, std::vector<VarId>& bound, FormulaPtr& body)
{
  if (f->kind == Formula::Kind::Exists)
  {
    for (VarId v : f->vars)
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) bound.push_back(v);
    collect(f->kids[0], bound, body);
    return;
  }
  body = f;
}

FormulaPtr dropInnerExists(const FormulaPtr& f, std::vector<VarId>& bound)
{
  if (f->kind == Formula::Kind::Atom) return f;
  if (f->kind == Formula::Kind::Forall)
    throw std::invalid_argument("oracle takes existential sentences only");
  if (f->kind == Formula::Kind::Exists)
  {
    for (VarId v : f->vars)
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) bound.push_back(v);
    return dropInnerExists(f->kids[0], bound);
  }
  if (f->kind == Formula::Kind::Not && !isQuantifierFree(*f))
    throw std::invalid_argument("oracle takes existential sentences only");
  auto g = std::make_shared<Formula>(*f);
  for (auto& k : g->kids) k = dropInnerExists(k, bound);
  return g;
}

void topConjuncts(const FormulaPtr& f, std::vector<const Formula*>& out)
{
  if (f->kind == Formula::Kind::And)
  {
    for (const auto& k : f->kids) topConjuncts(k, out);
    return;
  }
  out.push_back(f.get());
}

BigInt power(const BigInt& g, unsigned long e)
{
  BigInt p = 1;
  for (unsigned long i = 0; i < e; ++i) p *= g;
  return p;
}

}  // namespace

std::optional<Model> semiDecide(const FormulaPtr& f, const BigInt& alpha,
                                const BigInt& beta, unsigned long expBox,
                                unsigned long linBox)
{
  std::vector<VarId> bound;
  FormulaPtr body;
  collect(f, bound, body);
  body = dropInnerExists(body, bound);

  std::vector<const Formula*> conj;
  topConjuncts(body, conj);
  std::vector<std::vector<BigInt>> domain;
  for (VarId v : bound)
  {
    std::optional<BaseTag> tag;
    for (const Formula* c : conj)
    {
      if (c->kind != Formula::Kind::Atom || c->atom.kind != Atom::Kind::Power) continue;
      const LinearTerm& t = c->atom.term;
      if (t.constant() == 0 && t.coeffs().size() == 1 && t.coeffs().begin()->first == v &&
          t.coeffs().begin()->second == 1)
        tag = c->atom.tag;
    }
    std::vector<BigInt> dom;
    if (tag)
    {
      const BigInt& g = *tag == BaseTag::A ? alpha : beta;
      for (unsigned long e = 0; e <= expBox; ++e) dom.push_back(power(g, e));
    }
    else
    {
      long L = static_cast<long>(linBox);
      for (long x = -L; x <= L; ++x) dom.push_back(x);
    }
    domain.push_back(std::move(dom));
  }

  const size_t k = bound.size();
  std::vector<size_t> idx(k, 0);
  Model m;
  for (;;)
  {
    for (size_t i = 0; i < k; ++i) m[bound[i]] = domain[i][idx[i]];
    if (evalFormula(*body, m, alpha, beta)) return m;
    // last variable moves fastest
    size_t j = k;
    while (j > 0 && idx[j - 1] + 1 == domain[j - 1].size()) idx[--j] = 0;
    if (j == 0) return std::nullopt;
    ++idx[j - 1];
  }
}

std::vector<Exponents> enumerateBoxSolutions(const std::vector<BigInt>& z, const Matrix& A,
                                             const Row& b, const Matrix& C, const Row& d,
                                             unsigned long box)
{
  const size_t l = z.size();
  std::vector<std::vector<BigInt>> pw(l);
  for (size_t i = 0; i < l; ++i)
    for (unsigned long e = 0; e <= box; ++e) pw[i].push_back(power(z[i], e));
  std::vector<Exponents> out;
  Exponents n(l, 0);
  for (;;)
  {
    bool ok = true;
    for (size_t j = 0; j < C.size() && ok; ++j)
    {
      BigInt s = 0;
      for (size_t i = 0; i < l; ++i) s += C[j][i] * pw[i][n[i]];
      ok = s == d[j];
    }
    for (size_t j = 0; j < A.size() && ok; ++j)
    {
      BigInt s = 0;
      for (size_t i = 0; i < l; ++i) s += A[j][i] * pw[i][n[i]];
      ok = s > b[j];
    }
    if (ok) out.push_back(n);
    size_t j = l;
    while (j > 0 && n[j - 1] == box) n[--j] = 0;
    if (j == 0) break;
    ++n[j - 1];
  }
  return out;
}

std::vector<Exponents> enumerateBoxSolutions(const ProblemOneInstance& inst,
                                             unsigned long box)
{
  return enumerateBoxSolutions(inst.z, inst.A, inst.b, inst.C, inst.d, box);
}

}  // namespace powpres
