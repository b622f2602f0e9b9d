#include "powpres/powerprep.h"

#include <map>
#include <stdexcept>

#include "powpres/numth.h"

namespace powpres {

Dependence multDependence(const BigInt& alpha, const BigInt& beta)
{
  if (alpha < 2 || beta < 2) throw DomainError("bases must exceed 1");
  Factorization fa = factorize(alpha), fb = factorize(beta);
  Dependence r;
  if (fa.size() != fb.size()) return r;
  BigInt a = 0, b = 0;
  for (size_t i = 0; i < fa.size(); ++i)
  {
    if (fa[i].p != fb[i].p) return r;
    BigInt ea(fa[i].e), eb(fb[i].e);
    if (i == 0)
    {
      BigInt g = gcd(ea, eb);
      a = eb / g;
      b = ea / g;
    }
    else if (a * ea != b * eb)
    {
      return r;
    }
  }
  r.dependent = true;
  r.a = a;
  r.b = b;
  r.gamma = ipow(alpha, a.get_ui());
  return r;
}

ResiduePeriod residuePeriod(const BigInt& gamma, const BigInt& D)
{
  if (gamma < 2 || D < 1) throw DomainError("residuePeriod needs gamma > 1, D >= 1");
  ResiduePeriod r;
  r.gamma = gamma;
  r.D = D;
  std::map<BigInt, unsigned long> seen;
  BigInt v = posMod(BigInt(1), D);
  for (unsigned long n = 0;; ++n)
  {
    auto it = seen.find(v);
    if (it != seen.end())
    {
      r.rho = it->second;
      r.pi = n - it->second;
      return r;
    }
    seen.emplace(v, n);
    r.table.push_back(v);
    v = posMod(v * gamma, D);
  }
}

bool satisfies(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
               const Matrix& C, const Row& d, const Exponents& n)
{
  std::vector<BigInt> p(z.size());
  for (size_t i = 0; i < z.size(); ++i) p[i] = ipow(z[i], n[i]);
  for (size_t r = 0; r < A.size(); ++r)
  {
    BigInt s = 0;
    for (size_t i = 0; i < z.size(); ++i) s += A[r][i] * p[i];
    if (!(s > b[r])) return false;
  }
  for (size_t r = 0; r < C.size(); ++r)
  {
    BigInt s = 0;
    for (size_t i = 0; i < z.size(); ++i) s += C[r][i] * p[i];
    if (s != d[r]) return false;
  }
  return true;
}

bool satisfies(const ProblemOneInstance& inst, const Exponents& n)
{
  return satisfies(inst.z, inst.A, inst.b, inst.C, inst.d, n);
}

Model powerValues(const ProblemOneInstance& inst, const BigInt& alpha,
                  const BigInt& beta, const Exponents& n)
{
  Model m;
  for (const auto& o : inst.origins)
  {
    unsigned long e = o.map.offset;
    if (o.map.column >= 0) e += o.map.multiplier * n[o.map.column];
    m[o.var] = ipow(o.tag == BaseTag::A ? alpha : beta, e);
  }
  return m;
}

namespace {

struct VarPlan
{
  VarId var;
  BaseTag tag;
  BigInt gamma;
  ResiduePeriod rp;
  unsigned long period = 1;  // D_gamma
  // choices: first rp.rho fixed exponents, then `period` periodic classes
  size_t choices() const { return rp.rho + period; }
};

}  // namespace

std::vector<ProblemOneInstance> unfoldToProblem1(
    const GuardedConjunct& g,
    const std::vector<std::pair<VarId, BaseTag>>& powerVars,
    const BigInt& alpha, const BigInt& beta)
{
  std::map<VarId, size_t> index;
  for (size_t i = 0; i < powerVars.size(); ++i) index[powerVars[i].first] = i;
  auto checkVars = [&](const LinearTerm& t) {
    for (const auto& [v, c] : t.coeffs())
      if (!index.count(v)) throw std::logic_error("non-power variable left in guard");
  };
  BigInt D = 1;
  for (const auto& k : g.congruences)
  {
    checkVars(k.form);
    D = lcm(D, k.modulus);
  }
  for (const auto& c : g.comparisons) checkVars(c.form);

  ResiduePeriod rpA = residuePeriod(alpha, D), rpB = residuePeriod(beta, D);
  Dependence dep = multDependence(alpha, beta);
  unsigned long dA = rpA.pi, dB = rpB.pi;
  BigInt gammaA = ipow(alpha, dA), gammaB = ipow(beta, dB);
  if (dep.dependent)
  {
    BigInt pa(rpA.pi), pb(rpB.pi);
    BigInt t = lcm(pa / gcd(pa, dep.a), pb / gcd(pb, dep.b));
    dA = BigInt(dep.a * t).get_ui();
    dB = BigInt(dep.b * t).get_ui();
    gammaA = ipow(alpha, dA);
    gammaB = ipow(beta, dB);
    if (gammaA != gammaB) throw std::logic_error("period alignment failed");
  }

  std::vector<VarPlan> plans;
  for (const auto& [v, tag] : powerVars)
  {
    bool isA = tag == BaseTag::A;
    plans.push_back({v, tag, isA ? alpha : beta, isA ? rpA : rpB, isA ? dA : dB});
  }

  std::vector<ProblemOneInstance> out;
  std::vector<size_t> choice(plans.size(), 0);
  for (;;)
  {
    // exponent offset of each variable under this choice and its residue
    std::vector<unsigned long> offs(plans.size());
    std::vector<bool> fixed(plans.size());
    Model residues;
    for (size_t i = 0; i < plans.size(); ++i)
    {
      const VarPlan& p = plans[i];
      fixed[i] = choice[i] < p.rp.rho;
      offs[i] = fixed[i] ? choice[i] : p.rp.rho + (choice[i] - p.rp.rho);
      residues[p.var] = p.rp.residue(offs[i]);
    }
    bool ok = true;
    for (const auto& k : g.congruences)
      ok = ok && posMod(evalTerm(k.form, residues), k.modulus) == 0;
    if (ok)
    {
      ProblemOneInstance inst;
      std::vector<int> col(plans.size(), -1);
      for (size_t i = 0; i < plans.size(); ++i)
      {
        PowerOrigin o{plans[i].var, plans[i].tag, {}};
        o.map.offset = offs[i];
        if (!fixed[i])
        {
          col[i] = static_cast<int>(inst.z.size());
          inst.z.push_back(plans[i].tag == BaseTag::A ? gammaA : gammaB);
          inst.tags.push_back(plans[i].tag);
          o.map.column = col[i];
          o.map.multiplier = plans[i].period;
        }
        inst.origins.push_back(o);
      }
      for (const auto& c : g.comparisons)
      {
        Row row(inst.z.size(), 0);
        BigInt rhs = -c.form.constant();
        for (const auto& [v, k] : c.form.coeffs())
        {
          size_t i = index[v];
          BigInt scale = k * ipow(plans[i].gamma, offs[i]);
          if (fixed[i])
            rhs -= scale;
          else
            row[col[i]] += scale;
        }
        if (c.rel == Rel::Eq)
        {
          inst.C.push_back(row);
          inst.d.push_back(rhs);
        }
        else
        {
          inst.A.push_back(row);
          inst.b.push_back(rhs);
        }
      }
      out.push_back(std::move(inst));
    }
    size_t j = 0;
    while (j < plans.size() && choice[j] + 1 == plans[j].choices()) choice[j++] = 0;
    if (j == plans.size()) break;
    ++choice[j];
  }
  return out;
}

}  // namespace powpres
