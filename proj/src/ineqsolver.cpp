#include "powpres/ineqsolver.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "powpres/numth.h"

namespace powpres {

const char* verdictText(Verdict v)
{
  switch (v)
  {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::vector<BigInt> values(const std::vector<BigInt>& z, const Exponents& n)
{
  std::vector<BigInt> v(z.size());
  for (size_t i = 0; i < z.size(); ++i) v[i] = ipow(z[i], n[i]);
  return v;
}

BigInt dot(const Row& r, const std::vector<BigInt>& v)
{
  BigInt s = 0;
  for (size_t i = 0; i < r.size(); ++i) s += r[i] * v[i];
  return s;
}

BigRat dotRat(const RatForm& r, const std::vector<BigInt>& v)
{
  BigRat s = 0;
  for (size_t i = 0; i < r.size(); ++i) s += r[i] * BigRat(v[i]);
  return s;
}

/// ln|x| in long double, fine for huge x.
long double ldLog(const BigInt& x)
{
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(static_cast<long double>(std::fabs(m))) +
         static_cast<long double>(e) * std::log(2.0L);
}

long double ldLog(const BigRat& q) { return ldLog(q.get_num()) - ldLog(q.get_den()); }

/// Smallest N >= 0 with q * base^(N+1) > S (q > 0).
unsigned long gapFor(const BigRat& q, const BigRat& S, const BigInt& base)
{
  unsigned long N = 0;
  BigRat p = q * BigRat(base);
  while (!(p > S))
  {
    p *= BigRat(base);
    ++N;
  }
  return N;
}

Row scaleToInt(const RatForm& f)
{
  BigInt L = 1;
  for (const auto& x : f) L = lcm(L, x.get_den());
  Row r(f.size());
  for (size_t i = 0; i < f.size(); ++i)
  {
    BigRat t = f[i] * BigRat(L);
    r[i] = t.get_num();
  }
  return r;
}

RatForm toRat(const Row& r) { return RatForm(r.begin(), r.end()); }

}  // namespace

bool strictHolds(const StrictSystem& sys, const Exponents& n)
{
  if (n.size() != sys.z.size()) return false;
  auto v = values(sys.z, n);
  for (const auto& r : sys.A)
    if (!(dot(r, v) > 0)) return false;
  return true;
}

bool affineHolds(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
                 const Exponents& n)
{
  if (n.size() != z.size()) return false;
  auto v = values(z, n);
  for (size_t j = 0; j < A.size(); ++j)
    if (!(dot(A[j], v) > b[j])) return false;
  return true;
}

// ---------------------------------------------------------------- Kronecker

std::optional<KroneckerHit> kroneckerSearch(const BigInt& alpha, const BigInt& beta,
                                            const BigRat& lo,
                                            const std::optional<BigRat>& hi,
                                            unsigned long min1, unsigned long min2,
                                            unsigned long maxSteps)
{
  if (alpha < 2 || beta < 2) throw DomainError("bases must exceed 1");
  BigRat low = std::max(lo, BigRat(0));
  if (hi && *hi <= 0) throw DomainError("interval misses the positive reals");
  if (hi && low >= *hi) throw DomainError("empty interval");

  const long double la = ldLog(alpha), lb = ldLog(beta);
  const long double lnLo = low > 0 ? ldLog(low) : -INFINITY;
  const long double lnHi = hi ? ldLog(*hi) : INFINITY;

  auto exact = [&](unsigned long n1, unsigned long n2) {
    // -1: ratio <= lo, 0: inside, 1: ratio >= hi
    BigInt A = ipow(alpha, n1), B = ipow(beta, n2);
    if (!(A * low.get_den() > low.get_num() * B)) return -1;
    if (hi && !(A * hi->get_den() < hi->get_num() * B)) return 1;
    return 0;
  };

  for (unsigned long step = 0; step < maxSteps; ++step)
  {
    unsigned long n1 = min1 + step;
    long double L1 = static_cast<long double>(n1) * la;
    long double eta = 1e-9L + 1e-15L * L1;
    unsigned long first = min2, last = min2;
    if (hi)
    {
      long double s = std::floor((L1 - lnHi) / lb);
      unsigned long est = s <= 1 ? 0 : static_cast<unsigned long>(s) - 1;
      first = std::max(min2, est);
      last = std::max(min2, est + 3);
    }
    for (unsigned long n2 = first; n2 <= last; ++n2)
    {
      long double y = L1 - static_cast<long double>(n2) * lb;
      if (y >= lnHi + eta) continue;
      if (y <= lnLo - eta) break;
      int e = exact(n1, n2);
      if (e == 0) return KroneckerHit{n1, n2};
      if (e < 0) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- pumping

PumpingParams pumpingParams(const std::vector<RatForm>& forms,
                            const std::vector<BigInt>& z, const Exponents& m,
                            const BigRat& eps)
{
  if (z.empty() || m.size() != z.size()) throw DomainError("pumping needs a base tuple");
  if (eps <= 0) throw DomainError("epsilon must be positive");
  const BigInt& beta = z[0];
  auto v = values(z, m);
  std::vector<BigRat> t, s;
  PumpingParams pp;
  for (const auto& f : forms)
  {
    if (f.size() != z.size()) throw DomainError("form arity does not match");
    BigRat tj = 0, sj = 0;
    for (size_t i = 0; i < z.size(); ++i)
      (z[i] == beta ? tj : sj) += f[i] * BigRat(v[i]);
    t.push_back(tj);
    s.push_back(sj);
    pp.inJ.push_back(tj + sj > 0);
  }
  BigRat base(v[0]);
  BigRat nu(1, 2);
  for (int guard = 0;; ++guard)
  {
    if (guard > 4096) throw std::logic_error("pumping parameter search failed");
    bool ok = true;
    for (size_t j = 0; j < forms.size() && ok; ++j)
    {
      if (pp.inJ[j])
        ok = t[j] + (1 - nu) * s[j] > 0 && t[j] + (1 + nu) * s[j] > 0;
      ok = ok && nu * abs(s[j]) / base < eps;
    }
    if (ok) break;
    nu /= 2;
  }
  pp.nu = nu;
  pp.mu = 1 / base;
  pp.delta = nu / (2 * base);
  return pp;
}

Exponents pumpExtend(const std::vector<BigInt>& z, const Exponents& m,
                     unsigned long n1, unsigned long k)
{
  if (n1 <= m.at(0)) throw DomainError("pumping needs n1 > m1");
  unsigned long shift = n1 - m[0];
  Exponents n(m.size());
  for (size_t i = 0; i < m.size(); ++i) n[i] = m[i] + (z[i] == z[0] ? shift : k);
  return n;
}

StrictSystem shiftToZero(const std::vector<BigInt>& z, const Matrix& A, const Row& b)
{
  if (A.size() != b.size()) throw DomainError("size mismatch");
  for (const auto& x : b)
    if (x < 0) throw DomainError("thresholds must be non-negative");
  return {z, A};
}

std::optional<Exponents> inflateWitness(const std::vector<BigInt>& z, const Matrix& A,
                                        const Row& b, const Exponents& m,
                                        const StrictOptions& opts)
{
  if (affineHolds(z, A, b, m)) return m;
  if (!strictHolds({z, A}, m)) throw DomainError("witness does not satisfy A z > 0");
  for (const auto& x : b)
    if (x < 0) throw DomainError("thresholds must be non-negative");
  const BigInt& beta = z[0];
  BigInt alpha = 0;
  for (const auto& x : z)
    if (x != beta) alpha = x;
  if (alpha == 0)
  {
    // one base: shifting every exponent scales every row
    Exponents n = m;
    for (int t = 0; t < 100000; ++t)
    {
      for (auto& e : n) ++e;
      if (affineHolds(z, A, b, n)) return n;
    }
    return std::nullopt;
  }
  auto v = values(z, m);
  std::vector<RatForm> forms;
  BigRat eps = -1;
  for (const auto& r : A)
  {
    forms.push_back(toRat(r));
    BigRat e = BigRat(dot(r, v)) / BigRat(v[0]) / 3;
    if (eps < 0 || e < eps) eps = e;
  }
  if (A.empty()) return m;
  PumpingParams pp = pumpingParams(forms, z, m, eps);
  BigInt maxB = *std::max_element(b.begin(), b.end());
  unsigned long n1 = m[0] + 1;
  while (!(eps * BigRat(ipow(beta, n1)) > BigRat(maxB))) ++n1;
  for (unsigned r = 0; r < opts.retries; ++r)
  {
    auto hit = kroneckerSearch(alpha, beta, pp.mu - pp.delta, pp.mu + pp.delta, 0, n1,
                               opts.kroneckerSteps);
    if (!hit) return std::nullopt;
    Exponents n = pumpExtend(z, m, hit->n2, hit->n1);
    if (affineHolds(z, A, b, n)) return n;
    n1 = hit->n2 + 1;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- gaps

std::vector<GapReduction> eliminateBoundedGap(const StrictSystem& sys, int a, int b,
                                              unsigned long N1, unsigned long N2)
{
  const int l = static_cast<int>(sys.z.size());
  if (a < 0 || b < 0 || a >= l || b >= l || a == b) throw DomainError("bad gap indices");
  if (sys.z[a] != sys.z[b]) throw DomainError("gap elimination needs equal bases");
  if (N1 > N2) throw DomainError("empty gap range");
  std::vector<GapReduction> out;
  for (unsigned long k = N1; k <= N2; ++k)
  {
    GapReduction g;
    g.k = k;
    BigInt scale = ipow(sys.z[a], k);
    for (int i = 0; i < l; ++i)
      if (i != a) g.sys.z.push_back(sys.z[i]);
    for (const auto& r : sys.A)
    {
      Row nr;
      for (int i = 0; i < l; ++i)
      {
        if (i == a) continue;
        nr.push_back(i == b ? r[a] * scale + r[b] : r[i]);
      }
      g.sys.A.push_back(nr);
    }
    out.push_back(std::move(g));
  }
  return out;
}

Exponents liftGap(const Exponents& reduced, int a, int b, unsigned long k)
{
  int bb = b < a ? b : b - 1;
  Exponents n(reduced.begin(), reduced.end());
  n.insert(n.begin() + a, reduced.at(bb) + k);
  return n;
}

std::optional<SimultApprox> simultApprox(const BigInt& alpha, const BigInt& beta,
                                         const BigRat& a, const BigRat& mu,
                                         const BigRat& delta, const BigRat& Delta,
                                         unsigned long M, unsigned long maxSteps)
{
  if (a <= 0 || mu <= 0 || delta <= 0 || Delta <= 0)
    throw DomainError("simultaneous approximation needs positive parameters");
  if (Delta > a / 2 || Delta > a * delta / (2 * mu))
    throw DomainError("Delta too large");
  BigRat xi = delta / (4 * a);
  BigRat target = mu / a;
  auto hit = kroneckerSearch(beta, alpha, target - xi, target + xi, M + 1, 0, maxSteps);
  if (!hit) return std::nullopt;
  return SimultApprox{hit->n1, hit->n2};
}

// ---------------------------------------------------------------- solver

namespace {

/// Ordered view of a system: positions 0, 1 are the two largest powers and
/// 2.. the strictly decreasing chain below them.
struct Frame
{
  std::vector<BigInt> z;
  Matrix A;
  std::vector<int> perm;  // frame position -> original index

  void swap(int i, int j)
  {
    std::swap(z[i], z[j]);
    for (auto& r : A) std::swap(r[i], r[j]);
    std::swap(perm[i], perm[j]);
  }
  StrictSystem sys() const { return {z, A}; }
  size_t size() const { return z.size(); }
};

RatForm unit(size_t l, size_t i, size_t j)
{
  RatForm f(l, 0);
  f[i] = 1;
  f[j] = -1;
  return f;
}

class StrictSolver
{
 public:
  explicit StrictSolver(const StrictOptions& o) : opts_(o) {}

  StrictResult solve(const StrictSystem& sys)
  {
    StrictResult r = solveInner(sys);
    if (r.verdict == Verdict::Sat && !strictHolds(sys, r.witness))
      throw std::logic_error("strict solver produced a bad witness");
    return r;
  }

 private:
  StrictResult sat(Exponents n) { return {Verdict::Sat, std::move(n)}; }

  StrictResult solveInner(const StrictSystem& sys)
  {
    const size_t l = sys.z.size();
    for (const auto& r : sys.A)
    {
      if (r.size() != l) throw DomainError("row length mismatch");
      if (std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; }))
        return {Verdict::Unsat, {}};
    }
    if (sys.A.empty()) return sat(Exponents(l, 0));
    // a column that no row mentions is free
    for (size_t i = 0; i < l; ++i)
    {
      bool used = false;
      for (const auto& r : sys.A) used = used || r[i] != 0;
      if (used) continue;
      StrictSystem red;
      for (size_t k = 0; k < l; ++k)
        if (k != i) red.z.push_back(sys.z[k]);
      for (const auto& r : sys.A)
      {
        Row nr;
        for (size_t k = 0; k < l; ++k)
          if (k != i) nr.push_back(r[k]);
        red.A.push_back(nr);
      }
      StrictResult s = solve(red);
      if (s.verdict == Verdict::Sat) s.witness.insert(s.witness.begin() + i, 0);
      return s;
    }
    if (l == 1)
    {
      for (const auto& r : sys.A)
        if (r[0] <= 0) return {Verdict::Unsat, {}};
      return sat({0});
    }
    if (opts_.probe)
      if (auto w = probe(sys)) return sat(*w);
    if (l == 2) return baseTwo(sys);
    return general(sys);
  }

  std::optional<Exponents> probe(const StrictSystem& sys)
  {
    const size_t l = sys.z.size();
    unsigned long box = l <= 3 ? 5 : (l == 4 ? 3 : 2);
    Exponents n(l, 0);
    for (;;)
    {
      if (strictHolds(sys, n)) return n;
      size_t j = 0;
      while (j < l && n[j] == box) n[j++] = 0;
      if (j == l) return std::nullopt;
      ++n[j];
    }
  }

  StrictResult baseTwo(const StrictSystem& sys)
  {
    // t = z0^n0 / z1^n1 must lie in (lo, hi)
    BigRat lo = 0;
    std::optional<BigRat> hi;
    for (const auto& r : sys.A)
    {
      const BigInt &p = r[0], &q = r[1];
      if (p > 0)
      {
        BigRat u(-q, p);
        u.canonicalize();
        lo = std::max(lo, u);
      }
      else if (p < 0)
      {
        BigRat u(q, -p);
        u.canonicalize();
        if (!hi || u < *hi) hi = u;
      }
      else if (q <= 0)
      {
        return {Verdict::Unsat, {}};
      }
    }
    if (hi && *hi <= lo) return {Verdict::Unsat, {}};
    const BigInt &g0 = sys.z[0], &g1 = sys.z[1];
    if (g0 == g1)
    {
      BigRat g(g0);
      long k = 0;
      BigRat p = 1;  // g^k
      if (lo == 0)
      {
        while (hi && p >= *hi)
        {
          p /= g;
          --k;
        }
      }
      else if (p > lo)
      {
        while (p / g > lo)
        {
          p /= g;
          --k;
        }
      }
      else
      {
        while (p <= lo)
        {
          p *= g;
          ++k;
        }
      }
      if (hi && p >= *hi) return {Verdict::Unsat, {}};
      if (k >= 0) return sat({static_cast<unsigned long>(k), 0});
      return sat({0, static_cast<unsigned long>(-k)});
    }
    auto hit = kroneckerSearch(g0, g1, lo, hi, 0, 0, opts_.kroneckerSteps);
    if (!hit) return {Verdict::Unknown, {}};
    return sat({hit->n1, hit->n2});
  }

  StrictResult general(const StrictSystem& sys)
  {
    const int l = static_cast<int>(sys.z.size());
    bool unknown = false;
    // two powers coincide
    for (int a = 0; a < l; ++a)
      for (int b = a + 1; b < l; ++b)
      {
        if (sys.z[a] == sys.z[b])
        {
          auto red = eliminateBoundedGap(sys, b, a, 0, 0);
          StrictResult r = solve(red[0].sys);
          if (r.verdict == Verdict::Sat) return sat(liftGap(r.witness, b, a, 0));
          unknown = unknown || r.verdict == Verdict::Unknown;
          continue;
        }
        // different bases: both exponents are zero
        if (!opts_.affine)
        {
          unknown = true;
          continue;
        }
        std::vector<BigInt> z;
        Matrix A;
        Row rhs;
        for (int i = 0; i < l; ++i)
          if (i != a && i != b) z.push_back(sys.z[i]);
        for (const auto& r : sys.A)
        {
          Row nr;
          for (int i = 0; i < l; ++i)
            if (i != a && i != b) nr.push_back(r[i]);
          A.push_back(nr);
          rhs.push_back(-(r[a] + r[b]));
        }
        StrictResult r = opts_.affine(z, A, rhs);
        if (r.verdict == Verdict::Sat)
        {
          Exponents n;
          size_t k = 0;
          for (int i = 0; i < l; ++i) n.push_back(i == a || i == b ? 0 : r.witness.at(k++));
          return sat(n);
        }
        unknown = unknown || r.verdict == Verdict::Unknown;
      }
    // all powers distinct: pick the top pair and the order of the rest
    for (int s = 0; s < l; ++s)
      for (int t = s + 1; t < l; ++t)
      {
        std::vector<int> rest;
        for (int i = 0; i < l; ++i)
          if (i != s && i != t) rest.push_back(i);
        do
        {
          Frame F;
          F.perm = {s, t};
          F.perm.insert(F.perm.end(), rest.begin(), rest.end());
          for (int f : F.perm) F.z.push_back(sys.z[f]);
          for (const auto& r : sys.A)
          {
            Row nr;
            for (int f : F.perm) nr.push_back(r[f]);
            F.A.push_back(nr);
          }
          auto addChain = [&](int i, int j) {
            Row nr(l, 0);
            nr[i] = 1;
            nr[j] = -1;
            F.A.push_back(nr);
          };
          addChain(0, 2);
          addChain(1, 2);
          for (int i = 2; i + 1 < l; ++i) addChain(i, i + 1);
          StrictResult r = ordered(F);
          if (r.verdict == Verdict::Sat) return sat(r.witness);
          unknown = unknown || r.verdict == Verdict::Unknown;
        } while (std::next_permutation(rest.begin(), rest.end()));
      }
    return {unknown ? Verdict::Unknown : Verdict::Unsat, {}};
  }

  /// Result in original indexing of the frame's system.
  StrictResult ordered(Frame F)
  {
    StrictResult r;
    if (F.z[0] == F.z[1])
    {
      bool unknown = false;
      for (int branch = 0; branch < 2; ++branch)
      {
        Frame G = F;
        if (branch == 1) G.swap(0, 1);
        Row top(G.size(), 0);
        top[0] = 1;
        top[1] = -1;
        G.A.push_back(top);
        r = topSameBase(G);
        if (r.verdict == Verdict::Sat) return unframe(G, r.witness);
        unknown = unknown || r.verdict == Verdict::Unknown;
      }
      return {unknown ? Verdict::Unknown : Verdict::Unsat, {}};
    }
    if (F.z[0] == F.z[2]) F.swap(0, 1);
    r = topMixed(F);
    if (r.verdict == Verdict::Sat) return unframe(F, r.witness);
    return r;
  }

  StrictResult unframe(const Frame& F, const Exponents& n)
  {
    Exponents out(F.size());
    for (size_t f = 0; f < F.size(); ++f) out[F.perm[f]] = n[f];
    return sat(out);
  }

  /// Solve rows (over all frame positions, zero outside P) on positions P.
  /// The witness comes back in frame indexing with zeros outside P.
  StrictResult solveOn(const Frame& F, const std::vector<int>& P,
                       const std::vector<RatForm>& rows)
  {
    StrictSystem sub;
    for (int p : P) sub.z.push_back(F.z[p]);
    for (const auto& f : rows)
    {
      Row full = scaleToInt(f);
      Row nr;
      for (int p : P) nr.push_back(full[p]);
      sub.A.push_back(nr);
    }
    StrictResult r = solve(sub);
    if (r.verdict != Verdict::Sat) return r;
    Exponents n(F.size(), 0);
    for (size_t i = 0; i < P.size(); ++i) n[P[i]] = r.witness[i];
    return sat(n);
  }

  /// Increase n[pos] until every row holds; the rows are known to hold for
  /// all large enough values.
  std::optional<Exponents> raise(const Frame& F, Exponents n, int pos)
  {
    StrictSystem s = F.sys();
    for (int step = 0; step < 100000; ++step)
    {
      if (strictHolds(s, n)) return n;
      ++n[pos];
    }
    return std::nullopt;
  }

  /// Rows contain z0 - z1 > 0, so z0^n0 > z1^n1 > z2^n2 > ... with one base on top.
  StrictResult topSameBase(const Frame& F)
  {
    const size_t l = F.size();
    const BigInt& g = F.z[0];
    std::optional<unsigned long> N;
    for (const auto& r : F.A)
    {
      if (r[0] >= 0) continue;
      BigInt S = 0;
      for (size_t i = 1; i < l; ++i) S += abs(r[i]);
      // |r0| g^(n0 - n1) < S
      unsigned long k = 0;
      BigInt p = -r[0] * g;
      while (p < S)
      {
        p *= g;
        ++k;
      }
      if (!N || k < *N) N = k;
    }
    if (N)
    {
      bool unknown = false;
      if (*N < 1) return {Verdict::Unsat, {}};
      for (const auto& red : eliminateBoundedGap(F.sys(), 0, 1, 1, *N))
      {
        StrictResult r = solve(red.sys);
        if (r.verdict == Verdict::Sat) return sat(liftGap(r.witness, 0, 1, red.k));
        unknown = unknown || r.verdict == Verdict::Unknown;
      }
      return {unknown ? Verdict::Unknown : Verdict::Unsat, {}};
    }
    std::vector<int> P;
    for (size_t i = 1; i < l; ++i) P.push_back(static_cast<int>(i));
    std::vector<RatForm> rows;
    for (const auto& r : F.A)
      if (r[0] == 0) rows.push_back(toRat(r));
    StrictResult sub = solveOn(F, P, rows);
    if (sub.verdict != Verdict::Sat) return sub;
    Exponents n = sub.witness;
    n[0] = n[1] + 1;
    auto w = raise(F, n, 0);
    if (!w) throw std::logic_error("top exponent did not dominate");
    return sat(*w);
  }

  /// z0 != z1 = z2; the chain rows are part of F.A.
  StrictResult topMixed(const Frame& F)
  {
    const size_t l = F.size();
    const BigInt& alpha = F.z[0];
    const BigInt& beta = F.z[1];
    std::vector<RatForm> Im, Ip, J;
    for (const auto& r : F.A)
    {
      RatForm p(l, 0);
      const BigInt& a = r[0];
      for (size_t i = 1; i < l; ++i)
      {
        if (a > 0)
          p[i] = BigRat(-r[i], a);
        else if (a < 0)
          p[i] = BigRat(r[i], -a);
        else
          p[i] = r[i];
        p[i].canonicalize();
      }
      (a > 0 ? Im : a < 0 ? Ip : J).push_back(p);
    }
    if (Im.empty()) Im.push_back(RatForm(l, 0));

    std::vector<int> below;  // positions 1..l-1
    for (size_t i = 1; i < l; ++i) below.push_back(static_cast<int>(i));
    std::vector<int> chainPos;  // positions 2..l-1
    for (size_t i = 2; i < l; ++i) chainPos.push_back(static_cast<int>(i));
    std::vector<int> noSecond{0};  // positions 0, 2..l-1
    noSecond.insert(noSecond.end(), chainPos.begin(), chainPos.end());

    if (Ip.empty())
    {
      StrictResult sub = solveOn(F, below, J);
      if (sub.verdict != Verdict::Sat) return sub;
      auto w = raise(F, sub.witness, 0);
      if (!w) throw std::logic_error("top exponent did not dominate");
      return sat(*w);
    }

    BigRat aM = Im[0][1], aP = Ip[0][1];
    for (const auto& p : Im) aM = std::max(aM, p[1]);
    for (const auto& p : Ip) aP = std::min(aP, p[1]);
    std::vector<RatForm> tM, tP, tJ;
    for (const auto& p : Im)
      if (p[1] == aM) tM.push_back(p);
    for (const auto& p : Ip)
      if (p[1] == aP) tP.push_back(p);
    for (const auto& p : J)
      if (p[1] == 0) tJ.push_back(p);
    auto tailSum = [&](const RatForm& p) {
      BigRat s = 0;
      for (size_t i = 2; i < l; ++i) s += abs(p[i]);
      return s;
    };
    auto diff = [&](const RatForm& p, const RatForm& q) {
      RatForm d(l);
      for (size_t i = 0; i < l; ++i) d[i] = p[i] - q[i];
      return d;
    };

    unsigned long N = 0;
    for (const auto& p : Im)
      if (p[1] != aM)
        for (const auto& q : tM) N = std::max(N, gapFor(aM - p[1], tailSum(diff(q, p)), beta));
    for (const auto& p : Ip)
      if (p[1] != aP)
        for (const auto& q : tP) N = std::max(N, gapFor(p[1] - aP, tailSum(diff(p, q)), beta));
    bool negJ = false;
    for (const auto& p : J)
      if (p[1] != 0)
      {
        N = std::max(N, gapFor(abs(p[1]), tailSum(p), beta));
        negJ = negJ || p[1] < 0;
      }

    bool unknown = false;
    auto bounded = [&](unsigned long lo, unsigned long hi) -> std::optional<Exponents> {
      if (lo > hi) return std::nullopt;
      for (const auto& red : eliminateBoundedGap(F.sys(), 1, 2, lo, hi))
      {
        StrictResult r = solve(red.sys);
        if (r.verdict == Verdict::Sat) return liftGap(r.witness, 1, 2, red.k);
        unknown = unknown || r.verdict == Verdict::Unknown;
      }
      return std::nullopt;
    };
    auto done = [&]() -> StrictResult {
      return {unknown ? Verdict::Unknown : Verdict::Unsat, {}};
    };
    auto maxGap = [&](const BigRat& q, const std::vector<const std::vector<RatForm>*>& sets) {
      unsigned long M = N;
      for (const auto* set : sets)
        for (const auto& p : *set) M = std::max(M, gapFor(q, tailSum(p), beta));
      return M;
    };
    auto check = [&](const Exponents& n) { return strictHolds(F.sys(), n); };

    // n1 - n2 <= N
    if (auto w = bounded(1, N)) return sat(*w);
    // beyond N some J row is eventually negative
    if (negJ) return done();

    // rows of the reduced system (13)-(16) that do not involve position 1
    std::vector<RatForm> chain;
    for (size_t i = 2; i + 1 < l; ++i) chain.push_back(unit(l, i, i + 1));
    RatForm topOverChain = unit(l, 0, 2);
    auto lowerRows = [&]() {
      std::vector<RatForm> out;
      for (const auto& p : tM)
      {
        RatForm f(l, 0);
        f[0] = 1;
        for (size_t i = 2; i < l; ++i) f[i] = -p[i];
        out.push_back(f);
      }
      return out;
    };
    auto upperRows = [&]() {
      std::vector<RatForm> out;
      for (const auto& p : tP)
      {
        RatForm f(l, 0);
        f[0] = -1;
        for (size_t i = 2; i < l; ++i) f[i] = p[i];
        out.push_back(f);
      }
      return out;
    };
    auto withGap = [&](Exponents n, unsigned long gap) {
      n[1] = n[2] + gap + 1;
      return n;
    };

    if (aP < 0)
    {
      unsigned long M = maxGap(-aP, {&tP});
      if (auto w = bounded(N + 1, M)) return sat(*w);
      return done();
    }
    if (aP < aM)
    {
      BigRat eps = (aM - aP) / 4;
      unsigned long M = maxGap(eps, {&tM, &tP});
      if (auto w = bounded(N + 1, M)) return sat(*w);
      return done();
    }
    if (aP == aM && aP == 0)
    {
      std::vector<RatForm> rows = lowerRows();
      for (const auto& f : upperRows()) rows.push_back(f);
      rows.push_back(topOverChain);
      rows.insert(rows.end(), chain.begin(), chain.end());
      rows.insert(rows.end(), tJ.begin(), tJ.end());
      StrictResult sub = solveOn(F, noSecond, rows);
      if (sub.verdict == Verdict::Sat)
      {
        Exponents n = withGap(sub.witness, N);
        if (!check(n)) throw std::logic_error("case a+ = a- = 0 produced a bad witness");
        return sat(n);
      }
      unknown = unknown || sub.verdict == Verdict::Unknown;
      return done();
    }
    if (aP == 0)  // a- < 0
    {
      unsigned long M = maxGap(-aM, {&tM});
      std::vector<RatForm> rows = upperRows();
      rows.push_back(topOverChain);
      rows.insert(rows.end(), chain.begin(), chain.end());
      rows.insert(rows.end(), tJ.begin(), tJ.end());
      StrictResult sub = solveOn(F, noSecond, rows);
      if (sub.verdict == Verdict::Sat)
      {
        Exponents n = withGap(sub.witness, M);
        if (!check(n)) throw std::logic_error("case a+ = 0 > a- produced a bad witness");
        return sat(n);
      }
      unknown = unknown || sub.verdict == Verdict::Unknown;
      if (auto w = bounded(N + 1, M)) return sat(*w);
      return done();
    }
    if (aP > aM)  // a+ > 0
    {
      BigRat lowEnd = std::max(aM, BigRat(0));
      BigRat eps = (aP - lowEnd) / 4;
      unsigned long M = maxGap(eps, {&tM, &tP});
      std::vector<RatForm> rows = chain;
      rows.insert(rows.end(), tJ.begin(), tJ.end());
      StrictResult sub = solveOn(F, chainPos, rows);
      if (sub.verdict != Verdict::Sat)
      {
        unknown = unknown || sub.verdict == Verdict::Unknown;
        return done();
      }
      Exponents n = sub.witness;
      unsigned long min1 = 0;
      BigInt floorVal = ipow(beta, n[2]);
      while (ipow(alpha, min1) <= floorVal) ++min1;
      unsigned long min2 = n[2] + M + 1;
      for (unsigned r = 0; r < opts_.retries; ++r)
      {
        auto hit = kroneckerSearch(alpha, beta, lowEnd + eps, aP - eps, min1, min2,
                                   opts_.kroneckerSteps);
        if (!hit) break;
        n[0] = hit->n1;
        n[1] = hit->n2;
        if (check(n)) return sat(n);
        min2 = hit->n2 + 1;
      }
      unknown = true;
      return done();
    }
    // a+ = a- = a > 0
    return caseEqualSlopes(F, aM, N, tM, tP, tJ, chain, chainPos, unknown);
  }

  StrictResult caseEqualSlopes(const Frame& F, const BigRat& a, unsigned long N,
                               const std::vector<RatForm>& tM,
                               const std::vector<RatForm>& tP,
                               const std::vector<RatForm>& tJ,
                               const std::vector<RatForm>& chain,
                               const std::vector<int>& chainPos, bool unknown)
  {
    const size_t l = F.size();
    const BigInt& alpha = F.z[0];
    const BigInt& beta = F.z[1];
    auto done = [&]() -> StrictResult {
      return {unknown ? Verdict::Unknown : Verdict::Unsat, {}};
    };
    // h_i < h_j for lower i and upper j, plus the chain and the J rows
    std::vector<RatForm> rows = chain;
    rows.insert(rows.end(), tJ.begin(), tJ.end());
    for (const auto& p : tM)
      for (const auto& q : tP)
      {
        RatForm f(l, 0);
        for (size_t i = 2; i < l; ++i) f[i] = q[i] - p[i];
        rows.push_back(f);
      }
    StrictResult sub = solveOn(F, chainPos, rows);
    if (sub.verdict != Verdict::Sat)
    {
      unknown = unknown || sub.verdict == Verdict::Unknown;
      return done();
    }
    // local view of positions 2..l-1
    const size_t L = l - 2;
    std::vector<BigInt> zl(F.z.begin() + 2, F.z.end());
    Exponents ml(sub.witness.begin() + 2, sub.witness.end());
    auto vl = values(zl, ml);
    auto local = [&](const RatForm& p) { return RatForm(p.begin() + 2, p.end()); };
    BigRat z3(vl[0]);
    std::optional<BigRat> xm, xp;
    for (const auto& p : tM)
    {
      BigRat v = dotRat(local(p), vl) / z3;
      if (!xm || v > *xm) xm = v;
    }
    for (const auto& p : tP)
    {
      BigRat v = dotRat(local(p), vl) / z3;
      if (!xp || v < *xp) xp = v;
    }
    BigRat eps = (*xp - *xm) / 4;
    if (eps <= 0) throw std::logic_error("sub-system witness does not separate the bounds");

    std::vector<RatForm> forms;
    for (const auto& p : tM)
    {
      RatForm f = local(p);
      for (auto& x : f) x = -x;
      f[0] += *xm + eps;
      forms.push_back(f);
    }
    for (const auto& p : tP)
    {
      RatForm f = local(p);
      f[0] -= *xp - eps;
      forms.push_back(f);
    }
    for (const auto& p : tJ) forms.push_back(local(p));
    for (size_t i = 0; i + 1 < L; ++i)
    {
      RatForm f(L, 0);
      f[i] = 1;
      f[i + 1] = -1;
      forms.push_back(f);
    }
    PumpingParams pp = pumpingParams(forms, zl, ml, eps);
    BigRat Delta = std::min(BigRat(a / 2), BigRat(a * pp.delta / (2 * pp.mu)));
    BigRat lowOff = *xm + eps, highOff = *xp - eps;
    unsigned long M = N;
    M = std::max(M, gapFor(Delta, abs(lowOff), beta));
    M = std::max(M, gapFor(Delta, abs(highOff), beta));
    M = std::max(M, gapFor(a, std::max(BigRat(0), BigRat(1 - lowOff)), beta));
    auto sa = simultApprox(alpha, beta, a, pp.mu, pp.delta, Delta, M, opts_.kroneckerSteps);
    if (!sa) return {Verdict::Unknown, {}};
    BigRat bd(ipow(beta, sa->d));
    unsigned long min1 = sa->m;
    unsigned long min2 = std::max({sa->d, sa->m, sa->d + ml[0]}) + 1;
    for (unsigned r = 0; r < opts_.retries; ++r)
    {
      auto hit = kroneckerSearch(alpha, beta, a + lowOff / bd, a + highOff / bd, min1, min2,
                                 opts_.kroneckerSteps);
      if (!hit) break;
      unsigned long k1 = hit->n1, k2 = hit->n2, k3 = k2 - sa->d;
      Exponents ext = pumpExtend(zl, ml, k3, k1 - sa->m);
      Exponents n(l);
      n[0] = k1;
      n[1] = k2;
      for (size_t i = 0; i < L; ++i) n[i + 2] = ext[i];
      if (strictHolds(F.sys(), n)) return sat(n);
      min2 = k2 + 1;
    }
    return {Verdict::Unknown, {}};
  }

  StrictOptions opts_;
};

}  // namespace

StrictResult solveStrict(const StrictSystem& sys, const StrictOptions& opts)
{
  std::vector<BigInt> bases;
  for (const auto& b : sys.z)
  {
    if (b < 2) throw DomainError("bases must exceed 1");
    if (std::find(bases.begin(), bases.end(), b) == bases.end()) bases.push_back(b);
  }
  if (bases.size() > 2) throw DomainError("at most two bases");
  if (bases.size() == 2 && multDependence(bases[0], bases[1]).dependent)
    throw DomainError("bases must be multiplicatively independent");
  StrictSolver s(opts);
  return s.solve(sys);
}

}  // namespace powpres
