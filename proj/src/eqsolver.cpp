#include "powpres/eqsolver.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace powpres {

// ---------------------------------------------------------------- cells

bool AClassCell::contains(const Exponents& n) const
{
  for (const auto& o : offsets)
    if (n.at(o.a) != n.at(o.b) + o.c) return false;
  for (const auto& f : fixes)
    if (n.at(f.a) != f.v) return false;
  return true;
}

bool AClassRepr::contains(const Exponents& n) const
{
  return std::any_of(cells.begin(), cells.end(),
                     [&](const AClassCell& c) { return c.contains(n); });
}

std::optional<AClassCell> cellNormalize(const AClassCell& cell, size_t arity)
{
  // weighted union-find: n_i = n_root(i) + pot[i]
  std::vector<int> parent(arity);
  std::vector<long long> pot(arity, 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto check = [&](int i) {
    if (i < 0 || static_cast<size_t>(i) >= arity)
      throw std::out_of_range("cell constraint outside arity");
  };
  auto find = [&](int i) {
    long long acc = 0;
    int r = i;
    while (parent[r] != r)
    {
      acc += pot[r];
      r = parent[r];
    }
    // compress
    long long rest = acc;
    while (parent[i] != i)
    {
      int next = parent[i];
      long long here = pot[i];
      parent[i] = r;
      pot[i] = rest;
      rest -= here;
      i = next;
    }
    return std::pair<int, long long>{r, acc};
  };
  for (const auto& o : cell.offsets)
  {
    check(o.a);
    check(o.b);
    auto [ra, pa] = find(o.a);
    auto [rb, pb] = find(o.b);
    long long c = static_cast<long long>(o.c);
    if (ra == rb)
    {
      if (pa != pb + c) return std::nullopt;
      continue;
    }
    parent[ra] = rb;
    pot[ra] = pb + c - pa;
  }
  std::vector<std::optional<long long>> rootVal(arity);
  for (const auto& f : cell.fixes)
  {
    check(f.a);
    auto [r, p] = find(f.a);
    long long v = static_cast<long long>(f.v) - p;
    if (rootVal[r] && *rootVal[r] != v) return std::nullopt;
    rootVal[r] = v;
  }

  AClassCell out;
  std::vector<std::vector<int>> members(arity);
  std::vector<long long> rel(arity);
  for (size_t i = 0; i < arity; ++i)
  {
    auto [r, p] = find(static_cast<int>(i));
    members[r].push_back(static_cast<int>(i));
    rel[i] = p;
  }
  for (size_t r = 0; r < arity; ++r)
  {
    if (members[r].empty()) continue;
    if (rootVal[r])
    {
      for (int m : members[r])
      {
        long long v = *rootVal[r] + rel[m];
        if (v < 0) return std::nullopt;
        out.fixes.push_back({m, static_cast<unsigned long>(v)});
      }
      continue;
    }
    if (members[r].size() < 2) continue;
    int rep = members[r][0];
    for (int m : members[r])
      if (rel[m] < rel[rep]) rep = m;
    for (int m : members[r])
      if (m != rep)
        out.offsets.push_back({m, rep, static_cast<unsigned long>(rel[m] - rel[rep])});
  }
  std::sort(out.offsets.begin(), out.offsets.end());
  std::sort(out.fixes.begin(), out.fixes.end());
  return out;
}

namespace {

void tidy(AClassRepr& r)
{
  std::sort(r.cells.begin(), r.cells.end());
  r.cells.erase(std::unique(r.cells.begin(), r.cells.end()), r.cells.end());
}

}  // namespace

AClassRepr intersect(const AClassRepr& x, const AClassRepr& y)
{
  AClassRepr r;
  r.arity = std::max(x.arity, y.arity);
  r.complete = (x.complete && y.complete) || (x.complete && x.cells.empty()) ||
               (y.complete && y.cells.empty());
  for (const auto& a : x.cells)
    for (const auto& b : y.cells)
    {
      AClassCell c = a;
      c.offsets.insert(c.offsets.end(), b.offsets.begin(), b.offsets.end());
      c.fixes.insert(c.fixes.end(), b.fixes.begin(), b.fixes.end());
      if (auto n = cellNormalize(c, r.arity)) r.cells.push_back(*n);
    }
  tidy(r);
  return r;
}

// ---------------------------------------------------------------- bounds

namespace {

BigRat roundUp(const BigRat& q)
{
  static const BigInt scale = BigInt(1) << 32;
  BigRat s = q * BigRat(scale);
  BigRat r(ceilRat(s), scale);
  r.canonicalize();
  return r;
}

BigRat lnHi(const BigRat& x, long bits) { return lnBits(x, bits).hi; }
BigRat lnLo(const BigRat& x, long bits) { return lnBits(x, bits).lo; }

/// Upper bound of num / den for den > 0 given as an enclosure.
BigRat divUp(const BigRat& num, const DirectedLog& den)
{
  return num >= 0 ? BigRat(num / den.lo) : BigRat(num / den.hi);
}

BigInt absSum(const std::vector<BigInt>& c, size_t from, const BigInt& d)
{
  BigInt s = abs(d);
  for (size_t i = from; i < c.size(); ++i) s += abs(c[i]);
  return s;
}

struct BoundContext
{
  std::vector<BigInt> c, z;
  BigInt d;
  long bits;
  DirectedLog lnA, lnB;
  BigRat cm, c0, k1;

  BoundContext(const std::vector<BigInt>& c_, const std::vector<BigInt>& z_,
               const BigInt& d_, long bits_)
      : c(c_), z(z_), d(d_), bits(bits_)
  {
    lnA = lnBits(BigRat(z[0]), bits);
    lnB = lnBits(BigRat(z[1]), bits);
    const BigRat floorA(16, 100);
    BigRat a1 = std::max(lnA.hi, floorA), a2 = std::max(lnB.hi, floorA);
    // 1.4 * 30^6 * 3^4.5 with sqrt(3) < 1.7321
    cm = BigRat(14, 10) * BigRat(ipow(30, 6)) * BigRat(81 * 17321, 10000) * a1 * a2;
    c0 = 1 + lnHi(3, bits);
    k1 = std::max(lnA.hi, lnB.hi);
  }

  /// Baker-type lower bound exponent for the first j terms, as a polynomial.
  BiPoly q(size_t j, const std::vector<BiPoly>& p) const
  {
    BigRat k0 = BigRat(16, 100) + 2 * lnHi(BigRat(j), bits);
    for (size_t i = 0; i < j; ++i) k0 += lnHi(BigRat(abs(c[i])), bits);
    BiPoly inner = BiPoly::constant(roundUp(k0));
    BiPoly sum;
    for (size_t i = 0; i < j; ++i) sum += p[i];
    inner += sum.scaled(k1);
    return inner.timesLinear(c0).scaled(cm);
  }

  int lastWithBase(size_t j, const BigInt& base) const
  {
    for (size_t i = j; i-- > 0;)
      if (z[i] == base) return static_cast<int>(i);
    throw std::logic_error("no earlier term with this base");
  }
};

/// Diagonal restriction x = y = t.
std::vector<BigRat> diagonal(const BiPoly& p)
{
  std::vector<BigRat> u(p.degree() + 1, 0);
  for (const auto& [e, v] : p.coef) u[e.first + e.second] += v;
  return u;
}

BigRat evalUni(const std::vector<BigRat>& u, const BigRat& t)
{
  BigRat r = 0;
  for (size_t k = u.size(); k-- > 0;) r = r * t + u[k];
  return r;
}

/// Smallest 2^k such that a*n >= P(log(1+n)) for every n >= 2^k.
BigInt blockBound(const BigRat& a, const std::vector<BigRat>& u, long bits)
{
  BigRat ln2 = lnHi(2, bits);
  unsigned long D = u.empty() ? 0 : u.size() - 1;
  for (unsigned long k = 0; k < 100000; ++k)
  {
    BigRat t = ln2 * BigRat(k + 2);
    if (evalUni(u, t) > a * BigRat(BigInt(1) << k)) continue;
    BigRat ratio(k + 3, k + 2), pw = 1;
    for (unsigned long i = 0; i < D; ++i) pw *= ratio;
    if (pw <= 2) return BigInt(1) << k;
  }
  throw std::logic_error("exponent bound did not converge");
}

}  // namespace

BiPoly BiPoly::constant(const BigRat& c)
{
  BiPoly p;
  if (c != 0) p.coef[{0, 0}] = roundUp(c);
  return p;
}

BiPoly& BiPoly::operator+=(const BiPoly& o)
{
  for (const auto& [e, v] : o.coef) coef[e] += v;
  return *this;
}

BiPoly BiPoly::scaled(const BigRat& k) const
{
  BiPoly p;
  for (const auto& [e, v] : coef) p.coef[e] = roundUp(v * k);
  return p;
}

BiPoly BiPoly::timesLinear(const BigRat& c0) const
{
  BiPoly p;
  for (const auto& [e, v] : coef)
  {
    p.coef[e] += roundUp(v * c0);
    p.coef[{e.first + 1, e.second}] += v;
    p.coef[{e.first, e.second + 1}] += v;
  }
  return p;
}

BigRat BiPoly::eval(const BigRat& x, const BigRat& y) const
{
  BigRat r = 0;
  for (const auto& [e, v] : coef)
  {
    BigRat t = v;
    for (unsigned i = 0; i < e.first; ++i) t *= x;
    for (unsigned i = 0; i < e.second; ++i) t *= y;
    r += t;
  }
  return r;
}

BigRat BiPoly::constantTerm() const
{
  auto it = coef.find({0, 0});
  return it == coef.end() ? BigRat(0) : it->second;
}

unsigned BiPoly::degree() const
{
  unsigned d = 0;
  for (const auto& [e, v] : coef)
    if (v != 0) d = std::max(d, e.first + e.second);
  return d;
}

namespace {

void checkFrame(const std::vector<BigInt>& c, const std::vector<BigInt>& z)
{
  if (c.size() != z.size() || c.size() < 2)
    throw DomainError("ordered frame needs at least two terms");
  if (z[0] == z[1]) throw DomainError("top pair must use different bases");
  for (size_t i = 0; i < c.size(); ++i)
  {
    if (c[i] == 0) throw DomainError("zero coefficient in ordered frame");
    if (z[i] != z[0] && z[i] != z[1]) throw DomainError("more than two bases");
  }
}

}  // namespace

GapBounds mixedGapBounds(const std::vector<BigInt>& c,
                         const std::vector<BigInt>& z, const BigInt& d,
                         long precisionBits)
{
  checkFrame(c, z);
  BoundContext ctx(c, z, d, precisionBits);
  GapBounds g;
  // the full sum |d| + sum |c_i| only loosens the bound
  BigInt s0 = absSum(c, 0, d), s1 = s0;
  g.xi2 = divUp(lnHi(BigRat(s0), precisionBits) - lnLo(BigRat(abs(c[0])), precisionBits),
                ctx.lnB);
  g.xi1 = divUp(lnHi(BigRat(s1), precisionBits) - lnLo(BigRat(abs(c[1])), precisionBits),
                ctx.lnA);
  g.p.push_back(BiPoly::constant(1));
  g.p.push_back(BiPoly::constant(1));
  for (size_t j = 2; j < c.size(); ++j)
  {
    BiPoly q = ctx.q(j, g.p);
    BigInt kappa2 = absSum(c, j, d);
    q += BiPoly::constant(lnHi(BigRat(kappa2), precisionBits));
    DirectedLog lb = z[j] == z[0] ? ctx.lnA : ctx.lnB;
    BiPoly pj = q.scaled(1 / lb.lo);
    pj += g.p[ctx.lastWithBase(j, z[j])];
    g.p.push_back(pj);
  }
  return g;
}

// ---------------------------------------------------------------- ordered search

namespace {

constexpr unsigned long long kMod = (1ULL << 61) - 1;

unsigned long long mulMod(unsigned long long a, unsigned long long b)
{
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  unsigned long long lo = static_cast<unsigned long long>(p & kMod);
  unsigned long long hi = static_cast<unsigned long long>(p >> 61);
  unsigned long long r = lo + hi;
  if (r >= kMod) r -= kMod;
  return r;
}

unsigned long long toMod(const BigInt& x)
{
  BigInt m = x % BigInt(std::to_string(kMod));
  if (m < 0) m += BigInt(std::to_string(kMod));
  return std::stoull(m.get_str());
}

struct PowTable
{
  unsigned long long base;
  std::vector<unsigned long long> v{1};
  unsigned long long at(unsigned long n)
  {
    while (v.size() <= n) v.push_back(mulMod(v.back(), base));
    return v[n];
  }
};

/// Bound on the smaller-base top exponent over all solutions in the frame.
BigInt frameBound(const BoundContext& ctx, const GapBounds& g)
{
  const long bits = ctx.bits;
  // solutions with n_0 <= n_1
  BigRat rLo;
  for (long b = bits;; b *= 2)
  {
    DirectedLog la = lnBits(BigRat(ctx.z[0]), b), lb = lnBits(BigRat(ctx.z[1]), b);
    rLo = lb.lo / la.hi;
    if (rLo > 1) break;
    if (b > 4096) throw std::logic_error("cannot separate logarithms");
  }
  BigInt b2 = 0;
  if (g.xi1 > 0) b2 = floorRat(g.xi1 / (rLo - 1));

  // solutions with n_0 > n_1
  int a = ctx.lastWithBase(ctx.c.size(), ctx.z[0]);
  int b = ctx.lastWithBase(ctx.c.size(), ctx.z[1]);
  BigInt b1;
  if (ctx.d != 0)
  {
    BiPoly poly = ctx.q(ctx.c.size(), g.p);
    poly += BiPoly::constant(lnHi(BigRat(abs(ctx.d)), bits));
    poly = poly.scaled(1 / ctx.lnA.lo);
    poly += g.p[a];
    b1 = blockBound(1, diagonal(poly), bits);
  }
  else
  {
    BigInt p = selectPrime(ctx.z[0], ctx.z[1]);
    BigRat va(padicValuation(p, ctx.z[0])), vb(padicValuation(p, ctx.z[1]));
    BigRat gap;
    for (long bb = bits;; bb *= 2)
    {
      DirectedLog la = lnBits(BigRat(ctx.z[0]), bb), lb = lnBits(BigRat(ctx.z[1]), bb);
      gap = la.lo / lb.hi - va / vb;
      if (gap > 0) break;
      if (bb > 4096) throw std::logic_error("cannot separate valuation ratio");
    }
    BigRat xi2 = std::max(g.xi2, BigRat(0));
    BiPoly poly = BiPoly::constant(xi2 * vb);
    poly += g.p[b].scaled(vb);
    BigInt total = absSum(ctx.c, 0, 0);
    BigRat lnp = lnLo(BigRat(p), bits);
    poly += BiPoly::constant(lnHi(BigRat(total), bits) / lnp);
    poly += g.p[a].scaled(ctx.lnA.hi / lnp);
    b1 = blockBound(gap * vb, diagonal(poly), bits);
  }
  return std::max(b1, b2);
}

}  // namespace

MixedResult solveMixedOrdered(const std::vector<BigInt>& c,
                              const std::vector<BigInt>& z, const BigInt& d,
                              const std::vector<int>& order,
                              const EqOptions& opts)
{
  const size_t l = c.size();
  if (z.size() != l || order.size() != l) throw DomainError("size mismatch");
  {
    std::vector<int> s = order;
    std::sort(s.begin(), s.end());
    for (size_t i = 0; i < l; ++i)
      if (s[i] != static_cast<int>(i)) throw DomainError("order is not a permutation");
  }
  std::vector<int> ord = order;
  if (z[ord[0]] > z[ord[1]]) std::swap(ord[0], ord[1]);
  std::vector<BigInt> fc(l), fz(l);
  for (size_t j = 0; j < l; ++j)
  {
    fc[j] = c[ord[j]];
    fz[j] = z[ord[j]];
  }
  checkFrame(fc, fz);
  const long bits = std::max(opts.precisionBits, 64L);
  BoundContext ctx(fc, fz, d, bits);
  GapBounds g = mixedGapBounds(fc, fz, d, bits);

  MixedResult res;
  res.bound = frameBound(ctx, g);

  BigRat rLo = ctx.lnA.lo / ctx.lnB.hi, rHi = ctx.lnA.hi / ctx.lnB.lo;
  std::vector<double> lz(l);
  for (size_t j = 0; j < l; ++j) lz[j] = std::log(fz[j].get_d());
  std::vector<int> mu(l);
  for (size_t j = 0; j < l; ++j) mu[j] = fz[j] == fz[0] ? 0 : 1;
  std::vector<BigInt> pConst(l);
  for (size_t j = 0; j < l; ++j) pConst[j] = floorRat(g.p[j].constantTerm());

  std::vector<PowTable> tab;
  std::vector<unsigned long long> cm(l);
  for (size_t j = 0; j < l; ++j)
  {
    tab.push_back({toMod(fz[j])});
    cm[j] = toMod(fc[j]);
  }
  const unsigned long long dm = toMod(d);

  Exponents n(l, 0);
  std::vector<BigInt> val(l);
  auto verify = [&]() {
    for (size_t j = 0; j < l; ++j) val[j] = ipow(fz[j], n[j]);
    BigInt s = 0;
    for (size_t j = 0; j < l; ++j) s += fc[j] * val[j];
    if (s != d) return false;
    for (size_t j = 2; j < l; ++j)
    {
      const BigInt& prev = j == 2 ? std::min(val[0], val[1]) : val[j - 1];
      if (val[j] > prev) return false;
    }
    for (unsigned long mask = 1; mask + 1 < (1UL << l); ++mask)
    {
      BigInt t = 0;
      for (size_t j = 0; j < l; ++j)
        if (mask >> j & 1) t += fc[j] * val[j];
      if (t == 0) return false;
    }
    return true;
  };

  unsigned long count = 0;
  bool stopped = false;
  // chain positions 2.. below the top pair
  auto chain = [&](auto&& self, size_t j, unsigned long long acc) -> void {
    if (stopped) return;
    if (j == l)
    {
      if (++count >= opts.budget) stopped = true;
      if (acc == dm && verify())
      {
        Exponents sol(l);
        for (size_t k = 0; k < l; ++k) sol[ord[k]] = n[k];
        res.solutions.push_back(sol);
      }
      return;
    }
    unsigned long top = n[mu[j]];
    double cap = j == 2 ? std::min(n[0] * lz[0], n[1] * lz[1]) : n[j - 1] * lz[j - 1];
    unsigned long hi = top;
    double h = std::floor(cap / lz[j]) + 1;
    if (h < static_cast<double>(hi)) hi = static_cast<unsigned long>(h);
    unsigned long lo = 0;
    if (BigInt(top) > pConst[j])
    {
      BigRat x = lnHi(BigRat(BigInt(n[0]) + 1), bits), y = lnHi(BigRat(BigInt(n[1]) + 1), bits);
      BigInt gap = ceilRat(g.p[j].eval(x, y));
      if (BigInt(top) > gap) lo = BigInt(BigInt(top) - gap).get_ui();
    }
    for (unsigned long v = lo; v <= hi && !stopped; ++v)
    {
      n[j] = v;
      unsigned long long term = mulMod(cm[j], tab[j].at(v));
      unsigned long long next = acc + term;
      if (next >= kMod) next -= kMod;
      self(self, j + 1, next);
    }
  };

  BigInt bound = res.bound;
  for (unsigned long n0 = 0; !stopped; ++n0)
  {
    if (BigInt(n0) > bound)
    {
      res.complete = true;
      break;
    }
    // an empty window still costs one step so the loop always ends
    if (++count >= opts.budget) stopped = true;
    BigRat lo1 = rLo * BigRat(n0) - g.xi2, hi1 = rHi * (BigRat(n0) + g.xi1);
    if (hi1 < 0) continue;
    BigInt from = std::max(ceilRat(lo1), BigInt(0)), to = floorRat(hi1);
    n[0] = n0;
    unsigned long long a0 = mulMod(cm[0], tab[0].at(n0));
    for (BigInt v = from; v <= to && !stopped; ++v)
    {
      n[1] = v.get_ui();
      unsigned long long acc = a0 + mulMod(cm[1], tab[1].at(n[1]));
      if (acc >= kMod) acc -= kMod;
      chain(chain, 2, acc);
    }
  }
  res.enumerated = count;
  std::sort(res.solutions.begin(), res.solutions.end());
  return res;
}

// ---------------------------------------------------------------- recursion

namespace {

class Solver
{
 public:
  Solver(const EqOptions& o, EqStats* s) : opts_(o), stats_(s) {}

  AClassRepr solve(const std::vector<BigInt>& c, const std::vector<BigInt>& z,
                   const BigInt& d)
  {
    std::vector<int> idx;
    std::vector<BigInt> cc, zz;
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0)
      {
        idx.push_back(static_cast<int>(i));
        cc.push_back(c[i]);
        zz.push_back(z[i]);
      }
    const AClassRepr& local = compact(cc, zz, d);
    AClassRepr r;
    r.arity = c.size();
    r.complete = local.complete;
    for (const auto& cell : local.cells)
    {
      AClassCell m;
      for (const auto& o : cell.offsets) m.offsets.push_back({idx[o.a], idx[o.b], o.c});
      for (const auto& f : cell.fixes) m.fixes.push_back({idx[f.a], f.v});
      r.cells.push_back(*cellNormalize(m, r.arity));
    }
    tidy(r);
    return r;
  }

 private:
  const AClassRepr& compact(const std::vector<BigInt>& c, const std::vector<BigInt>& z,
                            const BigInt& d)
  {
    std::ostringstream key;
    for (size_t i = 0; i < c.size(); ++i) key << c[i] << '*' << z[i] << ',';
    key << '=' << d;
    auto it = memo_.find(key.str());
    if (it != memo_.end()) return it->second;
    AClassRepr r = compute(c, z, d);
    return memo_.emplace(key.str(), std::move(r)).first->second;
  }

  AClassRepr compute(const std::vector<BigInt>& c, const std::vector<BigInt>& z,
                     const BigInt& d)
  {
    const size_t m = c.size();
    AClassRepr r;
    r.arity = m;
    if (m == 0)
    {
      if (d == 0) r.cells.push_back({});
      return r;
    }
    if (m == 1)
    {
      if (d % c[0] == 0)
      {
        BigInt q = d / c[0];
        if (q >= 1 && isPowerOf(q, z[0]))
        {
          unsigned long e = 0;
          while (q > 1)
          {
            q /= z[0];
            ++e;
          }
          r.cells.push_back({{}, {{0, e}}});
        }
      }
      return r;
    }
    // every power is at least 1
    BigInt sum = 0;
    bool allPos = true, allNeg = true;
    for (const auto& x : c)
    {
      sum += x;
      allPos = allPos && x > 0;
      allNeg = allNeg && x < 0;
    }
    if ((allPos && d < sum) || (allNeg && d > sum)) return r;

    BigInt smallest = *std::min_element(z.begin(), z.end());
    BigInt largest = *std::max_element(z.begin(), z.end());
    BigInt total = absSum(c, 0, d);
    unsigned long N = 0;
    for (BigInt p = 1; p <= total; p *= smallest) ++N;

    // some same-base pair sits within N of each other
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b)
      {
        if (a == b || z[a] != z[b]) continue;
        for (unsigned long k = 0; k <= N; ++k)
        {
          std::vector<BigInt> c2 = c;
          c2[b] = c[a] * ipow(z[a], k) + c[b];
          c2[a] = 0;
          AClassRepr sub = solve(c2, z, d);
          r.complete = r.complete && sub.complete;
          for (const auto& cell : sub.cells)
          {
            AClassCell x = cell;
            x.offsets.push_back({static_cast<int>(a), static_cast<int>(b), k});
            if (auto nx = cellNormalize(x, m)) r.cells.push_back(*nx);
          }
        }
      }
    if (smallest == largest)
    {
      tidy(r);
      return r;
    }
    if (multDependence(smallest, largest).dependent)
      throw DomainError("dependent bases must be rebased to a common base first");

    // a proper sub-sum vanishes
    for (unsigned long mask = 1; mask + 1 < (1UL << m); ++mask)
    {
      std::vector<BigInt> in(m, 0), out(m, 0);
      bool pos = false, neg = false;
      for (size_t i = 0; i < m; ++i)
      {
        if (mask >> i & 1)
        {
          in[i] = c[i];
          pos = pos || c[i] > 0;
          neg = neg || c[i] < 0;
        }
        else
        {
          out[i] = c[i];
        }
      }
      if (!(pos && neg)) continue;
      AClassRepr rest = solve(out, z, d);
      if (rest.cells.empty() && rest.complete) continue;
      AClassRepr zero = solve(in, z, 0);
      AClassRepr both = intersect(zero, rest);
      r.complete = r.complete && both.complete;
      r.cells.insert(r.cells.end(), both.cells.begin(), both.cells.end());
    }

    // the two largest powers have different bases
    for (size_t s = 0; s < m; ++s)
      for (size_t t = s + 1; t < m; ++t)
      {
        if (z[s] == z[t]) continue;
        std::vector<int> rest;
        for (size_t i = 0; i < m; ++i)
          if (i != s && i != t) rest.push_back(static_cast<int>(i));
        do
        {
          std::vector<int> order{static_cast<int>(s), static_cast<int>(t)};
          order.insert(order.end(), rest.begin(), rest.end());
          MixedResult mr = solveMixedOrdered(c, z, d, order, opts_);
          if (stats_)
          {
            stats_->enumerated += mr.enumerated;
            ++stats_->orderedSearches;
            stats_->truncated = stats_->truncated || !mr.complete;
          }
          r.complete = r.complete && mr.complete;
          for (const auto& sol : mr.solutions)
          {
            AClassCell x;
            for (size_t i = 0; i < m; ++i) x.fixes.push_back({static_cast<int>(i), sol[i]});
            r.cells.push_back(x);
          }
        } while (std::next_permutation(rest.begin(), rest.end()));
      }
    tidy(r);
    return r;
  }

  EqOptions opts_;
  EqStats* stats_;
  std::map<std::string, AClassRepr> memo_;
};

void checkBases(const std::vector<BigInt>& z)
{
  for (const auto& b : z)
    if (b < 2) throw DomainError("bases must exceed 1");
}

}  // namespace

AClassRepr solveSingleBase(const std::vector<BigInt>& c, const BigInt& d,
                           const BigInt& gamma)
{
  return solveEquation(c, std::vector<BigInt>(c.size(), gamma), d);
}

AClassRepr solveEquation(const std::vector<BigInt>& c,
                         const std::vector<BigInt>& z, const BigInt& d,
                         const EqOptions& opts, EqStats* stats)
{
  if (c.size() != z.size()) throw DomainError("size mismatch");
  checkBases(z);
  Solver s(opts, stats);
  return s.solve(c, z, d);
}

AClassRepr solveEqualities(const Matrix& C, const Row& d,
                           const std::vector<BigInt>& z, const EqOptions& opts,
                           EqStats* stats)
{
  if (C.size() != d.size()) throw DomainError("size mismatch");
  checkBases(z);
  AClassRepr r;
  r.arity = z.size();
  r.cells.push_back({});
  Solver s(opts, stats);
  for (size_t i = 0; i < C.size(); ++i)
  {
    if (C[i].size() != z.size()) throw DomainError("row length mismatch");
    r = intersect(r, s.solve(C[i], z, d[i]));
    if (r.cells.empty() && r.complete) break;
  }
  return r;
}

}  // namespace powpres
