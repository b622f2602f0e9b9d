#include <gtest/gtest.h>

#include <random>

#include "powpres/numth.h"

using namespace powpres;

namespace {

// Independent reference: ln 2 = sum_{k>=1} 1/(k 2^k), tail after n terms
// is below 1/2^n.
DirectedLog ln2Reference(int n)
{
  BigRat s = 0;
  for (int k = 1; k <= n; ++k) s += BigRat(1, BigInt(k) * ipow(2, k));
  return {s, s + BigRat(1, ipow(2, n))};
}

BigInt trialDivisionCheck(const BigInt& n)
{
  for (BigInt d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

}  // namespace

TEST(Factorize, SmallValues)
{
  EXPECT_EQ(factorize(24), (Factorization{{2, 3}, {3, 1}}));
  EXPECT_EQ(factorize(12), (Factorization{{2, 2}, {3, 1}}));
  EXPECT_EQ(trialDivisionCheck(1000003), 1000003);
  EXPECT_EQ(factorize(1000003), (Factorization{{1000003, 1}}));
  EXPECT_THROW(factorize(1), DomainError);
}

TEST(Factorize, LargeSemiprime)
{
  BigInt p("1000000007"), q("998244353");
  EXPECT_EQ(factorize(p * q * 4), (Factorization{{2, 2}, {q, 1}, {p, 1}}));
}

TEST(Factorize, ReconstructsRandomInputs)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i)
  {
    BigInt n = BigInt(static_cast<unsigned long>(rng() % 1000000000000ULL)) + 2;
    Factorization f = factorize(n);
    BigInt prod = 1;
    for (size_t j = 0; j < f.size(); ++j)
    {
      EXPECT_TRUE(isPrime(f[j].p));
      EXPECT_GE(f[j].e, 1u);
      if (j) EXPECT_LT(f[j - 1].p, f[j].p);
      prod *= ipow(f[j].p, f[j].e);
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(Valuation, Examples)
{
  EXPECT_EQ(padicValuation(2, 24), 3u);
  EXPECT_EQ(padicValuation(3, 0), kInfiniteValuation);
  EXPECT_EQ(padicValuation(5, 10), 1u);
  EXPECT_EQ(padicValuation(7, -49), 2u);
  EXPECT_THROW(padicValuation(4, 8), DomainError);
}

TEST(Height, Examples)
{
  BigRat prec = dyadic(30);
  DirectedLog h = height(BigRat(3, 2), prec);
  DirectedLog l3 = logEnclosure(3, prec);
  EXPECT_LE(h.lo, l3.hi);
  EXPECT_GE(h.hi, l3.lo);
  DirectedLog one = height(1, prec);
  EXPECT_EQ(one.lo, 0);
  EXPECT_EQ(one.hi, 0);
  DirectedLog h7 = height(BigRat(-7, 4), prec);
  DirectedLog l7 = logEnclosure(7, prec);
  EXPECT_LE(h7.lo, l7.hi);
  EXPECT_GE(h7.hi, l7.lo);
  EXPECT_THROW(height(0, prec), DomainError);
}

TEST(Height, SubadditivitySpotChecks)
{
  BigRat prec = dyadic(40);
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i)
  {
    BigRat a(static_cast<int>(rng() % 50) + 1, static_cast<int>(rng() % 50) + 1);
    BigRat b(-static_cast<int>(rng() % 50) - 1, static_cast<int>(rng() % 50) + 1);
    a.canonicalize();
    b.canonicalize();
    EXPECT_LE(height(a * b, prec).hi,
              height(a, prec).hi + height(b, prec).hi + prec * 4);
  }
}

TEST(LogEnclosure, Basics)
{
  DirectedLog one = logEnclosure(1, dyadic(10));
  EXPECT_EQ(one.lo, 0);
  EXPECT_EQ(one.hi, 0);

  BigRat prec(1, 1000000);
  DirectedLog l2 = logEnclosure(2, prec);
  EXPECT_LE(l2.width(), prec);
  DirectedLog ref = ln2Reference(80);
  EXPECT_LE(l2.lo, ref.hi);
  EXPECT_GE(l2.hi, ref.lo);
  EXPECT_LT(l2.lo, BigRat(6931472, 10000000));
  EXPECT_GT(l2.hi, BigRat(6931471, 10000000));
}

TEST(LogEnclosure, RatioOfEightAndTwo)
{
  DirectedLog r = logEnclosure(8, dyadic(40)) / logEnclosure(2, dyadic(40));
  EXPECT_TRUE(r.contains(3));
  EXPECT_LT(r.width(), dyadic(30));
}

TEST(LogEnclosure, AgreesWithReferenceOnRationals)
{
  // ln(p/q) = ln p - ln q, each checked through powers of two
  DirectedLog ref = ln2Reference(120);
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i)
  {
    long e = static_cast<long>(rng() % 200) - 100;
    BigRat x = dyadic(-e);
    DirectedLog got = logEnclosure(x, dyadic(50));
    DirectedLog want = ref * BigRat(e);
    EXPECT_LE(got.lo, want.hi);
    EXPECT_GE(got.hi, want.lo);
    EXPECT_LE(got.width(), dyadic(50));
  }
  // ln(x) + ln(1/x) must enclose zero
  for (int i = 0; i < 200; ++i)
  {
    BigRat x(static_cast<int>(rng() % 100000) + 1, static_cast<int>(rng() % 1000) + 1);
    x.canonicalize();
    DirectedLog s = logEnclosure(x, dyadic(60)) + logEnclosure(1 / x, dyadic(60));
    EXPECT_TRUE(s.contains(0));
  }
}

TEST(Matveev, UnitExample)
{
  BigRat L = matveevBound({2}, {3});
  double v = L.get_d();
  EXPECT_LT(v, -1.64e6);
  EXPECT_GT(v, -1.66e6);
  // must not exceed -1.4 * 30^4 * (1 + ln 3) * ln 2 computed from lower bounds
  BigRat lower = BigRat(14, 10) * 810000 *
                 (1 + logEnclosure(3, dyadic(40)).lo) *
                 logEnclosure(2, dyadic(40)).lo;
  EXPECT_LE(L, -lower);
}

TEST(Matveev, MonotoneInB)
{
  EXPECT_LT(matveevBound({2}, {300}), matveevBound({2}, {3}));
  EXPECT_LT(matveevBound({2}, {1}), 0);
  EXPECT_THROW(matveevBound({}, {}), DomainError);
}

TEST(Matveev, BoundHoldsOnRandomForms)
{
  std::mt19937 rng(2024);
  int checked = 0;
  while (checked < 200)
  {
    int k = static_cast<int>(rng() % 3) + 1;
    std::vector<BigRat> gs;
    std::vector<BigInt> bs;
    BigRat lambda = 1;
    for (int i = 0; i < k; ++i)
    {
      BigRat g(static_cast<int>(rng() % 9) + 1, static_cast<int>(rng() % 9) + 1);
      if (rng() % 4 == 0) g = -g;
      g.canonicalize();
      int b = static_cast<int>(rng() % 41) - 20;
      gs.push_back(g);
      bs.push_back(b);
      BigRat p = 1;
      for (int j = 0; j < std::abs(b); ++j) p *= g;
      lambda *= b >= 0 ? p : 1 / p;
    }
    lambda -= 1;
    if (lambda == 0) continue;
    ++checked;
    DirectedLog lg = logEnclosure(abs(lambda), dyadic(20));
    EXPECT_GT(lg.lo, matveevBound(gs, bs));
  }
}

TEST(SelectPrime, Examples)
{
  EXPECT_EQ(selectPrime(2, 3), 3);
  EXPECT_EQ(selectPrime(12, 18), 3);
  EXPECT_EQ(selectPrime(18, 12), 2);
  EXPECT_THROW(selectPrime(4, 8), DomainError);
}

TEST(SelectPrime, ReverifiedAtHigherPrecision)
{
  for (int a = 2; a < 40; ++a)
    for (int b = 2; b < 40; ++b)
    {
      BigInt p;
      try
      {
        p = selectPrime(a, b);
      }
      catch (const DomainError&)
      {
        continue;
      }
      unsigned long va = padicValuation(p, a), vb = padicValuation(p, b);
      ASSERT_GT(vb, 0u);
      DirectedLog diff = lnBits(a, 400) * BigRat(vb) - lnBits(b, 400) * BigRat(va);
      EXPECT_GT(diff.lo, 0) << a << " " << b;
    }
}
