#include <gtest/gtest.h>

#include <random>

#include "powpres/ineqsolver.h"
#include "powpres/numth.h"

using namespace powpres;

namespace {

BigInt power(const BigInt& g, unsigned long e)
{
  BigInt p = 1;
  for (unsigned long i = 0; i < e; ++i) p *= g;
  return p;
}

bool holds(const std::vector<BigInt>& z, const Matrix& A, const Row& b, const Exponents& n)
{
  for (size_t j = 0; j < A.size(); ++j)
  {
    BigInt s = 0;
    for (size_t i = 0; i < z.size(); ++i) s += A[j][i] * power(z[i], n[i]);
    if (!(s > b[j])) return false;
  }
  return true;
}

std::optional<Exponents> boxSearch(const std::vector<BigInt>& z, const Matrix& A,
                                   const Row& b, unsigned long box)
{
  size_t l = z.size();
  Exponents n(l, 0);
  for (;;)
  {
    if (holds(z, A, b, n)) return n;
    size_t j = 0;
    while (j < l && n[j] == box) n[j++] = 0;
    if (j == l) return std::nullopt;
    ++n[j];
  }
}

std::optional<Exponents> boxSearch(const StrictSystem& s, unsigned long box)
{
  return boxSearch(s.z, s.A, Row(s.A.size(), 0), box);
}

// first n1 >= min1 with some n2 >= min2 inside the interval, smallest n2 for it
std::optional<KroneckerHit> scan(long alpha, long beta, const BigRat& lo, const BigRat& hi,
                                 unsigned long min1, unsigned long min2, unsigned long cap)
{
  for (unsigned long n1 = min1; n1 < cap; ++n1)
    for (unsigned long n2 = min2; n2 < cap; ++n2)
    {
      BigRat r(power(alpha, n1), power(beta, n2));
      r.canonicalize();
      if (r > lo && r < hi) return KroneckerHit{n1, n2};
    }
  return std::nullopt;
}

Row randomRow(std::mt19937& rng, size_t l, int span)
{
  Row r(l);
  for (auto& x : r) x = static_cast<int>(rng() % (2 * span + 1)) - span;
  return r;
}

}  // namespace

TEST(Kronecker, Examples)
{
  auto h = kroneckerSearch(2, 3, 1, BigRat(2));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->n1, 2u);
  EXPECT_EQ(h->n2, 1u);

  // 2^11 / 3^7 = 2048 / 2187 is the first ratio in (9/10, 1)
  h = kroneckerSearch(2, 3, BigRat(9, 10), BigRat(1));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->n1, 11u);
  EXPECT_EQ(h->n2, 7u);

  h = kroneckerSearch(2, 3, BigRat(1, 2), BigRat(4));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->n1, 0u);
  EXPECT_EQ(h->n2, 0u);

  EXPECT_THROW(kroneckerSearch(2, 3, 2, BigRat(1)), DomainError);
  EXPECT_THROW(kroneckerSearch(2, 3, 0, BigRat(-1)), DomainError);
  // an unbounded interval is met by the first n1 that clears lo
  h = kroneckerSearch(3, 2, 100, std::nullopt, 0, 2);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->n1, 6u);  // 729 / 4 > 100, 243 / 4 < 100
  EXPECT_EQ(h->n2, 2u);
}

TEST(Kronecker, AgreesWithScan)
{
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial)
  {
    long alpha = rng() % 2 ? 2 : 5, beta = 3;
    BigRat lo(1 + rng() % 40, 10 + rng() % 10);
    BigRat hi = lo + BigRat(1, 2 + rng() % 12);
    lo.canonicalize();
    hi.canonicalize();
    unsigned long min1 = rng() % 4, min2 = rng() % 4;
    auto want = scan(alpha, beta, lo, hi, min1, min2, 60);
    auto got = kroneckerSearch(alpha, beta, lo, hi, min1, min2, 60 - min1);
    ASSERT_EQ(bool(want), bool(got)) << "trial " << trial;
    if (want)
    {
      EXPECT_EQ(got->n1, want->n1) << "trial " << trial;
      EXPECT_EQ(got->n2, want->n2) << "trial " << trial;
    }
  }
}

TEST(Kronecker, StepCap)
{
  // ratio never lands in a tiny window near 1 within a few steps
  EXPECT_FALSE(kroneckerSearch(2, 3, BigRat(999999, 1000000), BigRat(1000001, 1000000),
                               1, 0, 50));
}

TEST(Pumping, UnitExample)
{
  PumpingParams pp = pumpingParams({{1, 1}}, {3, 2}, {2, 1}, 10);
  EXPECT_EQ(pp.mu, BigRat(1, 9));
  EXPECT_EQ(pp.nu, BigRat(1, 2));
  EXPECT_EQ(pp.delta, BigRat(1, 36));
  EXPECT_EQ(pp.inJ, std::vector<bool>{true});

  EXPECT_EQ(pumpExtend({3, 2, 3}, {2, 1, 0}, 5, 4), (Exponents{5, 5, 3}));
  EXPECT_THROW(pumpExtend({3, 2}, {2, 1}, 2, 0), DomainError);
}

TEST(Pumping, PositiveFormsStayPositive)
{
  std::mt19937 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 20; ++trial)
  {
    std::vector<BigInt> z{3, 2, 2, 3};
    Exponents m{static_cast<unsigned long>(rng() % 4), static_cast<unsigned long>(rng() % 4),
                static_cast<unsigned long>(rng() % 4), static_cast<unsigned long>(rng() % 4)};
    std::vector<RatForm> forms;
    for (int j = 0; j < 3; ++j)
    {
      Row r = randomRow(rng, 4, 5);
      forms.push_back(RatForm(r.begin(), r.end()));
    }
    PumpingParams pp = pumpingParams(forms, z, m, BigRat(1, 1 + rng() % 5));
    auto hit = kroneckerSearch(2, 3, pp.mu - pp.delta, pp.mu + pp.delta, 0, m[0] + 1);
    ASSERT_TRUE(hit);
    Exponents n = pumpExtend(z, m, hit->n2, hit->n1);
    for (size_t j = 0; j < forms.size(); ++j)
    {
      if (!pp.inJ[j]) continue;
      BigRat s = 0;
      for (size_t i = 0; i < 4; ++i) s += forms[j][i] * BigRat(power(z[i], n[i]));
      EXPECT_GT(s, 0) << "trial " << trial << " form " << j;
      ++checked;
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(SimultApprox, Example)
{
  // target 4/3 within 1/12: 3^4 / 2^6 = 81/64
  auto s = simultApprox(2, 3, 1, BigRat(4, 3), BigRat(1, 3), BigRat(1, 8), 3);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->d, 4u);
  EXPECT_EQ(s->m, 6u);

  s = simultApprox(2, 3, 1, BigRat(4, 3), BigRat(1, 3), BigRat(1, 8), 10);
  ASSERT_TRUE(s);
  EXPECT_GT(s->d, 10u);
  BigRat r(power(3, s->d), power(2, s->m));
  r.canonicalize();
  EXPECT_LT(abs(r - BigRat(4, 3)), BigRat(1, 12));

  EXPECT_THROW(simultApprox(2, 3, 1, BigRat(4, 3), BigRat(1, 3), BigRat(1, 2), 3), DomainError);
}

TEST(Gap, ReductionExample)
{
  StrictSystem s{{2, 3, 2}, {{1, -1, 4}}};
  auto red = eliminateBoundedGap(s, 0, 2, 1, 2);
  ASSERT_EQ(red.size(), 2u);
  EXPECT_EQ(red[0].k, 1u);
  EXPECT_EQ(red[0].sys.z, (std::vector<BigInt>{3, 2}));
  EXPECT_EQ(red[0].sys.A, (Matrix{{-1, 6}}));
  EXPECT_EQ(red[1].sys.A, (Matrix{{-1, 8}}));
  EXPECT_EQ(liftGap({4, 1}, 0, 2, 2), (Exponents{3, 4, 1}));
  EXPECT_THROW(eliminateBoundedGap(s, 0, 1, 0, 1), DomainError);
}

TEST(Gap, BoxEquivalence)
{
  std::mt19937 rng(21);
  for (int trial = 0; trial < 30; ++trial)
  {
    StrictSystem s{{2, 3, 2}, {randomRow(rng, 3, 4), randomRow(rng, 3, 4)}};
    unsigned long k = rng() % 3;
    auto red = eliminateBoundedGap(s, 2, 0, k, k)[0];
    for (unsigned long x = 0; x <= 12; ++x)
      for (unsigned long y = 0; y <= 12; ++y)
      {
        Exponents n = liftGap({x, y}, 2, 0, k);
        EXPECT_EQ(n[2], n[0] + k);
        EXPECT_EQ(strictHolds(red.sys, {x, y}), strictHolds(s, n));
      }
  }
}

TEST(Inflate, ReachesThresholds)
{
  // 3^a - 2^b > 0 witnessed at (1, 1); push it above 1000
  auto w = inflateWitness({3, 2}, {{1, -1}}, {1000}, {1, 1});
  ASSERT_TRUE(w);
  EXPECT_TRUE(holds({3, 2}, {{1, -1}}, {1000}, *w));

  // a window: 2^b > 3^a and 2 * 3^a > 2^b
  Matrix A{{-1, 1}, {2, -1}};
  auto w2 = inflateWitness({3, 2}, A, {50, 50}, {1, 2});
  ASSERT_TRUE(w2);
  EXPECT_TRUE(holds({3, 2}, A, {50, 50}, *w2));

  auto w3 = inflateWitness({2, 2}, {{3, -1}}, {100}, {0, 0});
  ASSERT_TRUE(w3);
  EXPECT_TRUE(holds({2, 2}, {{3, -1}}, {100}, *w3));
}

TEST(Strict, Examples)
{
  StrictResult r = solveStrict({{2, 3}, {{-1, 2}, {1, -1}}});
  ASSERT_EQ(r.verdict, Verdict::Sat);
  EXPECT_TRUE(strictHolds({{2, 3}, {{-1, 2}, {1, -1}}}, r.witness));

  r = solveStrict({{2, 2}, {{1, -1}, {-1, 1}}});
  EXPECT_EQ(r.verdict, Verdict::Unsat);

  r = solveStrict({{2, 3}, {{0, 0}}});
  EXPECT_EQ(r.verdict, Verdict::Unsat);
  r = solveStrict({{2, 3}, {}});
  EXPECT_EQ(r.verdict, Verdict::Sat);

  EXPECT_THROW(solveStrict({{2, 4}, {{1, -1}}}), DomainError);
  EXPECT_THROW(solveStrict({{2, 3, 5}, {{1, -1, 1}}}), DomainError);
}

TEST(Strict, TwoVariablesAgainstBox)
{
  std::mt19937 rng(99);
  StrictOptions opts;
  opts.probe = false;
  for (int trial = 0; trial < 150; ++trial)
  {
    std::vector<BigInt> z{2, rng() % 2 ? BigInt(2) : BigInt(3)};
    StrictSystem s{z, {}};
    int rows = 1 + rng() % 3;
    for (int j = 0; j < rows; ++j) s.A.push_back(randomRow(rng, 2, 6));
    StrictResult r = solveStrict(s, opts);
    auto box = boxSearch(s, 25);
    if (box) EXPECT_NE(r.verdict, Verdict::Unsat) << "trial " << trial;
    if (r.verdict == Verdict::Unsat) EXPECT_FALSE(box) << "trial " << trial;
    if (z[1] == 2) EXPECT_NE(r.verdict, Verdict::Unknown);
  }
}

TEST(Strict, SingleBaseAgainstBox)
{
  std::mt19937 rng(4);
  StrictOptions opts;
  opts.probe = false;
  for (int trial = 0; trial < 80; ++trial)
  {
    size_t l = 3 + rng() % 2;
    StrictSystem s{std::vector<BigInt>(l, 2), {}};
    int rows = 1 + rng() % 3;
    for (int j = 0; j < rows; ++j) s.A.push_back(randomRow(rng, l, 4));
    StrictResult r = solveStrict(s, opts);
    EXPECT_NE(r.verdict, Verdict::Unknown) << "trial " << trial;
    auto box = boxSearch(s, l == 3 ? 9 : 6);
    if (box) EXPECT_EQ(r.verdict, Verdict::Sat) << "trial " << trial;
    if (r.verdict == Verdict::Unsat) EXPECT_FALSE(box) << "trial " << trial;
  }
}

TEST(Strict, MixedThreeVariables)
{
  std::mt19937 rng(12);
  StrictOptions opts;
  opts.probe = false;
  opts.kroneckerSteps = 20000;
  // collisions of different bases bring constants in; a box search suffices here
  opts.affine = [](const std::vector<BigInt>& z, const Matrix& A, const Row& b) {
    auto w = boxSearch(z, A, b, 12);
    if (w) return StrictResult{Verdict::Sat, *w};
    return StrictResult{Verdict::Unknown, {}};
  };
  int decided = 0;
  for (int trial = 0; trial < 60; ++trial)
  {
    StrictSystem s{{2, 3, rng() % 2 ? BigInt(2) : BigInt(3)}, {}};
    int rows = 1 + rng() % 3;
    for (int j = 0; j < rows; ++j) s.A.push_back(randomRow(rng, 3, 4));
    StrictResult r = solveStrict(s, opts);
    auto box = boxSearch(s, 10);
    if (box) EXPECT_NE(r.verdict, Verdict::Unsat) << "trial " << trial;
    if (r.verdict == Verdict::Unsat) EXPECT_FALSE(box) << "trial " << trial;
    decided += r.verdict != Verdict::Unknown;
  }
  EXPECT_GE(decided, 45);
}

TEST(Strict, WindowNeedsLargeExponents)
{
  // 0 < 3^b - 2^a < 3^b / 20 has no small solution
  StrictSystem s{{2, 3}, {{-1, 1}, {20, -19}}};
  StrictResult r = solveStrict(s);
  ASSERT_EQ(r.verdict, Verdict::Sat);
  EXPECT_GT(r.witness[0], 5u);
}

TEST(Strict, EqualSlopesTopPair)
{
  // 3^b + 3^c < 2^a < 3^b + 2 * 3^c
  StrictOptions opts;
  opts.probe = false;
  StrictSystem s{{2, 3, 3}, {{1, -1, -1}, {-1, 1, 2}}};
  StrictResult r = solveStrict(s, opts);
  ASSERT_EQ(r.verdict, Verdict::Sat);
  EXPECT_TRUE(strictHolds(s, r.witness));

  // 3^b < 2^a < 3^b + 3^c - 3^d, four powers
  StrictSystem t{{2, 3, 3, 3}, {{1, -1, 0, 0}, {-1, 1, 1, -1}}};
  r = solveStrict(t, opts);
  ASSERT_EQ(r.verdict, Verdict::Sat);
  EXPECT_TRUE(strictHolds(t, r.witness));
}
