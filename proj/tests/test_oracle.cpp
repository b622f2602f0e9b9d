#include <gtest/gtest.h>

#include <chrono>

#include "powpres/driver.h"
#include "powpres/oracle.h"
#include "powpres/textio.h"
#include "sentence_gen.h"

using namespace powpres;

TEST(SemiDecide, Examples)
{
  ParsedFormula p = parseFormula("exists x . powA(x) & x = 8");
  auto m = semiDecide(p.formula, 2, 3, 10, 10);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->at(p.syms.lookup("x")), 8);

  // lexicographically first exponent triple of the three-power equation
  ParsedFormula q =
      parseFormula("exists a b c . powB(a) & powB(b) & powA(c) & 15 * a - 5 * b + c = 8");
  m = semiDecide(q.formula, 2, 3, 16, 0);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->at(q.syms.lookup("a")), 1);
  EXPECT_EQ(m->at(q.syms.lookup("b")), 3);
  EXPECT_EQ(m->at(q.syms.lookup("c")), 8);

  ParsedFormula r = parseFormula("exists x . powA(x) & powB(x) & x > 1");
  EXPECT_FALSE(semiDecide(r.formula, 2, 3, 12, 5));

  ParsedFormula s = parseFormula("exists x . x > 3 & x < 5");
  m = semiDecide(s.formula, 2, 3, 5, 10);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->at(s.syms.lookup("x")), 4);
}

TEST(SemiDecide, RejectsUniversal)
{
  ParsedFormula p = parseFormula("forall x . x > 0");
  EXPECT_THROW(semiDecide(p.formula, 2, 3, 3, 3), std::invalid_argument);
}

TEST(BoxSolutions, EqSeven)
{
  auto sols = enumerateBoxSolutions({3, 3, 2}, {}, {}, {{15, -5, 1}}, {8}, 16);
  std::vector<Exponents> want{{0, 3, 7}, {1, 8, 15}};
  for (unsigned long t = 0; t <= 15; ++t) want.push_back({t, t + 1, 3});
  std::sort(want.begin(), want.end());
  EXPECT_EQ(sols, want);
}

TEST(BoxSolutions, SmallCases)
{
  EXPECT_EQ(enumerateBoxSolutions({2, 3}, {}, {}, {{1, -1}}, {0}, 10),
            (std::vector<Exponents>{{0, 0}}));

  auto sols = enumerateBoxSolutions({2, 2}, {}, {}, {{3, -1}}, {4}, 20);
  EXPECT_EQ(sols, (std::vector<Exponents>{{1, 1}, {2, 3}}));
  // second, separately written loop
  std::vector<Exponents> again;
  for (unsigned long a = 0; a <= 20; ++a)
    for (unsigned long b = 0; b <= 20; ++b)
      if (3 * (1L << a) - (1L << b) == 4) again.push_back({a, b});
  EXPECT_EQ(sols, again);

  EXPECT_EQ(enumerateBoxSolutions({}, {}, {}, {}, {}, 3), (std::vector<Exponents>{{}}));
}

TEST(DecideVsOracle, RandomSentences)
{
  std::mt19937 rng(2024);
  SolveOptions opts;
  opts.budget = 20000;
  opts.kroneckerSteps = 200000;
  int sat = 0, unsat = 0, unknown = 0;
  for (int i = 0; i < 60; ++i)
  {
    std::string text = testgen::sentence(rng);
    ParsedFormula p = parseFormula(text);
    auto w = semiDecide(p.formula, 2, 3, 8, 8);
    DecideResult r = decide(p.formula, p.syms, 2, 3, opts);
    if (w) EXPECT_EQ(r.verdict, Verdict::Sat) << text;
    if (r.verdict == Verdict::Unsat) EXPECT_FALSE(w) << text;
    if (r.verdict == Verdict::Sat)
      EXPECT_TRUE(evalFormula(*existentialMatrix(p.formula), r.model, 2, 3)) << text;
    sat += r.verdict == Verdict::Sat;
    unsat += r.verdict == Verdict::Unsat;
    unknown += r.verdict == Verdict::Unknown;
  }
  RecordProperty("sat", sat);
  RecordProperty("unsat", unsat);
  RecordProperty("unknown", unknown);
  std::printf("sat %d unsat %d unknown %d\n", sat, unsat, unknown);
}
