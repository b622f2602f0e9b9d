#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "powpres/linarith.h"
#include "powpres/textio.h"

using namespace powpres;

namespace {

bool hasNot(const Formula& f)
{
  if (f.kind == Formula::Kind::Not) return true;
  for (const auto& k : f.kids)
    if (hasNot(*k)) return true;
  return false;
}

std::string show(const FormulaPtr& f, const Symbols& s) { return printFormula(*f, s); }

}  // namespace

TEST(Negations, ComparisonComplement)
{
  ParsedFormula p = parseFormula("!(x > 0)");
  auto g = normalizeNegations(p.formula, p.syms, 2, 3);
  EXPECT_EQ(show(g, p.syms), "x < 0 | x = 0");
  ParsedFormula q = parseFormula("!(x = 0)");
  EXPECT_EQ(show(normalizeNegations(q.formula, q.syms, 2, 3), q.syms),
            "x > 0 | x < 0");
}

TEST(Negations, PowerComplement)
{
  ParsedFormula p = parseFormula("!powA(x)");
  auto g = normalizeNegations(p.formula, p.syms, 2, 3);
  EXPECT_EQ(show(g, p.syms),
            "x < 1 | (exists u_1 . powA(u_1) & -x + u_1 < 0 & x - 2*u_1 < 0)");
}

TEST(Negations, DoubleNegation)
{
  ParsedFormula p = parseFormula("!!(x = 0)");
  auto g = normalizeNegations(p.formula, p.syms, 2, 3);
  EXPECT_TRUE(structurallyEqual(*g, *parseFormula("x = 0", p.syms)));
}

TEST(Negations, DeMorganAndNoNotLeft)
{
  ParsedFormula p = parseFormula(
      "!(powB(x - 1) & !(y <= 2 | !(x != y))) | !(true) | !(exists z . z = x)");
  EXPECT_THROW(normalizeNegations(p.formula, p.syms, 2, 3), std::invalid_argument);
  ParsedFormula q = parseFormula("!(powB(x - 1) & !(y <= 2 | !(x != y))) | !false");
  auto g = normalizeNegations(q.formula, q.syms, 2, 3);
  EXPECT_FALSE(hasNot(*g));
}

TEST(Negations, EquisatisfiableOnSmallModels)
{
  // !powB(x) holds iff the rewritten formula has a witness u
  ParsedFormula p = parseFormula("!powB(x)");
  auto g = normalizeNegations(p.formula, p.syms, 2, 3);
  auto tagged = toPowerTaggedDnf(g, p.syms);
  VarId x = p.syms.lookup("x");
  for (int xv = -5; xv < 100; ++xv)
  {
    bool want = !isPowerOf(xv, 3);
    bool got = false;
    for (const auto& d : tagged.disjuncts)
    {
      std::vector<VarId> others;
      for (const auto& [v, t] : d.powerVars)
        if (v != x) others.push_back(v);
      for (int uv = 0; uv < 200 && !got; ++uv)
      {
        Model m{{x, xv}};
        for (VarId v : others) m[v] = uv;
        bool ok = true;
        for (const auto& c : d.comparisons) ok = ok && relHolds(evalTerm(c.form, m), c.rel);
        for (const auto& [v, t] : d.powerVars) ok = ok && isPowerOf(m[v], t == BaseTag::A ? 2 : 3);
        got = ok;
        if (others.empty()) break;
      }
    }
    EXPECT_EQ(got, want) << xv;
  }
}

TEST(TaggedDnf, FreshVariableForCompoundTerm)
{
  ParsedFormula p = parseFormula("powA(x + 1)");
  auto t = toPowerTaggedDnf(p.formula, p.syms);
  ASSERT_EQ(t.disjuncts.size(), 1u);
  const auto& d = t.disjuncts[0];
  ASSERT_EQ(d.powerVars.size(), 1u);
  VarId y = d.powerVars[0].first;
  EXPECT_EQ(p.syms.name(y).substr(0, 2), "y_");
  ASSERT_EQ(d.comparisons.size(), 1u);
  EXPECT_EQ(d.comparisons[0].rel, Rel::Eq);
  VarId x = p.syms.lookup("x");
  LinearTerm want = LinearTerm::var(y) - LinearTerm::var(x) - LinearTerm(1);
  EXPECT_TRUE(d.comparisons[0].form == want || d.comparisons[0].form == -want);
}

TEST(TaggedDnf, TaggedInputIsFixedPoint)
{
  ParsedFormula p = parseFormula("powA(x) & powB(y) & x - y > 0");
  size_t before = p.syms.size();
  auto t = toPowerTaggedDnf(p.formula, p.syms);
  EXPECT_EQ(p.syms.size(), before);
  ASSERT_EQ(t.disjuncts.size(), 1u);
  EXPECT_EQ(t.disjuncts[0].powerVars.size(), 2u);
  EXPECT_EQ(t.disjuncts[0].comparisons.size(), 1u);
}

TEST(TaggedDnf, DoubleTagGetsFreshVariable)
{
  ParsedFormula p = parseFormula("powA(x) & powB(x)");
  auto t = toPowerTaggedDnf(p.formula, p.syms);
  ASSERT_EQ(t.disjuncts.size(), 1u);
  EXPECT_EQ(t.disjuncts[0].powerVars.size(), 2u);
  EXPECT_EQ(t.disjuncts[0].comparisons.size(), 1u);
}

TEST(TaggedDnf, Distribution)
{
  ParsedFormula p = parseFormula("(x > 1 | x < 0) & (y = 2 | x != y)");
  auto t = toPowerTaggedDnf(p.formula, p.syms);
  EXPECT_EQ(t.disjuncts.size(), 6u);
  for (const auto& d : t.disjuncts)
    for (const auto& c : d.comparisons)
      EXPECT_TRUE(c.rel == Rel::Gt || c.rel == Rel::Eq);
}

namespace {

struct Sys
{
  Symbols syms;
  std::vector<Comparison> conj;
  VarId var(const std::string& n) { return syms.intern(n); }
  void add(const std::string& text)
  {
    FormulaPtr f = parseFormula(text, syms);
    conj.push_back({f->atom.term, f->atom.rel});
  }
};

}  // namespace

TEST(Cooper, Parity)
{
  Sys s;
  VarId x = s.var("x"), y = s.var("y");
  s.add("y = 2*x");
  GuardedSystem g = eliminateIntegerVars(s.conj, {x});
  ASSERT_EQ(g.disjuncts.size(), 1u);
  const auto& d = g.disjuncts[0];
  EXPECT_TRUE(d.comparisons.empty());
  ASSERT_EQ(d.congruences.size(), 1u);
  EXPECT_EQ(d.congruences[0].modulus, 2);
  EXPECT_EQ(d.congruences[0].form, LinearTerm::var(y));
  for (int v = -6; v <= 6; ++v)
  {
    Model m{{y, v}};
    EXPECT_EQ(holds(g, m), v % 2 == 0);
    if (v % 2 == 0)
    {
      recoverWitness(d, m);
      EXPECT_EQ(m[x] * 2, v);
    }
  }
}

TEST(Cooper, StrictChain)
{
  Sys s;
  VarId x = s.var("x"), y = s.var("y");
  s.add("x > 0");
  s.add("y > x");
  GuardedSystem g = eliminateIntegerVars(s.conj, {x});
  ASSERT_EQ(g.disjuncts.size(), 1u);
  ASSERT_EQ(g.disjuncts[0].comparisons.size(), 1u);
  EXPECT_EQ(g.disjuncts[0].comparisons[0].form, LinearTerm::var(y) - LinearTerm(1));
  EXPECT_EQ(g.disjuncts[0].comparisons[0].rel, Rel::Gt);
}

TEST(Cooper, TwoResidues)
{
  Sys s;
  VarId x = s.var("x"), y1 = s.var("y1"), y2 = s.var("y2");
  s.add("y1 = 3*x + 1");
  s.add("y2 = 3*x + 2");
  GuardedSystem g = eliminateIntegerVars(s.conj, {x});
  for (int a = -20; a <= 20; ++a)
    for (int b = -20; b <= 20; ++b)
    {
      bool want = false;
      for (int xv = -50; xv <= 50; ++xv) want = want || (a == 3 * xv + 1 && b == 3 * xv + 2);
      bool got = holds(g, {{y1, a}, {y2, b}});
      bool direct = posMod(a, 3) == 1 && b == a + 1;
      EXPECT_EQ(got, want);
      EXPECT_EQ(direct, want);
    }
}

TEST(Cooper, UnboundedWitness)
{
  Sys s;
  VarId x = s.var("x"), y = s.var("y");
  s.add("3*x < y");
  GuardedSystem g = eliminateIntegerVars(s.conj, {x});
  for (int v = -10; v <= 10; ++v)
  {
    Model m{{y, v}};
    ASSERT_TRUE(holds(g, m));
    for (const auto& d : g.disjuncts)
      if (holds(d, m))
      {
        recoverWitness(d, m);
        EXPECT_LT(3 * m[x], v);
        break;
      }
  }
}

// Random systems against brute force in machine integers.
TEST(Cooper, ProjectionMatchesBruteForce)
{
  std::mt19937 rng(99);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
  const int yBox = 30, xBox = 12;
  int systems = 0;
  while (systems < 60)
  {
    int k = pick(1, 3), m = pick(1, 2), r = pick(1, 3);
    if (k == 3 && m == 2) m = 1;
    struct Row
    {
      std::vector<int> cx, cy;
      int c;
      Rel rel;
    };
    std::vector<Row> rows;
    Symbols syms;
    std::vector<VarId> xs, ys;
    for (int i = 0; i < k; ++i) xs.push_back(syms.intern("x" + std::to_string(i)));
    for (int i = 0; i < m; ++i) ys.push_back(syms.intern("y" + std::to_string(i)));
    std::vector<Comparison> conj;
    const Rel rels[] = {Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt};
    for (int i = 0; i < r; ++i)
    {
      Row row;
      LinearTerm t;
      for (int j = 0; j < k; ++j)
      {
        row.cx.push_back(pick(-5, 5));
        t.setCoeff(xs[j], row.cx.back());
      }
      for (int j = 0; j < m; ++j)
      {
        row.cy.push_back(pick(-5, 5));
        t.setCoeff(ys[j], row.cy.back());
      }
      row.c = pick(-10, 10);
      row.rel = rels[pick(0, 4)];
      t.setConstant(row.c);
      rows.push_back(row);
      conj.push_back({t, row.rel});
    }
    ++systems;
    GuardedSystem g = eliminateIntegerVars(conj, std::set<VarId>(xs.begin(), xs.end()));

    auto rowHolds = [&](const Row& row, const std::vector<int>& xv, const std::vector<int>& yv) {
      long v = row.c;
      for (int j = 0; j < k; ++j) v += long(row.cx[j]) * xv[j];
      for (int j = 0; j < m; ++j) v += long(row.cy[j]) * yv[j];
      return relHolds(v, row.rel);
    };
    std::vector<int> yv(m, -yBox);
    for (;;)
    {
      bool brute = false;
      std::vector<int> xv(k, -xBox);
      for (;;)
      {
        bool ok = true;
        for (const auto& row : rows) ok = ok && rowHolds(row, xv, yv);
        if (ok)
        {
          brute = true;
          break;
        }
        int j = 0;
        while (j < k && xv[j] == xBox) xv[j++] = -xBox;
        if (j == k) break;
        ++xv[j];
      }
      Model model;
      for (int j = 0; j < m; ++j) model[ys[j]] = yv[j];
      const GuardedConjunct* hit = nullptr;
      for (const auto& d : g.disjuncts)
        if (holds(d, model))
        {
          hit = &d;
          break;
        }
      if (brute) ASSERT_TRUE(hit) << "missed projection point";
      if (hit)
      {
        recoverWitness(*hit, model);
        for (size_t i = 0; i < conj.size(); ++i)
          ASSERT_TRUE(relHolds(evalTerm(conj[i].form, model), conj[i].rel));
      }
      int j = 0;
      while (j < m && yv[j] == yBox) yv[j++] = -yBox;
      if (j == m) break;
      ++yv[j];
    }
  }
}
