#include <gtest/gtest.h>

#include <random>

#include "powpres/textio.h"

using namespace powpres;

namespace {

void expectRoundTrip(const std::string& text)
{
  ParsedFormula p = parseFormula(text);
  std::string printed = printFormula(*p.formula, p.syms);
  Symbols again = p.syms;
  FormulaPtr q = parseFormula(printed, again);
  EXPECT_TRUE(structurallyEqual(*p.formula, *q)) << text << "\n" << printed;
  EXPECT_EQ(again.size(), p.syms.size());
}

}  // namespace

TEST(Parse, ExistsPowersAndEquation)
{
  ParsedFormula p = parseFormula("exists x y . powA(x) & powB(y) & x = y + 1");
  ASSERT_EQ(p.formula->kind, Formula::Kind::Exists);
  EXPECT_EQ(p.formula->vars.size(), 2u);
  const Formula& body = *p.formula->kids[0];
  ASSERT_EQ(body.kind, Formula::Kind::And);
  ASSERT_EQ(body.kids.size(), 3u);
  EXPECT_EQ(body.kids[0]->atom.kind, Atom::Kind::Power);
  EXPECT_EQ(body.kids[1]->atom.tag, BaseTag::B);
  VarId x = p.syms.lookup("x"), y = p.syms.lookup("y");
  LinearTerm want = LinearTerm::var(x) - LinearTerm::var(y) - LinearTerm(1);
  EXPECT_EQ(body.kids[2]->atom.term, want);
  EXPECT_EQ(body.kids[2]->atom.rel, Rel::Eq);
}

TEST(Parse, NegatedPower)
{
  ParsedFormula p = parseFormula("exists x . !(powA(x))");
  const Formula& body = *p.formula->kids[0];
  ASSERT_EQ(body.kind, Formula::Kind::Not);
  EXPECT_EQ(body.kids[0]->atom.kind, Atom::Kind::Power);
}

TEST(Parse, FreeVariablesAreAccepted)
{
  ParsedFormula p = parseFormula("exists n . 15*a - 5*b + c = 8");
  EXPECT_EQ(freeVars(*p.formula).size(), 3u);
}

TEST(Parse, BigIntegers)
{
  ParsedFormula p =
      parseFormula("x = 123456789012345678901234567890123456789");
  EXPECT_EQ(p.formula->atom.term.constant(),
            BigInt("-123456789012345678901234567890123456789"));
}

TEST(Parse, ErrorsCarrySpans)
{
  const std::vector<std::string> bad = {
      "exists x . x + ",   "exists . x ==", "powA(x",  "x < 3 &",
      "exists x . x # 2",  "2*3 = x",       "x = y)",  "",
      "exists powA . x=1", "3*powA = 1",    "(x = 1",  "x = 1 | | y = 2"};
  for (const auto& s : bad)
  {
    try
    {
      parseFormula(s);
      ADD_FAILURE() << "accepted: " << s;
    }
    catch (const ParseError& e)
    {
      EXPECT_LE(e.span().start, e.span().end);
      EXPECT_LE(e.span().end, s.size()) << s;
      EXPECT_GE(e.span().line, 1u);
    }
  }
}

TEST(Parse, SpanLineColumn)
{
  try
  {
    parseFormula("x = 1 &\n  y $ 2");
    FAIL();
  }
  catch (const ParseError& e)
  {
    EXPECT_EQ(e.span().line, 2u);
    EXPECT_EQ(e.span().column, 5u);
    EXPECT_EQ(e.span().start, 12u);
  }
}

TEST(Print, ExamplesRoundTrip)
{
  expectRoundTrip("exists x y . powA(x) & powB(y) & x = y + 1");
  expectRoundTrip("exists x . !(powA(x))");
  expectRoundTrip("exists n . 15*a - 5*b + c = 8");
}

TEST(Print, EmptyExists)
{
  Symbols s;
  EXPECT_EQ(printFormula(*mkExists({}, mkAnd({})), s), "exists . true");
  expectRoundTrip("exists . true");
  expectRoundTrip("false");
}

TEST(Print, NestedNotGolden)
{
  ParsedFormula p = parseFormula("!(!(!(x > 0 | y = 2)) & powB(x - 3))");
  EXPECT_EQ(printFormula(*p.formula, p.syms),
            "!(!!(x > 0 | y = 2) & powB(x - 3))");
  expectRoundTrip("!(!(!(x > 0 | y = 2)) & powB(x - 3))");
}

TEST(Print, TermsAndConstants)
{
  ParsedFormula p = parseFormula("3*x - y + 2 <= -1 - x");
  EXPECT_EQ(printFormula(*p.formula, p.syms), "4*x - y <= -3");
  ParsedFormula q = parseFormula("5 > 7");
  EXPECT_EQ(printFormula(*q.formula, q.syms), "0 > 2");
}

namespace {

FormulaPtr randomFormula(std::mt19937& rng, int depth, const std::vector<VarId>& vars)
{
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  auto randTerm = [&]() {
    LinearTerm t(BigInt(pick(21) - 10));
    for (VarId v : vars)
      if (pick(2)) t.addCoeff(v, BigInt(pick(11) - 5));
    return t;
  };
  int choice = depth <= 0 ? pick(2) : pick(8);
  switch (choice)
  {
    case 0: return mkCmp(randTerm(), static_cast<Rel>(pick(6)));
    case 1: return mkPower(randTerm(), pick(2) ? BaseTag::A : BaseTag::B);
    case 2:
    case 3:
    {
      std::vector<FormulaPtr> kids;
      int n = pick(4);
      for (int i = 0; i < n; ++i) kids.push_back(randomFormula(rng, depth - 1, vars));
      return choice == 2 ? mkAnd(kids) : mkOr(kids);
    }
    case 4:
    case 5: return mkNot(randomFormula(rng, depth - 1, vars));
    default:
    {
      std::vector<VarId> qs;
      for (VarId v : vars)
        if (pick(2)) qs.push_back(v);
      auto body = randomFormula(rng, depth - 1, vars);
      return pick(2) ? mkExists(qs, body) : mkForall(qs, body);
    }
  }
}

}  // namespace

TEST(Print, FuzzRoundTrip)
{
  std::mt19937 rng(12345);
  Symbols syms;
  std::vector<VarId> vars = {syms.intern("x"), syms.intern("y"),
                             syms.intern("z_1")};
  for (int i = 0; i < 2000; ++i)
  {
    FormulaPtr f = randomFormula(rng, 4, vars);
    std::string text = printFormula(*f, syms);
    Symbols s2 = syms;
    FormulaPtr g = parseFormula(text, s2);
    ASSERT_TRUE(structurallyEqual(*f, *g)) << text;
  }
}

TEST(Minsky, ParseWithHaltLine)
{
  MinskyMachine m = parseMinsky("INC c1 GOTO 2\nTSTDEC c2 ZERO 3 ELSE 1\nHALT\n");
  EXPECT_EQ(m.R, 3);
  ASSERT_EQ(m.instrs.size(), 2u);
  EXPECT_EQ(m.instrs[1].kind, MinskyInstr::Kind::TstDec);
  EXPECT_EQ(m.instrs[1].counter, 2);
  EXPECT_EQ(m.instrs[1].elseTarget, 1);
  EXPECT_EQ(parseMinsky(printMinsky(m)).R, 3);
}

TEST(Minsky, ImplicitAndBlankHalt)
{
  EXPECT_EQ(parseMinsky("INC c1 GOTO 2").R, 2);
  EXPECT_EQ(parseMinsky("INC c1 GOTO 2\n\n").R, 2);
  EXPECT_EQ(parseMinsky("HALT\n").R, 1);
  EXPECT_EQ(parseMinsky("INC c2 GOTO 1 # loop\nHALT # done").R, 2);
}

TEST(Minsky, Rejects)
{
  EXPECT_THROW(parseMinsky("INC c3 GOTO 1\nHALT"), std::invalid_argument);
  EXPECT_THROW(parseMinsky("INC c1 GOTO 5\nHALT"), std::invalid_argument);
  EXPECT_THROW(parseMinsky("JMP 1\nHALT"), std::invalid_argument);
  EXPECT_THROW(parseMinsky("TSTDEC c1 ZERO 1 ELSE 0\nHALT"),
               std::invalid_argument);
}
