#include "powpres/reductions.h"

#include <algorithm>
#include <stdexcept>

#include "powpres/numth.h"

namespace powpres {

namespace {

LinearTerm V(VarId v) { return LinearTerm::var(v); }

FormulaPtr lt(const LinearTerm& a, const LinearTerm& b) { return mkCmp(a - b, Rel::Lt); }
FormulaPtr le(const LinearTerm& a, const LinearTerm& b) { return mkCmp(a - b, Rel::Le); }
FormulaPtr eq(const LinearTerm& a, const LinearTerm& b) { return mkCmp(a - b, Rel::Eq); }

bool isPhi(const Formula& f)
{
  return f.kind == Formula::Kind::And && f.kids.size() == 11 &&
         f.kids[0]->kind == Formula::Kind::Atom &&
         f.kids[0]->atom.kind == Atom::Kind::Power && f.kids[0]->atom.tag == BaseTag::A &&
         f.kids[4]->kind == Formula::Kind::Atom &&
         f.kids[4]->atom.kind == Atom::Kind::Power && f.kids[4]->atom.tag == BaseTag::B;
}

bool isPsi(const Formula& f) { return f.kind == Formula::Kind::Forall && f.vars.size() == 3; }

void count(const Formula& f, int depth, SkeletonCounts& c)
{
  // depth 0: top level, 1: inside the configuration block, 2: inside psi
  if (isPsi(f))
  {
    (depth == 0 ? c.psiOuter : c.psiInner) += depth < 2 ? 1 : 0;
    for (const auto& k : f.kids) count(*k, 2, c);
    return;
  }
  if (f.kind == Formula::Kind::Forall && depth == 0)
  {
    for (const auto& k : f.kids) count(*k, 1, c);
    return;
  }
  if (isPhi(f) && depth < 2) (depth == 0 ? c.phiOuter : c.phiInner) += 1;
  for (const auto& k : f.kids) count(*k, depth, c);
}

int blocks(const Formula& f, bool positive, int lastKind, int sofar)
{
  // lastKind: -1 none, 0 existential, 1 universal
  switch (f.kind)
  {
    case Formula::Kind::Atom: return sofar;
    case Formula::Kind::Not: return blocks(*f.kids[0], !positive, lastKind, sofar);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    {
      int kind = (f.kind == Formula::Kind::Forall) == positive ? 1 : 0;
      int n = kind == lastKind ? sofar : sofar + 1;
      return blocks(*f.kids[0], positive, kind, n);
    }
    default:
    {
      int best = sofar;
      for (const auto& k : f.kids) best = std::max(best, blocks(*k, positive, lastKind, sofar));
      return best;
    }
  }
}

}  // namespace

FormulaPtr phiFormula(const SequenceParams& p, const LinearTerm& C, const LinearTerm& A,
                      const LinearTerm& B, const BigInt& alpha)
{
  return mkAnd({mkPower(C, BaseTag::A), mkPower(A, BaseTag::A), le(V(p.Al), A),
                le(A, V(p.Au)), mkPower(B, BaseTag::B), le(V(p.Bl), B), le(B, V(p.Bu)),
                le(C, B), lt(B, C * 2), le(A, B - C), lt(B - C, A * alpha)});
}

FormulaPtr psiFormula(const SequenceParams& p, const LinearTerm& B1, const LinearTerm& B2,
                      const BigInt& alpha, Symbols& syms)
{
  VarId c = syms.fresh("Cq"), a = syms.fresh("Aq"), b = syms.fresh("Bq");
  auto between = mkAnd({lt(B1, V(b)), lt(V(b), B2)});
  return mkForall({c, a, b},
                  mkImplies(between, mkNot(phiFormula(p, V(c), V(a), V(b), alpha))));
}

FormulaPtr encodeMinsky(const MinskyMachine& m, const BigInt& alpha, const BigInt& beta,
                        Symbols& syms)
{
  if (alpha < 2 || beta < 2) throw DomainError("bases must exceed 1");
  validateMinsky(m);
  const int R = m.R;
  const BigInt aR = ipow(alpha, R);

  SequenceParams p{syms.intern("Al"), syms.intern("Au"), syms.intern("Bl"), syms.intern("Bu")};
  VarId bh1 = syms.intern("Bh1"), bh2 = syms.intern("Bh2");
  VarId ch0 = syms.intern("Ch0"), ch1 = syms.intern("Ch1"), ch2 = syms.intern("Ch2");
  VarId clast = syms.intern("Clast");
  std::vector<VarId> X{p.Al, p.Au, p.Bl, p.Bu, bh1, bh2, ch0, ch1, ch2, clast};

  std::vector<VarId> C(6), A(6), B(6), Y;
  for (int i = 0; i < 6; ++i)
  {
    C[i] = syms.intern("C" + std::to_string(i));
    A[i] = syms.intern("A" + std::to_string(i));
    B[i] = syms.intern("B" + std::to_string(i));
    Y.insert(Y.end(), {C[i], A[i], B[i]});
  }

  LinearTerm Al = V(p.Al);
  auto line = [&](int r) { return Al * ipow(alpha, r - 1); };  // alpha^(r-1) * Al

  std::vector<FormulaPtr> top{
      psiFormula(p, V(p.Bl), V(bh1), alpha, syms),
      psiFormula(p, V(bh1), V(bh2), alpha, syms),
      phiFormula(p, V(ch0), Al * aR, V(p.Bl), alpha),
      phiFormula(p, V(ch1), Al * aR, V(bh1), alpha),
      phiFormula(p, V(ch2), Al, V(bh2), alpha),
      phiFormula(p, V(clast), line(R), V(p.Bu), alpha),
  };

  std::vector<FormulaPtr> hyp;
  for (int i = 0; i < 5; ++i) hyp.push_back(psiFormula(p, V(B[i]), V(B[i + 1]), alpha, syms));
  for (int i = 0; i < 6; ++i) hyp.push_back(phiFormula(p, V(C[i]), V(A[i]), V(B[i]), alpha));
  hyp.push_back(lt(V(A[2]), Al * aR));

  // transition: counters at A0, A1 -> A3, A4; line at A2 -> A5
  auto chi = [&](const LinearTerm& x, const LinearTerm& y) { return eq(y, x * alpha); };
  std::vector<FormulaPtr> cases;
  for (int r = 1; r < R; ++r)
  {
    const MinskyInstr& in = m.instrs[r - 1];
    int i = in.counter - 1, o = 1 - i;
    auto keep = eq(V(A[o + 3]), V(A[o]));
    auto at = eq(V(A[2]), line(r));
    if (in.kind == MinskyInstr::Kind::Inc)
    {
      cases.push_back(mkAnd({at, chi(V(A[i]), V(A[i + 3])), keep, eq(V(A[5]), line(in.target))}));
      continue;
    }
    auto zero = mkAnd({eq(V(A[i]), Al * aR), eq(V(A[i + 3]), V(A[i])),
                       eq(V(A[5]), line(in.target))});
    auto dec = mkAnd({lt(Al * aR, V(A[i])), chi(V(A[i + 3]), V(A[i])),
                      eq(V(A[5]), line(in.elseTarget))});
    cases.push_back(mkAnd({at, keep, mkOr({zero, dec})}));
  }
  FormulaPtr Phi = mkOr(cases);  // R = 1: empty disjunction, nothing follows the halt line
  top.push_back(mkForall(Y, mkImplies(mkAnd(hyp), Phi)));
  return mkExists(X, mkAnd(top));
}

int quantifierBlocks(const Formula& f) { return blocks(f, true, -1, 0); }

SkeletonCounts skeletonCounts(const Formula& f)
{
  SkeletonCounts c;
  const Formula* body = &f;
  while (body->kind == Formula::Kind::Exists) body = body->kids[0].get();
  count(*body, 0, c);
  return c;
}

SimResult simulate(const MinskyMachine& m, unsigned long maxSteps)
{
  validateMinsky(m);
  SimResult s;
  int r = 1;
  while (r != m.R)
  {
    if (s.steps == maxSteps) return s;
    const MinskyInstr& in = m.instrs[r - 1];
    unsigned long& c = in.counter == 1 ? s.c1 : s.c2;
    if (in.kind == MinskyInstr::Kind::Inc)
    {
      ++c;
      r = in.target;
    }
    else if (c == 0)
      r = in.target;
    else
    {
      --c;
      r = in.elseTarget;
    }
    ++s.steps;
  }
  s.halted = true;
  return s;
}

}  // namespace powpres
