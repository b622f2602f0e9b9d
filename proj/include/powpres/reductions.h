// Encoding of 2-counter machine halting as a sentence with two power
// predicates, plus a plain simulator to cross-check machines. The sentence is
// only built and inspected here, never decided.
//
// Sequence convention: the bound variables Al, Au, Bl, Bu select the powers
// B of beta in [Bl, Bu] whose leading base-alpha digit is 1 and whose second
// non-zero digit sits at a power A of alpha in [Al, Au]; the n-th such B
// carries the value A / Al. Configurations (c1, c2, r) are stored as the
// triple alpha^(R + c1), alpha^(R + c2), alpha^(r - 1).
//
// The final-element constraint is emitted as phi(Clast, alpha^(R-1) * Al, Bu),
// which matches phi's (C, A, B) signature.
#pragma once

#include <optional>

#include "powpres/core.h"
#include "powpres/textio.h"

namespace powpres {

struct SequenceParams
{
  VarId Al = 0, Au = 0, Bl = 0, Bu = 0;
};

/// B is a sequence element witnessed by C (largest power of alpha below B)
/// and A (position of the second non-zero digit).
FormulaPtr phiFormula(const SequenceParams& p, const LinearTerm& C, const LinearTerm& A,
                      const LinearTerm& B, const BigInt& alpha);

/// No sequence element lies strictly between B1 and B2. Binds three fresh
/// variables in syms.
FormulaPtr psiFormula(const SequenceParams& p, const LinearTerm& B1, const LinearTerm& B2,
                      const BigInt& alpha, Symbols& syms);

/// Halting sentence for m. Throws std::invalid_argument for a malformed
/// machine and DomainError for bases <= 1.
FormulaPtr encodeMinsky(const MinskyMachine& m, const BigInt& alpha, const BigInt& beta,
                        Symbols& syms);

/// Number of maximal same-kind quantifier blocks on the worst path, with
/// negation flipping the kind. A quantifier-free formula has 0.
int quantifierBlocks(const Formula& f);

/// Shape of an encoder output: phi/psi occurrences at the top level and
/// inside the universal block over the two consecutive configurations.
struct SkeletonCounts
{
  int phiOuter = 0, phiInner = 0;
  int psiOuter = 0, psiInner = 0;
};
SkeletonCounts skeletonCounts(const Formula& f);

struct SimResult
{
  bool halted = false;
  unsigned long steps = 0;
  unsigned long c1 = 0, c2 = 0;
};

SimResult simulate(const MinskyMachine& m, unsigned long maxSteps);

}  // namespace powpres
