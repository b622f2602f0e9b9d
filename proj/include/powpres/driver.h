// Top-level decision procedure: formula -> power-tagged DNF -> integer
// elimination -> "A z > b and C z = d" instances -> equality cells and strict
// systems, with models carried back to the original variables.
#pragma once

#include <string>

#include "powpres/core.h"
#include "powpres/eqsolver.h"
#include "powpres/ineqsolver.h"
#include "powpres/powerprep.h"

namespace powpres {

struct SolveOptions
{
  unsigned long budget = 1000000;  // equality search steps per ordered search
  unsigned precisionBits = 64;
  unsigned long kroneckerSteps = 5000000;
  /// Equalities whose negative threshold would need more branches than this
  /// are reported Unknown instead of being split.
  unsigned long maxThresholdSplit = 4096;
};

struct SolveStats
{
  unsigned long instances = 0;
  unsigned long cells = 0;
  unsigned long enumerated = 0;
  bool budgetTruncated = false;
};

struct ProblemResult
{
  Verdict verdict = Verdict::Unknown;
  Exponents witness;
  std::string reason;  // why Unknown
};

/// A z > b and C z = d over the instance's bases. Bases must be > 1 and
/// pairwise equal or multiplicatively independent.
ProblemResult solveProblem1(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
                            const Matrix& C, const Row& d, const SolveOptions& opts = {},
                            SolveStats* stats = nullptr);
ProblemResult solveProblem1(const ProblemOneInstance& inst, const SolveOptions& opts = {},
                            SolveStats* stats = nullptr);

struct DecideResult
{
  Verdict verdict = Verdict::Unknown;
  Model model;  // values of the sentence's bound variables when Sat
  std::string reason;
  SolveStats stats;
};

/// f must be a closed existential sentence. A Sat model is checked against
/// the quantifier-free body before it is returned.
DecideResult decide(const FormulaPtr& f, Symbols& syms, const BigInt& alpha,
                    const BigInt& beta, const SolveOptions& opts = {});

/// Rejects anything that is not a closed existential sentence
/// (std::invalid_argument with the reason).
void checkExistentialSentence(const Formula& f, const Symbols& syms);

/// The sentence with every existential binder removed; also returns the
/// bound variables in order of appearance.
FormulaPtr existentialMatrix(const FormulaPtr& f, std::vector<VarId>* bound = nullptr);

}  // namespace powpres
