// Negation removal, disjunctive normal form with tagged power variables, and
// integer quantifier elimination (Cooper) with witness recovery.
#pragma once

#include <set>
#include <vector>

#include "powpres/core.h"

namespace powpres {

/// form = 0 (mod modulus), modulus >= 1.
struct Congruence
{
  LinearTerm form;
  BigInt modulus = 1;
};

/// form rel 0 with rel in {Gt, Eq} once normalized.
struct Comparison
{
  LinearTerm form;
  Rel rel = Rel::Gt;
};

/// Recovers one eliminated variable: x = (value of term) / divisor. For the
/// unbounded branch the term is not used; the value is the number congruent
/// to residue mod period that lies nearest to, and strictly beyond, all the
/// bounds (below them if `below`), and then it is divided by divisor.
struct WitnessStep
{
  enum class Kind { Exact, Unbounded };
  Kind kind = Kind::Exact;
  VarId var = 0;
  LinearTerm term;
  BigInt divisor = 1;
  BigInt residue = 0;
  BigInt period = 1;
  bool below = true;
  std::vector<LinearTerm> bounds;
};

struct GuardedConjunct
{
  std::vector<Congruence> congruences;
  std::vector<Comparison> comparisons;
  std::vector<WitnessStep> steps;  // in elimination order
};

/// A disjunction of guarded conjunctions. An empty list is false.
struct GuardedSystem
{
  std::vector<GuardedConjunct> disjuncts;
};

struct TaggedDisjunct
{
  std::vector<Comparison> comparisons;
  std::vector<std::pair<VarId, BaseTag>> powerVars;
};

struct PowerTaggedFormula
{
  std::vector<TaggedDisjunct> disjuncts;
};

/// Pushes negations into atoms. Negated power atoms introduce a fresh
/// existential u with u in gamma^N, u < t < gamma*u.
FormulaPtr normalizeNegations(const FormulaPtr& f, Symbols& syms,
                              const BigInt& alpha, const BigInt& beta);

/// Input must be negation-free (existential blocks are flattened). Every
/// comparison ends up as > 0 or = 0 and every power atom is on a bare
/// variable carrying exactly one tag.
PowerTaggedFormula toPowerTaggedDnf(const FormulaPtr& f, Symbols& syms);

/// Canonical form; returns false if the comparison is constant false.
/// Constant true comparisons come back as the form 1 > 0.
bool normalizeComparison(Comparison& c);
bool normalizeCongruence(Congruence& c);

GuardedSystem eliminateIntegerVars(const std::vector<Comparison>& conj,
                                   const std::set<VarId>& elimVars);

bool holds(const GuardedConjunct& g, const Model& m);
bool holds(const GuardedSystem& g, const Model& m);

/// Extends m with values for the eliminated variables of g. m must satisfy
/// g's congruences and comparisons.
void recoverWitness(const GuardedConjunct& g, Model& m);

BigInt floorDiv(const BigInt& a, const BigInt& b);
BigInt posMod(const BigInt& a, const BigInt& m);
BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace powpres
