// From guarded systems over power variables to instances of
// "A z > b and C z = d" with z a vector of unknown powers.
#pragma once

#include <vector>

#include "powpres/core.h"
#include "powpres/linarith.h"

namespace powpres {

using Row = std::vector<BigInt>;
using Matrix = std::vector<Row>;
using Exponents = std::vector<unsigned long>;

struct Dependence
{
  bool dependent = false;
  BigInt a = 0, b = 0;  // alpha^a = beta^b = gamma, (a, b) minimal
  BigInt gamma = 0;
};

Dependence multDependence(const BigInt& alpha, const BigInt& beta);

struct ResiduePeriod
{
  BigInt gamma;
  BigInt D;
  unsigned long rho = 0;
  unsigned long pi = 1;
  std::vector<BigInt> table;  // gamma^n mod D for n < rho + pi

  const BigInt& residue(unsigned long n) const
  {
    return n < rho ? table[n] : table[rho + (n - rho) % pi];
  }
};

ResiduePeriod residuePeriod(const BigInt& gamma, const BigInt& D);

/// Original exponent of a power variable: n = offset + multiplier * m where
/// m is the instance exponent in column `column`, or just n = offset when
/// column < 0.
struct ExponentMap
{
  int column = -1;
  unsigned long offset = 0;
  unsigned long multiplier = 0;
};

struct PowerOrigin
{
  VarId var = 0;
  BaseTag tag = BaseTag::A;
  ExponentMap map;
};

struct ProblemOneInstance
{
  std::vector<BigInt> z;  // base of each column
  std::vector<BaseTag> tags;
  Matrix A;
  Row b;
  Matrix C;
  Row d;
  std::vector<PowerOrigin> origins;

  size_t arity() const { return z.size(); }
};

/// Exact check of A z > b and C z = d.
bool satisfies(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
               const Matrix& C, const Row& d, const Exponents& n);
bool satisfies(const ProblemOneInstance& inst, const Exponents& n);

/// Values of the original power variables for instance exponents n.
Model powerValues(const ProblemOneInstance& inst, const BigInt& alpha,
                  const BigInt& beta, const Exponents& n);

/// All variables of g must be among powerVars. Each returned instance
/// carries the comparisons of g rewritten over rebased exponents; the
/// congruences of g are discharged by the residue split.
std::vector<ProblemOneInstance> unfoldToProblem1(
    const GuardedConjunct& g,
    const std::vector<std::pair<VarId, BaseTag>>& powerVars,
    const BigInt& alpha, const BigInt& beta);

}  // namespace powpres
