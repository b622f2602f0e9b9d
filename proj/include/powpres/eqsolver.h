// Solution sets of c_1 z_1^n_1 + ... + c_l z_l^n_l = d over exponent tuples,
// as finite unions of cells made of offset and fixing constraints.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "powpres/core.h"
#include "powpres/numth.h"
#include "powpres/powerprep.h"

namespace powpres {

/// n_a = n_b + c, with z_a = z_b.
struct OffsetConstraint
{
  int a = 0, b = 0;
  unsigned long c = 0;
  bool operator==(const OffsetConstraint&) const = default;
  auto operator<=>(const OffsetConstraint&) const = default;
};

/// n_a = v.
struct FixConstraint
{
  int a = 0;
  unsigned long v = 0;
  bool operator==(const FixConstraint&) const = default;
  auto operator<=>(const FixConstraint&) const = default;
};

struct AClassCell
{
  std::vector<OffsetConstraint> offsets;
  std::vector<FixConstraint> fixes;

  bool contains(const Exponents& n) const;
  bool operator==(const AClassCell&) const = default;
  auto operator<=>(const AClassCell&) const = default;
};

struct AClassRepr
{
  size_t arity = 0;
  std::vector<AClassCell> cells;
  bool complete = true;

  bool contains(const Exponents& n) const;
};

/// Canonical form: each offset points at the smallest member of its class,
/// fixed classes become fixes, everything sorted. nullopt if inconsistent.
std::optional<AClassCell> cellNormalize(const AClassCell& cell, size_t arity);

AClassRepr intersect(const AClassRepr& x, const AClassRepr& y);

struct EqOptions
{
  unsigned long budget = 1000000;  // candidates per ordered enumeration
  long precisionBits = 64;
};

struct EqStats
{
  unsigned long enumerated = 0;
  unsigned long orderedSearches = 0;
  bool truncated = false;
};

/// Bivariate polynomial in x = log(1+n_1), y = log(1+n_2), coefficients
/// are non-negative rationals rounded upward.
struct BiPoly
{
  std::map<std::pair<unsigned, unsigned>, BigRat> coef;

  static BiPoly constant(const BigRat& c);
  BiPoly& operator+=(const BiPoly& o);
  BiPoly scaled(const BigRat& k) const;
  /// (c0 + x + y) * this
  BiPoly timesLinear(const BigRat& c0) const;
  BigRat eval(const BigRat& x, const BigRat& y) const;
  BigRat constantTerm() const;
  unsigned degree() const;
};

struct GapBounds
{
  BigRat xi1, xi2;          // upper bounds
  std::vector<BiPoly> p;    // p[j] bounds n_mu(j) - n_j; p[0] = p[1] = 1
};

/// Positions 0 and 1 carry different bases; positions 2.. are the chain
/// below them. All coefficients non-zero.
GapBounds mixedGapBounds(const std::vector<BigInt>& c,
                         const std::vector<BigInt>& z, const BigInt& d,
                         long precisionBits = 64);

struct MixedResult
{
  std::vector<Exponents> solutions;  // sorted
  bool complete = false;
  unsigned long enumerated = 0;
  BigInt bound = 0;  // proven bound on the smaller-base top exponent
};

/// Solutions with z_{o0}^n, z_{o1}^n >= z_{o2}^n >= ... >= z_{o(l-1)}^n where
/// o = order, z_{o0} != z_{o1}, and no proper sub-sum vanishing.
MixedResult solveMixedOrdered(const std::vector<BigInt>& c,
                              const std::vector<BigInt>& z, const BigInt& d,
                              const std::vector<int>& order,
                              const EqOptions& opts = {});

/// gamma^n with a single base; always complete.
AClassRepr solveSingleBase(const std::vector<BigInt>& c, const BigInt& d,
                           const BigInt& gamma);

/// One equation with arbitrary coefficients (zero means the variable is free).
AClassRepr solveEquation(const std::vector<BigInt>& c,
                         const std::vector<BigInt>& z, const BigInt& d,
                         const EqOptions& opts = {}, EqStats* stats = nullptr);

/// Intersection over the rows of C z = d.
AClassRepr solveEqualities(const Matrix& C, const Row& d,
                           const std::vector<BigInt>& z,
                           const EqOptions& opts = {}, EqStats* stats = nullptr);

}  // namespace powpres
