// Strict inequality systems A z > 0 over z = (z_1^n_1, ..., z_l^n_l) with
// z_i drawn from two multiplicatively independent bases.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "powpres/core.h"
#include "powpres/powerprep.h"

namespace powpres {

enum class Verdict
{
  Sat,
  Unsat,
  Unknown
};

const char* verdictText(Verdict v);

struct StrictSystem
{
  std::vector<BigInt> z;
  Matrix A;  // every row r means r . z > 0
};

struct StrictResult
{
  Verdict verdict = Verdict::Unknown;
  Exponents witness;
};

bool strictHolds(const StrictSystem& sys, const Exponents& n);
/// A z > b.
bool affineHolds(const std::vector<BigInt>& z, const Matrix& A, const Row& b,
                 const Exponents& n);

/// Solver for A z > b with arbitrary b, supplied by the caller; used when two
/// different bases collide (both exponents then vanish and constants appear).
using AffineSolver = std::function<StrictResult(const std::vector<BigInt>& z,
                                                const Matrix& A, const Row& b)>;

struct StrictOptions
{
  unsigned long kroneckerSteps = 5000000;
  unsigned retries = 16;
  bool probe = true;  // try small exponents first
  AffineSolver affine;
};

struct KroneckerHit
{
  unsigned long n1 = 0, n2 = 0;
};

/// alpha^n1 / beta^n2 in (lo, hi) with n1 >= min1, n2 >= min2; hi empty means
/// +infinity. nullopt when the step cap runs out.
std::optional<KroneckerHit> kroneckerSearch(const BigInt& alpha, const BigInt& beta,
                                            const BigRat& lo,
                                            const std::optional<BigRat>& hi,
                                            unsigned long min1 = 0,
                                            unsigned long min2 = 0,
                                            unsigned long maxSteps = 5000000);

using RatForm = std::vector<BigRat>;

struct PumpingParams
{
  BigRat mu, delta, nu;
  std::vector<bool> inJ;
};

/// z[0] plays the role of beta; forms have arity z.size().
PumpingParams pumpingParams(const std::vector<RatForm>& forms,
                            const std::vector<BigInt>& z, const Exponents& m,
                            const BigRat& eps);

/// Tuple built from a hit |alpha^k / beta^n1 - mu| < delta with n1 > m[0].
Exponents pumpExtend(const std::vector<BigInt>& z, const Exponents& m,
                     unsigned long n1, unsigned long k);

/// Requires b >= 0; the zero-threshold system has the same solvability.
StrictSystem shiftToZero(const std::vector<BigInt>& z, const Matrix& A, const Row& b);

/// From a witness of A z > 0 to one of A z > b (b >= 0).
std::optional<Exponents> inflateWitness(const std::vector<BigInt>& z, const Matrix& A,
                                        const Row& b, const Exponents& m,
                                        const StrictOptions& opts = {});

struct GapReduction
{
  unsigned long k = 0;
  StrictSystem sys;  // column a removed, column b merged
};

/// n_a = n_b + k for k in [N1, N2].
std::vector<GapReduction> eliminateBoundedGap(const StrictSystem& sys, int a, int b,
                                              unsigned long N1, unsigned long N2);
Exponents liftGap(const Exponents& reduced, int a, int b, unsigned long k);

struct SimultApprox
{
  unsigned long d = 0, m = 0;
};

/// d > M and |beta^d / alpha^m - mu/a| < delta / (4a).
std::optional<SimultApprox> simultApprox(const BigInt& alpha, const BigInt& beta,
                                         const BigRat& a, const BigRat& mu,
                                         const BigRat& delta, const BigRat& Delta,
                                         unsigned long M,
                                         unsigned long maxSteps = 5000000);

StrictResult solveStrict(const StrictSystem& sys, const StrictOptions& opts = {});

}  // namespace powpres
