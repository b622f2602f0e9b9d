// Factorization, valuations, heights and rigorous rational bounds on
// natural logarithms.
#pragma once

#include <climits>
#include <stdexcept>
#include <vector>

#include "powpres/core.h"

namespace powpres {

class DomainError : public std::invalid_argument
{
 public:
  using std::invalid_argument::invalid_argument;
};

/// lo <= true value <= hi.
struct DirectedLog
{
  BigRat lo;
  BigRat hi;

  bool contains(const BigRat& x) const { return lo <= x && x <= hi; }
  BigRat width() const { return hi - lo; }
};

DirectedLog operator+(const DirectedLog& a, const DirectedLog& b);
DirectedLog operator-(const DirectedLog& a, const DirectedLog& b);
DirectedLog operator*(const DirectedLog& a, const BigRat& k);
/// Both enclosures must be strictly positive.
DirectedLog operator/(const DirectedLog& a, const DirectedLog& b);

struct PrimePower
{
  BigInt p;
  unsigned long e = 0;
  bool operator==(const PrimePower& o) const { return p == o.p && e == o.e; }
};
using Factorization = std::vector<PrimePower>;

Factorization factorize(const BigInt& n);
bool isPrime(const BigInt& n);

constexpr unsigned long kInfiniteValuation = ULONG_MAX;
/// nu_p(x); nu_p(0) is kInfiniteValuation.
unsigned long padicValuation(const BigInt& p, const BigInt& x);

BigInt floorRat(const BigRat& q);
BigInt ceilRat(const BigRat& q);
/// 2^-bits as a rational.
BigRat dyadic(long bits);

DirectedLog logEnclosure(const BigRat& x, const BigRat& precision);
/// Shorthand with precision 2^-bits.
DirectedLog lnBits(const BigRat& x, long bits = 64);

/// max(log|a|, log|b|) for z = a/b.
DirectedLog height(const BigRat& z, const BigRat& precision);

/// A rational L with log|prod gamma_i^b_i - 1| > L whenever the product is
/// not 1. Every constant is rounded so L only gets smaller.
BigRat matveevBound(const std::vector<BigRat>& gammas,
                    const std::vector<BigInt>& bs);

/// A prime p dividing beta with log(alpha)/log(beta) > nu_p(alpha)/nu_p(beta).
/// Primes are tried in increasing order.
BigInt selectPrime(const BigInt& alpha, const BigInt& beta);

}  // namespace powpres
