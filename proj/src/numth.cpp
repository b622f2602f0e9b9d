#include "powpres/numth.h"

#include <algorithm>

namespace powpres {

DirectedLog operator+(const DirectedLog& a, const DirectedLog& b)
{
  return {a.lo + b.lo, a.hi + b.hi};
}

DirectedLog operator-(const DirectedLog& a, const DirectedLog& b)
{
  return {a.lo - b.hi, a.hi - b.lo};
}

DirectedLog operator*(const DirectedLog& a, const BigRat& k)
{
  if (k >= 0) return {a.lo * k, a.hi * k};
  return {a.hi * k, a.lo * k};
}

DirectedLog operator/(const DirectedLog& a, const DirectedLog& b)
{
  if (a.lo <= 0 || b.lo <= 0)
    throw DomainError("enclosure division needs positive operands");
  return {a.lo / b.hi, a.hi / b.lo};
}

bool isPrime(const BigInt& n)
{
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

BigInt pollardRho(const BigInt& n)
{
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c)
  {
    BigInt x = 2, y = 2, d = 1;
    auto f = [&](const BigInt& v) {
      BigInt r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1)
    {
      x = f(x);
      y = f(f(y));
      BigInt diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void splitInto(const BigInt& n, std::vector<BigInt>& primes)
{
  if (n == 1) return;
  if (isPrime(n))
  {
    primes.push_back(n);
    return;
  }
  BigInt d = pollardRho(n);
  splitInto(d, primes);
  splitInto(n / d, primes);
}

}  // namespace

Factorization factorize(const BigInt& n)
{
  if (n < 2) throw DomainError("factorize needs n >= 2");
  std::vector<BigInt> primes;
  BigInt m = n;
  for (unsigned long p = 2; p <= 1000000 && BigInt(p) * p <= m; ++p)
  {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p))
    {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1) splitInto(m, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (const auto& p : primes)
  {
    if (!out.empty() && out.back().p == p)
      ++out.back().e;
    else
      out.push_back({p, 1});
  }
  return out;
}

unsigned long padicValuation(const BigInt& p, const BigInt& x)
{
  if (!isPrime(p)) throw DomainError("valuation needs a prime");
  if (x == 0) return kInfiniteValuation;
  BigInt y = abs(x);
  unsigned long v = 0;
  while (mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t()))
  {
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

BigInt floorRat(const BigRat& q)
{
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceilRat(const BigRat& q)
{
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigRat dyadic(long bits)
{
  BigInt p2 = 1;
  if (bits >= 0)
  {
    mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), bits);
    return BigRat(1, p2);
  }
  mpz_mul_2exp(p2.get_mpz_t(), p2.get_mpz_t(), -bits);
  return BigRat(p2);
}

namespace {

BigInt shl(const BigInt& x, unsigned long k)
{
  BigInt r;
  mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

BigInt fdivShr(const BigInt& x, unsigned long k)
{
  BigInt r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

BigInt cdivShr(const BigInt& x, unsigned long k)
{
  BigInt r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

// Enclosure of 2*atanh(s) for rational 0 <= s <= 1/3, on the grid 2^-P.
DirectedLog twoAtanh(const BigRat& s, unsigned long P)
{
  if (s == 0) return {0, 0};
  BigInt sLo = floorRat(s * BigRat(shl(1, P)));
  BigInt sHi = ceilRat(s * BigRat(shl(1, P)));
  BigInt s2Lo = fdivShr(sLo * sLo, P);
  BigInt s2Hi = cdivShr(sHi * sHi, P);
  BigInt pwLo = sLo, pwHi = sHi, sumLo = 0, sumHi = 0;
  for (unsigned long i = 0;; ++i)
  {
    BigInt den = 2 * i + 1;
    BigInt t;
    mpz_fdiv_q(t.get_mpz_t(), pwLo.get_mpz_t(), den.get_mpz_t());
    sumLo += t;
    mpz_cdiv_q(t.get_mpz_t(), pwHi.get_mpz_t(), den.get_mpz_t());
    sumHi += t;
    pwLo = fdivShr(pwLo * s2Lo, P);
    pwHi = cdivShr(pwHi * s2Hi, P);
    if (pwHi <= 1)
    {
      // remaining terms sum to at most pwHi / (1 - s^2) <= 2 * pwHi
      sumHi += 2 * pwHi;
      break;
    }
  }
  BigRat scale = dyadic(static_cast<long>(P));
  return {BigRat(2 * sumLo) * scale, BigRat(2 * sumHi) * scale};
}

DirectedLog lnAtBits(const BigRat& x, unsigned long P)
{
  BigInt num = x.get_num(), den = x.get_den();
  long k = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  BigRat y = x * dyadic(k);
  if (y < 1)
  {
    y *= 2;
    --k;
  }
  else if (y >= 2)
  {
    y /= 2;
    ++k;
  }
  DirectedLog r = twoAtanh((y - 1) / (y + 1), P);
  if (k != 0)
  {
    DirectedLog ln2 = twoAtanh(BigRat(1, 3), P);
    r = r + ln2 * BigRat(k);
  }
  return r;
}

}  // namespace

DirectedLog logEnclosure(const BigRat& x, const BigRat& precision)
{
  if (x <= 0) throw DomainError("logarithm of a non-positive number");
  if (precision <= 0) throw DomainError("precision must be positive");
  if (x == 1) return {0, 0};
  long want = 0;
  while (dyadic(want) > precision) ++want;
  BigInt k = abs(BigInt(static_cast<long>(
      mpz_sizeinbase(x.get_num_mpz_t(), 2) +
      mpz_sizeinbase(x.get_den_mpz_t(), 2))));
  unsigned long P = static_cast<unsigned long>(want) + 8 +
                    mpz_sizeinbase(k.get_mpz_t(), 2);
  for (;;)
  {
    DirectedLog r = lnAtBits(x, P);
    if (r.width() <= precision) return r;
    P += 16;
  }
}

DirectedLog lnBits(const BigRat& x, long bits)
{
  return logEnclosure(x, dyadic(bits));
}

DirectedLog height(const BigRat& z, const BigRat& precision)
{
  if (z == 0) throw DomainError("height of zero");
  BigInt a = abs(z.get_num());
  BigInt b = z.get_den();
  return logEnclosure(BigRat(std::max(a, b)), precision);
}

BigRat matveevBound(const std::vector<BigRat>& gammas,
                    const std::vector<BigInt>& bs)
{
  if (gammas.empty()) throw DomainError("matveev bound needs k >= 1");
  if (gammas.size() != bs.size())
    throw DomainError("gammas and exponents differ in length");
  const BigRat prec = dyadic(40);
  long k = static_cast<long>(gammas.size());
  BigInt B = 1;
  for (const auto& b : bs) B = std::max(B, BigInt(abs(b)));
  BigRat prod = 1;
  for (const auto& g : gammas)
  {
    if (g == 0) throw DomainError("gamma must be non-zero");
    BigRat h = height(g, prec).hi;
    DirectedLog lg = logEnclosure(abs(g), prec);
    BigRat absLog = std::max(abs(lg.lo), abs(lg.hi));
    prod *= std::max({h, absLog, BigRat(16, 100)});
  }
  // k^4.5 <= k^4 * s where s = ceil(16*sqrt(k))/16
  BigInt r;
  BigInt k256 = 256 * BigInt(k);
  mpz_sqrt(r.get_mpz_t(), k256.get_mpz_t());
  if (r * r < k256) r += 1;
  BigRat kPow = BigRat(ipow(BigInt(k), 4)) * BigRat(r, 16);
  BigRat thirty = BigRat(ipow(BigInt(30), static_cast<unsigned long>(k + 3)));
  BigRat logTerm = 1 + logEnclosure(BigRat(BigInt(k) * B), prec).hi;
  return -BigRat(14, 10) * thirty * kPow * logTerm * prod;
}

BigInt selectPrime(const BigInt& alpha, const BigInt& beta)
{
  if (alpha < 2 || beta < 2) throw DomainError("bases must exceed 1");
  for (const auto& pp : factorize(beta))
  {
    unsigned long va = padicValuation(pp.p, alpha);
    unsigned long vb = pp.e;
    if (va == 0) return pp.p;
    if (ipow(alpha, vb) == ipow(beta, va))
      throw DomainError("bases are multiplicatively dependent");
    for (long bits = 32;; bits *= 2)
    {
      DirectedLog la = lnBits(alpha, bits), lb = lnBits(beta, bits);
      DirectedLog diff = la * BigRat(vb) - lb * BigRat(va);
      if (diff.lo > 0) return pp.p;
      if (diff.hi < 0) break;
    }
  }
  throw DomainError("bases are multiplicatively dependent");
}

}  // namespace powpres
