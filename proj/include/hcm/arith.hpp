// Number-theory kernel shared by every other module: exact rationals,
// factorization, Kronecker symbols and a handful of multiplicative helpers.

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hcm {

using BigInt = mpz_class;
// Always kept in canonical form (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;
using Complex = std::complex<double>;

Rational make_rational(long long num, long long den = 1);
// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);
Rational parse_rational(const std::string& text);
int sign(const Rational& r);
BigInt ipow(const BigInt& base, unsigned exponent);
Rational rpow(long long base, unsigned exponent);

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

// Sorted by prime, exponents >= 1. The factorization of 1 is empty.
using Factorization = std::vector<PrimePower>;

bool is_prime(std::uint64_t n);
Factorization factorize(std::uint64_t n);
std::uint64_t reconstruct(const Factorization& f);
std::vector<std::int64_t> prime_divisors(std::int64_t n);
// All positive divisors, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m);
// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
// Every residue is its own inverse modulo 1, which is reported as 0.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
std::int64_t isqrt(std::int64_t n);
bool is_square(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);
int moebius(std::int64_t n);
// Moebius function extended to positive rationals: 0 off the integers.
int moebius_ext(const Rational& r);
std::int64_t sigma1(std::int64_t n);
std::int64_t num_divisors(std::int64_t n);
std::int64_t squarefree_part(std::int64_t n);

// Kronecker symbol (a | n) with the usual extension to n = 0, -1 and 2.
int kronecker(std::int64_t a, std::int64_t n);

int ord_p(std::int64_t n, std::int64_t p);
// p^{ord_p(n)}; throws std::invalid_argument for n = 0.
std::int64_t p_part(std::int64_t n, std::int64_t p);
std::int64_t odd_part(std::int64_t n);

// Extended Catalan numbers: C_{k/2} for even k, 0 for odd k, 1 at k = 0.
BigInt catalan_ext(int k);
BigInt binomial(long long n, long long k);
BigInt factorial(unsigned n);

// A fourth root of unity i^exponent.
class FourthRoot {
 public:
  constexpr FourthRoot() = default;
  constexpr explicit FourthRoot(int exponent) : exponent_(((exponent % 4) + 4) % 4) {}

  constexpr int exponent() const { return exponent_; }
  constexpr FourthRoot operator*(FourthRoot o) const { return FourthRoot(exponent_ + o.exponent_); }
  constexpr FourthRoot pow(int k) const { return FourthRoot(exponent_ * k); }
  constexpr bool operator==(const FourthRoot&) const = default;
  Complex value() const;

 private:
  int exponent_ = 0;
};

// 1 for d = 1 (mod 4), i for d = 3 (mod 4).
FourthRoot eps(std::int64_t d);

}  // namespace hcm
