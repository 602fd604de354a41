#include "hcm/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hcm {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

int sign(const Rational& r) { return sgn(r); }

BigInt ipow(const BigInt& base, unsigned exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational rpow(long long base, unsigned exponent) {
  return Rational(ipow(BigInt(static_cast<long>(base)), exponent));
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t base = mod(a, m), out = 1;
  while (e) {
    if (e & 1) out = mulmod(out, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return out;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::domain_error("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod(old_s, m);
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt of negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::int64_t n) {
  if (n < 0) return false;
  std::int64_t r = isqrt(n);
  return r * r == n;
}

// Deterministic Miller-Rabin; this base set is exact below 2^64.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mul = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (auto a : bases) {
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = mul(x, base);
      base = mul(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  auto mul = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mul(v, v) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (auto p : primes) {
    if (!out.empty() && out.back().prime == static_cast<std::int64_t>(p)) {
      ++out.back().exponent;
    } else {
      out.push_back({static_cast<std::int64_t>(p), 1});
    }
  }
  return out;
}

std::uint64_t reconstruct(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& [p, e] : f) {
    for (int i = 0; i < e; ++i) n *= static_cast<std::uint64_t>(p);
  }
  return n;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (const auto& pe : factorize(static_cast<std::uint64_t>(n < 0 ? -n : n))) out.push_back(pe.prime);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("divisors of non-positive number");
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(n))) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t out = n;
  for (auto p : prime_divisors(n)) out = out / p * (p - 1);
  return out;
}

int moebius(std::int64_t n) {
  int out = 1;
  for (const auto& pe : factorize(static_cast<std::uint64_t>(n))) {
    if (pe.exponent > 1) return 0;
    out = -out;
  }
  return out;
}

int moebius_ext(const Rational& r) {
  if (r <= 0) throw std::invalid_argument("moebius_ext needs a positive argument");
  if (r.get_den() != 1) return 0;
  return moebius(r.get_num().get_si());
}

std::int64_t sigma1(std::int64_t n) {
  std::int64_t out = 1;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(n))) {
    std::int64_t term = 1, pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      term += pk;
    }
    out *= term;
  }
  return out;
}

std::int64_t num_divisors(std::int64_t n) {
  std::int64_t out = 1;
  for (const auto& pe : factorize(static_cast<std::uint64_t>(n))) out *= pe.exponent + 1;
  return out;
}

std::int64_t squarefree_part(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("squarefree_part of non-positive number");
  std::int64_t out = 1;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(n))) {
    if (e % 2) out *= p;
  }
  return out;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    const std::int64_t a8 = mod(a, 8);
    if ((twos % 2) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a | n) for odd positive n.
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int ord_p(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("ord_p(0)");
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::int64_t p_part(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("p_part(0)");
  std::int64_t out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

std::int64_t odd_part(std::int64_t n) { return n / p_part(n, 2); }

BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt catalan_ext(int k) {
  if (k < 0) throw std::invalid_argument("catalan_ext of negative index");
  if (k % 2) return 0;
  const int h = k / 2;
  return binomial(2 * h, h) / (h + 1);
}

Complex FourthRoot::value() const {
  static constexpr std::array<Complex, 4> table{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  return table[exponent_];
}

FourthRoot eps(std::int64_t d) {
  if (d % 2 == 0) throw std::invalid_argument("eps needs an odd argument");
  return FourthRoot(mod(d, 4) == 1 ? 0 : 1);
}

}  // namespace hcm
