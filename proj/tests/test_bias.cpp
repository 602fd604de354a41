#include "hcm/bias.hpp"
#include "hcm/hurwitz.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hcm;

namespace {

std::int64_t prime_in_class(std::int64_t x, std::int64_t M) {
  for (std::int64_t p = 5;; ++p) {
    if (M % p != 0 && mod(p - x, M) == 0 && is_prime(static_cast<std::uint64_t>(p))) return p;
  }
}

// Coefficient of sigma_1(p) in the main term at primes p = x (mod M), read off
// from class numbers; valid where the cusp part vanishes (M <= 5).
Rational unit_coefficient_oracle(std::int64_t x, std::int64_t m, std::int64_t M) {
  const std::int64_t p = prime_in_class(x, M);
  return (oracle::moment(0, m, M, p) + lambda_km(0, m, M, p)) / Rational(p + 1);
}

int indicator(bool b) { return b ? 1 : 0; }

Rational A1_oracle(std::int64_t m, std::int64_t M) {
  Rational s = 0;
  std::int64_t units = 0;
  for (std::int64_t x = 0; x < M; ++x) {
    if (std::gcd(x, M) != 1) continue;
    ++units;
    const int d = indicator(mod(x + 1 - m, M) == 0) + indicator(mod(x + 1 + m, M) == 0);
    s += unit_coefficient_oracle(x, m, M) - d;
  }
  return s / Rational(2 * units);
}

Rational A2_oracle(std::int64_t m, std::int64_t M) {
  Rational s = 0;
  std::int64_t units = 0;
  for (std::int64_t x = 0; x < M; ++x) {
    if (std::gcd(x, M) != 1) continue;
    ++units;
    std::int64_t inv = 1;
    while (mod(inv * x, M) != 1) ++inv;
    const int d = indicator(mod(2 * x - m, M) == 0) + indicator(mod(2 * x + m, M) == 0);
    s += unit_coefficient_oracle(x * x, m, M) - d - oracle::moment(2, inv * m, M, 1);
  }
  return s / Rational(2 * units);
}

}  // namespace

TEST_CASE("delta_star examples") {
  CHECK(delta_star(1, 1, 3) == 1);
  CHECK(delta_star(3, 0, 4) == 2);
  CHECK(delta_star(1, 3, 4) == 0);
  CHECK_THROWS_AS(delta_star(2, 1, 4), std::invalid_argument);
  CHECK(delta_star(5, 1, 1) == 2);
}

TEST_CASE("A1 examples") {
  for (std::int64_t m = 0; m <= 5; ++m) CHECK(A1_closed(m, 1) == 0);
  CHECK(A1_closed(1, 3) == Rational(1, 16));
  CHECK(A1_closed(2, 5) == Rational(-5, 96));
  CHECK(A1_chars(1, 3) == doctest::Approx(1.0 / 16));
  CHECK(A1_chars(7, 1) == doctest::Approx(0.0));
  CHECK(A1_chars(1, 4) == doctest::Approx(A1_closed(1, 4).get_d()));
}

TEST_CASE("A2 examples") {
  CHECK(A2_closed(1, 3) == Rational(-1, 8));
  CHECK(A2_chars(1, 3) == doctest::Approx(-1.0 / 8));
  CHECK(sign(A2_closed(0, 3)) > 0);
  CHECK(sign(A2_closed(1, 5)) < 0);
  CHECK(A2_chars(0, 3) == doctest::Approx(A2_closed(0, 3).get_d()));
  CHECK(A2_chars(1, 5) == doctest::Approx(A2_closed(1, 5).get_d()));
}

TEST_CASE("closed forms against class-number oracle, M <= 5") {
  for (std::int64_t M = 1; M <= 5; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      CHECK(A1_closed(m, M) == A1_oracle(m, M));
      if (M >= 3) CHECK(A2_closed(m, M) == A2_oracle(m, M));
    }
  }
}

TEST_CASE("route equality") {
  for (std::int64_t M = 1; M <= 36; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) CHECK(std::abs(A1_chars(m, M) - A1_closed(m, M).get_d()) < 1e-9);
  }
  for (std::int64_t M = 3; M <= 30; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) CHECK(std::abs(A2_chars(m, M) - A2_closed(m, M).get_d()) < 1e-9);
  }
}

TEST_CASE("printed A2 form disagrees with the character route") {
  int mismatches = 0;
  for (std::int64_t M = 3; M <= 12; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) mismatches += std::abs(A2_printed(m, M) - A2_chars(m, M)) > 1e-9;
  }
  CHECK(mismatches > 0);
}

TEST_CASE("A1 symmetries") {
  for (std::int64_t M = 1; M <= 100; ++M) {
    for (std::int64_t m = 0; m <= M; ++m) {
      const Rational a = A1_closed(m, M);
      CHECK(a == A1_closed(-m, M));
      CHECK(a == A1_closed(m + M, M));
    }
  }
}

TEST_CASE("first term bound") {
  for (std::int64_t M = 1; M <= 300; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const Rational f = A1_first_term(m, M);
      CHECK(f > 0);
      CHECK(f <= 2);
      if (M > 1) CHECK(f < 2);
    }
  }
}

TEST_CASE("A1 vanishes exactly at M = 1") {
  for (std::int64_t M = 1; M <= 500; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) REQUIRE((sign(A1_closed(m, M)) == 0) == (M == 1));
  }
}

TEST_CASE("sign rules") {
  auto has = [](const std::vector<SignPrediction>& v, const std::string& avg, int s) {
    for (const auto& p : v) {
      if (p.average == avg && p.sign == s) return true;
    }
    return false;
  };
  CHECK(has(sign_rules(1, 27), "A1", 1));
  CHECK(has(sign_rules(5, 12), "A1", 1));
  CHECK(has(sign_rules(2, 6), "A2", -1));
  CHECK(sign(A1_closed(5, 12)) > 0);
  CHECK(sign(A2_closed(2, 6)) < 0);
  for (std::int64_t M = 2; M <= 120; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      for (const auto& p : sign_rules(m, M)) {
        if (p.sign == 0) continue;
        const int got = p.average == "A1" ? sign(A1_closed(m, M)) : sign(A2_closed(m, M));
        CHECK(got == p.sign);
      }
    }
  }
}

TEST_CASE("scan and densities") {
  const auto rows = scan_A1(2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].m == 1);
  CHECK(rows[0].M == 1);
  CHECK(rows[2].m == 2);
  CHECK(rows[2].M == 2);
  const auto one = density_scan(1);
  CHECK(one.zero == 1);
  const auto a = density_scan(300, 1);
  const auto b = density_scan(300, 7);
  CHECK(a.positive == b.positive);
  CHECK(a.negative == b.negative);
  const auto d = density_scan(1000, 4);
  CHECK(d.total() == 500500);
  CHECK(std::abs(d.positive_fraction() - 0.44) <= 0.01);
  CHECK(std::abs(d.negative_fraction() - 0.56) <= 0.01);
  CHECK(d.positive_fraction() >= 0.25);
  CHECK(d.negative_fraction() >= 1.0 / (2 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("empirical averages approach the closed form") {
  CHECK(std::abs(empirical_A1(1, 3, 100'000) - 1.0 / 16) < 0.02);
  CHECK(std::abs(empirical_A1(2, 5, 100'000) + 5.0 / 96) < 0.02);
}
