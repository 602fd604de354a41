#include "hcm/frobenius.hpp"
#include "hcm/hurwitz.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <map>

using namespace hcm;

TEST_CASE("trace mass table for q = 5") {
  const TraceMassTable t(5, 1);
  CHECK(t.nonsingular_pairs() == 20);
  CHECK(t.total_mass() == 5);
  CHECK(t.mass(1) == Rational(1, 2));
  CHECK(trace_mass_table(7).total_mass() == 7);
}

TEST_CASE("pair counts match point counting over F_p") {
  for (std::int64_t p : {5, 7, 11, 13, 17}) {
    std::map<std::int64_t, std::int64_t> counts;
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
        const std::int64_t t = oracle::trace(a, b, p);
        ++counts[t];
        CHECK(trace_direct(a, b, p) == t);
      }
    }
    const TraceMassTable table(p, 1, 3);
    for (std::int64_t t = -table.bound(); t <= table.bound(); ++t) CHECK(table.pairs(t) == counts[t]);
  }
}

TEST_CASE("masses and Hasse bound") {
  for (std::int64_t q : {5, 7, 11, 13, 25, 49, 121}) {
    const auto table = trace_mass_table(q, 2);
    CHECK(table.total_mass() == q);
    for (std::int64_t t = -2 * isqrt(4 * q); t <= 2 * isqrt(4 * q); ++t) {
      CHECK(table.mass(t) >= 0);
      if (t * t > 4 * q) CHECK(table.mass(t) == 0);
    }
  }
  for (std::int64_t p : {5, 7, 11, 13}) {
    const TraceMassTable table(p, 1);
    for (std::int64_t t = -isqrt(4 * p); t <= isqrt(4 * p); ++t) {
      if (t % p == 0) continue;
      CHECK(table.mass(t) == oracle::hurwitz(4 * p - t * t) / 2);
    }
  }
}

TEST_CASE("F_{p^2} tables are independent of the worker count") {
  const TraceMassTable a(7, 2, 1), b(7, 2, 4);
  for (std::int64_t t = -a.bound(); t <= a.bound(); ++t) CHECK(a.pairs(t) == b.pairs(t));
}

TEST_CASE("S_direct and S_via_moments examples") {
  CHECK(S_direct(0, 0, 1, 5) == 5);
  CHECK(S_direct(2, 1, 2, 5) == 10);
  CHECK(S_direct(0, 1, 4, 25) == S_via_moments(0, 1, 4, 5, 2));
  CHECK(S_via_moments(0, 0, 1, 5, 1) == 5);
  CHECK(S_via_moments(2, 1, 2, 5, 1) == 10);
  CHECK(S_via_moments(0, 1, 3, 5, 2) == S_direct(0, 1, 3, 25));
  CHECK_THROWS_AS(S_via_moments(0, 1, 5, 5, 1), std::invalid_argument);
}

TEST_CASE("Schoof bridge on a small grid") {
  for (std::int64_t p : {5, 7, 11, 13}) {
    const TraceMassTable table(p, 1);
    for (std::int64_t M = 1; M <= 8; ++M) {
      if (M % p == 0) continue;
      for (std::int64_t m = 0; m < M; ++m) {
        for (int k = 0; k <= 2; ++k) CHECK(2 * S_direct(k, m, M, table) == oracle::moment(k, m, M, p));
      }
    }
  }
}

TEST_CASE("rho and tilde_moment examples") {
  CHECK(rho(0, 2, 5, 4) == 1);
  CHECK(rho(1, 3, 5, 4) == -1);
  CHECK(rho(0, 0, 5, 3) == 0);
  CHECK(tilde_moment(0, 0, 1, 5, 1) == 8);
}

TEST_CASE("tilde moment plus error term gives 2 S") {
  for (std::int64_t p : {5, 7, 11, 13}) {
    for (int r = 1; r <= 2; ++r) {
      if (r == 2 && p > 11) continue;
      const TraceMassTable table(p, r);
      for (std::int64_t M = 1; M <= 8; ++M) {
        if (M % p == 0) continue;
        for (std::int64_t m = 0; m < M; ++m) {
          for (int k = 0; k <= 2; ++k) {
            CHECK(tilde_moment(k, m, M, p, r) + error_E(k, m, M, p, r) == 2 * S_direct(k, m, M, table));
          }
        }
      }
    }
  }
}

TEST_CASE("the printed indicator misses the supersingular term") {
  int differ = 0;
  for (std::int64_t M = 1; M <= 8; ++M) {
    if (M % 7 == 0) continue;
    for (std::int64_t m = 0; m < M; ++m) {
      differ += error_E(0, m, M, 7, 1, DeltaReading::AsPrinted) != error_E(0, m, M, 7, 1);
    }
  }
  CHECK(differ > 0);
}

TEST_CASE("expansions recombine to 2 S_2") {
  const auto e1 = expansion_p(1, 3, 7);
  CHECK(e1.target == 2 * S_direct(2, 1, 3, 7));
  CHECK(e1.recombined() == doctest::Approx(e1.target.get_d()).epsilon(1e-12));
  const auto e2 = expansion_p2(1, 3, 5);
  CHECK(e2.target == 2 * S_direct(2, 1, 3, 25));
  CHECK(e2.recombined() == doctest::Approx(e2.target.get_d()).epsilon(1e-12));
  for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23}) {
    for (std::int64_t M = 1; M <= 9; ++M) {
      if (M % p == 0) continue;
      for (std::int64_t m = 1; m <= M; ++m) {
        const auto a = expansion_p(m, M, p);
        CHECK(a.recombined() == doctest::Approx(a.target.get_d()).epsilon(1e-10));
        const auto b = expansion_p2(m, M, p);
        CHECK(b.recombined() == doctest::Approx(b.target.get_d()).epsilon(1e-10));
      }
    }
  }
}
