#include "hcm/bias.hpp"
#include "hcm/eisenstein.hpp"
#include "hcm/hurwitz.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hcm;

namespace {

DirichletCharacter char_of_order(std::int64_t N, std::int64_t order) {
  for (const auto& chi : enumerate_chars(N)) {
    if (chi.is_primitive() && chi.order() == order) return chi;
  }
  throw std::logic_error("no such character");
}

bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) < tol; }

}  // namespace

TEST_CASE("in_S examples") {
  const DirichletCharacter one;
  CHECK(in_S(one, 1, 1, 1));
  CHECK(in_S(one, 1, 2, 4));
  CHECK(in_S(char_of_order(3, 2), 1, 3, 1));
  CHECK_THROWS_AS(in_S(one, 0, 3, 1), std::invalid_argument);
}

TEST_CASE("psi examples") {
  CHECK(psi(1, 1, 3, 3) == Rational(5, 6));
  CHECK(psi(1, 3, 3, 9) == 1);
  CHECK(psi(5, 1, 5, 5) == Rational(3, 10));
}

TEST_CASE("phi2 examples") {
  CHECK(close(phi2(DirichletCharacter()), 1.0));
  CHECK(close(phi2(DirichletCharacter::kronecker_char(8)), 1.0));
  CHECK(close(phi2(char_of_order(4, 2)), Complex(0, -1)));
}

TEST_CASE("coeff_a and prefactor examples") {
  CHECK(close(coeff_a(DirichletCharacter(), 1, 1, 1), 1.0));
  CHECK(close(coeff_a(DirichletCharacter(), 1, 1, 3), 5.0 / 6.0));
  CHECK(close(coeff_a(char_of_order(3, 2), 1, 1, 3), 1.0 / 6.0));
  CHECK(prefactor(1) == 2);
  CHECK(prefactor(3) == Rational(3, 4));
  CHECK(prefactor(2) == Rational(4, 3));
}

TEST_CASE("sigma_twisted examples") {
  CHECK(close(sigma_twisted(DirichletCharacter(), 6), 12.0));
  CHECK(close(sigma_twisted(char_of_order(4, 2), 5), 6.0));
  CHECK(close(sigma_twisted(char_of_order(3, 2), 3), 0.0));
}

TEST_CASE("main_term examples") {
  CHECK(main_term(1, 1, 1) == doctest::Approx(2.0));
  CHECK(main_term(1, 1, 6) == doctest::Approx(24.0));
  for (std::int64_t n = 1; n <= 30; ++n) {
    CHECK(main_term(1, 1, n) == doctest::Approx(2.0 * static_cast<double>(sigma1(n))));
  }
}

TEST_CASE("main term equals H + lambda for M <= 5, oracle class numbers") {
  for (std::int64_t M = 1; M <= 5; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      for (std::int64_t n = 1; n <= 60; ++n) {
        const double want = Rational(oracle::moment(0, m, M, n) + lambda_km(0, m, M, n)).get_d();
        CHECK(main_term(m, M, n) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("residual examples") {
  for (const auto& row : residual_series(1, 4, 500)) CHECK(std::abs(row.residual) < 1e-6);
  for (const auto& row : residual_series(2, 8, 500)) CHECK(std::abs(row.residual) < 1e-6);
  double worst = 0.0;
  for (std::int64_t n = 1; n <= 100; ++n) worst = std::max(worst, std::abs(cusp_residual_0(1, 7, n)));
  CHECK(worst > 1e-3);
}

TEST_CASE("residual_series is independent of the worker count") {
  const auto a = residual_series(3, 8, 300, {}, 1);
  const auto b = residual_series(3, 8, 300, {}, 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].moment == b[i].moment);
    CHECK(a[i].residual == b[i].residual);
  }
}

TEST_CASE("main term is real for M <= 12, n <= 500") {
  for (std::int64_t M = 1; M <= 12; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const MainTermExpansion e(m, M);
      for (std::int64_t n = 1; n <= 500; ++n) REQUIRE(std::abs(e.evaluate_complex(n).imag()) < 1e-9);
    }
  }
}

TEST_CASE("progression consistency: main terms over m sum to the M = 1 main term") {
  for (std::int64_t M = 2; M <= 10; ++M) {
    for (std::int64_t n = 1; n <= 120; ++n) {
      double s = 0.0;
      for (std::int64_t m = 1; m <= M; ++m) s += main_term(m, M, n);
      CHECK(s == doctest::Approx(main_term(1, 1, n)).epsilon(1e-9));
    }
  }
}

TEST_CASE("unit coefficients sum to the first bias term") {
  for (std::int64_t M = 1; M <= 36; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const MainTermExpansion e(m, M);
      Complex s = 0;
      for (std::int64_t x = 1; x <= M; ++x) {
        if (gcd(x, M) == 1) s += e.unit_coefficient(x);
      }
      CHECK(close(s, A1_first_term(m, M).get_d()));
    }
  }
}

TEST_CASE("cusp residuals grow like sqrt(n)") {
  for (std::int64_t M = 6; M <= 8; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const auto rows = residual_series(m, M, 2000, {}, 4);
      double early = 0.0, late = 0.0;
      for (const auto& r : rows) {
        const double q = std::abs(r.residual) / (static_cast<double>(num_divisors(r.n)) * std::sqrt(double(r.n)));
        late = std::max(late, q);
        if (r.n <= 200) early = std::max(early, q);
      }
      CHECK(late <= 2.0 * early + 1e-9);
    }
  }
}

TEST_CASE("expansion terms satisfy the admissibility conditions") {
  for (std::int64_t M = 1; M <= 24; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const MainTermExpansion e(m, M);
      for (const auto& t : e.terms()) {
        const std::int64_t N = t.eta.modulus();
        REQUIRE((M * M) % (N * N) == 0);
        CHECK(((M * M) / (N * N)) % t.d == 0);
        CHECK(in_S(t.eta, m, M, t.d));
      }
    }
  }
}

TEST_CASE("S sets") {
  auto s = S_set_admissible(1, 1);
  REQUIRE(s.size() == 1);
  CHECK(s[0].is_trivial());
  s = S_set_admissible(1, 3);
  CHECK(s.size() == 2);
  // The admissible set at (1, 5) also contains the two characters of order 4.
  s = S_set_admissible(1, 5);
  CHECK(s.size() == 4);
  CHECK(compare_S_sets(1, 3).agree());
}

TEST_CASE("interpretation strings round-trip") {
  for (auto r : {Eta0Reading::OddPart, Eta0Reading::HatOddPart, Eta0Reading::TildeOddPart, Eta0Reading::One}) {
    CHECK(parse_eta0(to_string(r)) == r);
  }
  for (auto r : {PhiReading::Tilde, PhiReading::Star}) CHECK(parse_phi(to_string(r)) == r);
  for (auto r : {PsiReading::Corrected, PsiReading::AsPrinted}) CHECK(parse_psi(to_string(r)) == r);
  CHECK_THROWS_AS(parse_phi("bogus"), std::invalid_argument);
}
