#include "hcm/eisenstein.hpp"

#include "hcm/hurwitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hcm {

std::string to_string(Eta0Reading r) {
  switch (r) {
    case Eta0Reading::OddPart: return "odd";
    case Eta0Reading::HatOddPart: return "hat-odd";
    case Eta0Reading::TildeOddPart: return "tilde-odd";
    case Eta0Reading::One: return "one";
  }
  return "?";
}

std::string to_string(PhiReading r) { return r == PhiReading::Tilde ? "tilde" : "star"; }

std::string to_string(PsiReading r) { return r == PsiReading::Corrected ? "corrected" : "as-printed"; }

Eta0Reading parse_eta0(const std::string& s) {
  for (auto r : {Eta0Reading::OddPart, Eta0Reading::HatOddPart, Eta0Reading::TildeOddPart, Eta0Reading::One}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown eta0 reading: " + s);
}

PhiReading parse_phi(const std::string& s) {
  if (s == "tilde") return PhiReading::Tilde;
  if (s == "star") return PhiReading::Star;
  throw std::invalid_argument("unknown phi reading: " + s);
}

PsiReading parse_psi(const std::string& s) {
  if (s == "corrected") return PsiReading::Corrected;
  if (s == "as-printed") return PsiReading::AsPrinted;
  throw std::invalid_argument("unknown psi reading: " + s);
}

std::string Interpretation::describe() const {
  return "eta0=" + to_string(eta0) + " phi=" + to_string(phi) + " psi=" + to_string(psi);
}

std::int64_t reduce_m(std::int64_t m, std::int64_t M) {
  if (m == 0) throw std::invalid_argument("m must be nonzero");
  if (M < 1) throw std::invalid_argument("M must be positive");
  const std::int64_t r = mod(m, M);
  return r == 0 ? M : r;
}

namespace {

void check_d(const DirichletCharacter& eta, std::int64_t M, std::int64_t d) {
  const std::int64_t N = eta.modulus();
  if (M % N != 0) throw std::invalid_argument("conductor does not divide M");
  if (d < 1 || (M / N) * (M / N) % d != 0) throw std::invalid_argument("d does not divide M^2/N^2");
}

}  // namespace

bool in_S(const DirichletCharacter& eta, std::int64_t m, std::int64_t M, std::int64_t d) {
  m = reduce_m(m, M);
  check_d(eta, M, d);
  const auto parts = quad_decomp(eta);
  const std::int64_t N = eta.modulus();
  for (auto p : prime_divisors(M)) {
    const std::int64_t dp = p_part(d, p), mp = p_part(m, p), Mp = p_part(M, p);
    if (N % p != 0) {
      if ((p != 2 || Mp >= 2 * mp) && (p * p * mp * mp) % dp != 0) return false;
    } else if (parts.hat.modulus() % p == 0) {
      const std::int64_t Np = p_part(N, p);
      if ((p * p * mp * mp) % (dp * Np * Np) != 0 || !is_square(dp)) return false;
    } else {
      const std::int64_t four_p = p == 2 ? 4 : 1;
      if (four_p * dp != mp * mp) return false;
    }
  }
  return true;
}

Rational psi(std::int64_t d, std::int64_t m, std::int64_t p, std::int64_t M, PsiReading reading) {
  m = reduce_m(m, M);
  const std::int64_t dp = p_part(d, p), mp = p_part(m, p), Mp = p_part(M, p);
  const std::int64_t m2 = mp * mp;
  const Rational inv_p2 = make_rational(1, p * p);
  const Rational mid = (1 < dp && dp < Mp * Mp) ? inv_p2 : Rational(0);
  if (dp < m2 && is_square(dp)) return 1 + mid;
  if (dp < m2 && dp % p == 0 && is_square(dp / p)) {
    // The printed case reads -1 + 1/p; only -1 - 1/p makes the residuals vanish.
    return reading == PsiReading::Corrected ? make_rational(-(p + 1), p) : make_rational(-(p - 1), p);
  }
  if (dp == m2) return 1 + mid - (mp < Mp ? make_rational(1, p * p - p) : Rational(0));
  if (dp == p * m2) return -1 + make_rational(p * p + 1, p * p - p);
  if (dp == p * p * m2) return 1 - make_rational(p * p, p * p - p);
  throw std::invalid_argument("psi: no case applies to d_p = " + std::to_string(dp) + ", m_p = " + std::to_string(mp));
}

namespace {

std::int64_t eta0_modulus(const DirichletCharacter& eta, Eta0Reading reading) {
  switch (reading) {
    case Eta0Reading::OddPart: return odd_part(eta.modulus());
    case Eta0Reading::HatOddPart: return odd_part(quad_decomp(eta).hat.modulus());
    case Eta0Reading::TildeOddPart: return odd_part(quad_decomp(eta).tilde.modulus());
    case Eta0Reading::One: return 1;
  }
  return 1;
}

}  // namespace

Complex phi2(const DirichletCharacter& eta, Eta0Reading reading) {
  const DirichletCharacter prim = eta.primitive();
  const LocalCharacter* eta2 = prim.local(2);
  if (eta2 == nullptr) return {1.0, 0.0};
  if (eta2->order() == 2) {
    if (eta2->e == 3 && eta2->a == 0 && eta2->b == 1) return {1.0, 0.0};
    return Complex(0.0, -1.0) * eps(eta0_modulus(prim, reading)).pow(2).value();
  }
  return Complex(1.0, 0.0) + eta2->eval(1 + eta2->modulus() / 4).value();
}

Complex coeff_a(const DirichletCharacter& eta, std::int64_t d, std::int64_t m, std::int64_t M,
                const Interpretation& interp) {
  m = reduce_m(m, M);
  if (!in_S(eta, m, M, d)) throw std::invalid_argument("coeff_a: d is not admissible");
  const auto [hat, tilde] = quad_decomp(eta);
  const DirichletCharacter star = star_char(eta);
  const std::int64_t N = eta.modulus();
  const std::int64_t g = gcd(4 * d, m * m);

  const RootOfUnity den_tilde = tilde.eval(m * m / g);
  const RootOfUnity den_hat = hat.eval(squarefree_part(m * m / g));
  if (den_tilde.is_zero() || den_hat.is_zero()) throw std::domain_error("coeff_a: vanishing character in denominator");

  const Complex num = eps(eta0_modulus(eta, interp.eta0)).pow(3).value() * eta.eval(4 * d / g).value() *
                      star.eval(hat.modulus()).value() * phi2(eta, interp.eta0) * gauss_sum(star);
  const std::int64_t phi_n = euler_phi(interp.phi == PhiReading::Tilde ? tilde.modulus() : star.modulus());
  const Complex den = den_tilde.value() * den_hat.value() * static_cast<double>(phi_n) * gauss_sum(eta);

  const std::int64_t root = isqrt(d / squarefree_part(d));
  Complex out = num / den * (static_cast<double>(root) / std::sqrt(static_cast<double>(N)));

  Rational local = 1;
  for (auto p : prime_divisors(M)) {
    if (N % p != 0) local *= psi(d, m, p, M, interp.psi);
  }
  for (auto p : prime_divisors(hat.modulus())) {
    const std::int64_t Np = p_part(N, p), mp = p_part(m, p);
    if (p_part(d, p) * Np * Np == p * p * mp * mp) local /= (1 - p);
  }
  return out * local.get_d();
}

Rational prefactor(std::int64_t M) {
  if (M < 1) throw std::invalid_argument("prefactor needs M >= 1");
  Rational out = make_rational(2, M);
  for (auto p : prime_divisors(M)) out /= (1 - make_rational(1, p * p));
  return out;
}

Complex sigma_twisted(const DirichletCharacter& eta, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sigma_twisted needs n >= 1");
  Complex out{0.0, 0.0};
  for (auto d : divisors(n)) {
    const RootOfUnity v = eta.eval(n / d) * eta.eval(d);
    if (!v.is_zero()) out += v.value() * static_cast<double>(d);
  }
  return out;
}

MainTermExpansion::MainTermExpansion(std::int64_t m, std::int64_t M, const Interpretation& interp)
    : m_(reduce_m(m, M)), M_(M), prefactor_(prefactor(M)) {
  for (const auto& eta : primitive_chars_dividing(M)) {
    const std::int64_t q = M / eta.modulus();
    for (auto d : divisors(q * q)) {
      if (in_S(eta, m_, M_, d)) terms_.push_back({eta, d, coeff_a(eta, d, m_, M_, interp)});
    }
  }
}

Complex MainTermExpansion::evaluate_complex(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("main term needs n >= 1");
  Complex sum{0.0, 0.0};
  for (const auto& t : terms_) {
    if (n % t.d == 0) sum += t.coefficient * sigma_twisted(t.eta, n / t.d);
  }
  return sum * prefactor_.get_d();
}

double MainTermExpansion::evaluate(std::int64_t n) const {
  const Complex v = evaluate_complex(n);
  if (std::abs(v.imag()) >= 1e-9) {
    throw std::runtime_error("main term has imaginary part " + std::to_string(v.imag()) + " at (m, M, n) = (" +
                             std::to_string(m_) + ", " + std::to_string(M_) + ", " + std::to_string(n) + ")");
  }
  return v.real();
}

Complex MainTermExpansion::unit_coefficient(std::int64_t x, int power) const {
  Complex sum{0.0, 0.0};
  for (const auto& t : terms_) {
    if (t.d == 1) sum += t.coefficient * t.eta.eval(x).pow(power).value();
  }
  return sum * prefactor_.get_d();
}

double main_term(std::int64_t m, std::int64_t M, std::int64_t n, const Interpretation& interp) {
  return MainTermExpansion(m, M, interp).evaluate(n);
}

double cusp_residual_0(std::int64_t m, std::int64_t M, std::int64_t n, const Interpretation& interp) {
  const Rational exact = moment_H(0, m, M, n) + lambda_km(0, m, M, n);
  return exact.get_d() - main_term(m, M, n, interp);
}

std::vector<ResidualRow> residual_series(std::int64_t m, std::int64_t M, std::int64_t max_n,
                                         const Interpretation& interp, int threads) {
  const MainTermExpansion expansion(m, M, interp);
  const auto table = shared_hurwitz_table(4 * std::max<std::int64_t>(max_n, 1));
  std::vector<ResidualRow> rows(static_cast<std::size_t>(std::max<std::int64_t>(max_n, 0)));
  auto fill = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < rows.size(); i += step) {
      const auto n = static_cast<std::int64_t>(i) + 1;
      ResidualRow& row = rows[i];
      row.n = n;
      row.moment = moment_H(0, m, M, n, *table);
      row.lambda = lambda_km(0, m, M, n);
      row.main_term = expansion.evaluate(n);
      row.residual = Rational(row.moment + row.lambda).get_d() - row.main_term;
    }
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    fill(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          fill(static_cast<std::size_t>(w), static_cast<std::size_t>(threads));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return rows;
}

std::vector<DirichletCharacter> S_set(std::int64_t m, std::int64_t M) {
  m = reduce_m(m, M);
  std::vector<DirichletCharacter> out;
  for (const auto& eta : primitive_chars_dividing(M)) {
    bool ok = true;
    for (const auto& l : eta.locals()) {
      const std::int64_t p = l.p, mp = p_part(m, p);
      if (l.order() == 2) {
        ok = l.modulus() <= p * p * mp * mp;
      } else {
        ok = (p != 2 && m % p != 0) || (p == 2 && m % 4 == 2);
      }
      if (!ok) break;
    }
    if (ok) out.push_back(eta);
  }
  return out;
}

std::vector<DirichletCharacter> S_set_admissible(std::int64_t m, std::int64_t M) {
  std::vector<DirichletCharacter> out;
  for (const auto& eta : primitive_chars_dividing(M)) {
    if (in_S(eta, m, M, 1)) out.push_back(eta);
  }
  return out;
}

SSetComparison compare_S_sets(std::int64_t m, std::int64_t M) {
  const auto prose = S_set(m, M);
  const auto admissible = S_set_admissible(m, M);
  auto contains = [](const std::vector<DirichletCharacter>& v, const DirichletCharacter& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  SSetComparison out;
  for (const auto& eta : prose) {
    if (!contains(admissible, eta)) out.only_in_prose.push_back(eta);
  }
  for (const auto& eta : admissible) {
    if (!contains(prose, eta)) out.only_admissible.push_back(eta);
  }
  return out;
}

}  // namespace hcm
