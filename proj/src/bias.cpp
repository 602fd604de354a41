#include "hcm/bias.hpp"

#include "hcm/hurwitz.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace hcm {

namespace {

// Representative of m in [1, M]; unlike reduce_m this accepts m = 0.
std::int64_t representative(std::int64_t m, std::int64_t M) {
  const std::int64_t r = mod(m, M);
  return r == 0 ? M : r;
}

void check_unit(std::int64_t x, std::int64_t M) {
  if (gcd(x, M) != 1) throw std::invalid_argument("delta_star needs gcd(x, M) = 1");
}

int count_pm(std::int64_t v, std::int64_t m, std::int64_t M) {
  const bool plus = mod(v - m, M) == 0;
  const bool minus = mod(v + m, M) == 0;
  if (plus && minus) return 2;
  if ((plus || minus) && mod(2 * m, M) != 0) return 1;
  return 0;
}

void check_tiny_imag(const Complex& z, const char* what) {
  if (std::abs(z.imag()) >= 1e-9) {
    throw std::runtime_error(std::string(what) + ": imaginary part " + std::to_string(z.imag()));
  }
}

}  // namespace

int delta_star(std::int64_t x, std::int64_t m, std::int64_t M) {
  check_unit(x, M);
  return count_pm(x + 1, m, M);
}

int delta_star_sq(std::int64_t x, std::int64_t m, std::int64_t M) {
  check_unit(x, M);
  return count_pm(2 * x, m, M);
}

Rational A1_first_term(std::int64_t m, std::int64_t M) {
  if (M < 1) throw std::invalid_argument("M must be positive");
  Rational out = 2;
  for (auto p : prime_divisors(M)) {
    const Rational drop = m % p != 0 ? make_rational(1, p * p - p) : Rational(0);
    out *= (1 - drop) / (1 + make_rational(1, p));
  }
  return out;
}

Rational A1_closed(std::int64_t m, std::int64_t M) {
  const Rational first = A1_first_term(m, M);
  const int deltas = (gcd(m - 1, M) == 1 ? 1 : 0) + (gcd(m + 1, M) == 1 ? 1 : 0);
  return (first - deltas) / (2 * euler_phi(M));
}

double A1_chars(std::int64_t m, std::int64_t M, const Interpretation& interp) {
  const MainTermExpansion expansion(representative(m, M), M, interp);
  double sum = 0.0;
  for (std::int64_t x = 1; x <= M; ++x) {
    if (gcd(x, M) != 1) continue;
    const Complex c = expansion.unit_coefficient(x);
    check_tiny_imag(c, "A1_chars");
    sum += c.real() - delta_star(x, m, M);
  }
  return sum / (2.0 * static_cast<double>(euler_phi(M)));
}

Rational A2_closed(std::int64_t m, std::int64_t M) {
  if (M < 3) throw std::invalid_argument("A2 needs M >= 3");
  Rational product = 2;
  for (auto q : prime_divisors(M)) {
    if (q == 2) {
      Rational local = 1;
      if (m % 2 != 0) local -= make_rational(1, 2);
      if (M % 4 == 0 && m % 2 == 0) local += make_rational(mod(m, 4) == 2 ? 1 : -1, 4);
      product *= make_rational(2, 3) * local;
    } else {
      const int chi = kronecker(-1, q);
      product *= m % q != 0 ? make_rational(q * q - q - 1 - chi, q * q - 1) : make_rational(q + chi, q + 1);
    }
  }
  // Residue averages of delta_star_sq and of H_{2, x^{-1} m, M}(1).
  std::int64_t halves = 0;
  for (std::int64_t x = 1; x <= M; ++x) {
    if (gcd(x, M) == 1 && mod(2 * x - m, M) == 0) ++halves;
  }
  const Rational eps = make_rational(-4, 3) * halves - (gcd(m, M) == 1 ? make_rational(2, 3) : Rational(0));
  return (product + eps) / (2 * euler_phi(M));
}

double A2_printed(std::int64_t m, std::int64_t M, const Interpretation& interp) {
  if (M < 3) throw std::invalid_argument("A2 needs M >= 3");
  const std::int64_t mr = representative(m, M);
  double product = 2.0;
  for (auto q : prime_divisors(M)) product *= static_cast<double>(q * q - q - 1) / static_cast<double>(q * q - 1);
  Complex sum{0.0, 0.0};
  for (const auto& eta : S_set_admissible(mr, M)) {
    if (eta.order() > 2) continue;
    const std::int64_t N = eta.modulus();
    const double sign = prime_divisors(N).size() % 2 ? -1.0 : 1.0;
    Complex term = sign * eps(odd_part(N)).pow(3).value() * phi2(eta, interp.eta0) /
                   (gauss_sum(eta) * std::sqrt(static_cast<double>(N)));
    for (auto q : prime_divisors(mr * N)) term *= static_cast<double>(q) / static_cast<double>(q * q - q - 1);
    sum += term;
  }
  double eps_mM = 0.0;
  if (M % 2 == 1 && gcd(mr, M) == 1) {
    eps_mM = -2.0;
  } else if (M % 2 == 0 && mr % 2 == 0 && gcd(mr / 2, M / 2) == 1) {
    eps_mM = -4.0 / 3.0;
  } else if (M % 2 == 0 && mr % 2 == 1 && gcd(mr, M) == 1) {
    eps_mM = -2.0 / 3.0;
  }
  return (product * sum.real() + eps_mM) / (2.0 * static_cast<double>(euler_phi(M)));
}

double A2_chars(std::int64_t m, std::int64_t M, const Interpretation& interp) {
  if (M < 3) throw std::invalid_argument("A2 needs M >= 3");
  const MainTermExpansion expansion(representative(m, M), M, interp);
  double sum = 0.0;
  for (std::int64_t x = 1; x <= M; ++x) {
    if (gcd(x, M) != 1) continue;
    const Complex c = expansion.unit_coefficient(x, 2);
    check_tiny_imag(c, "A2_chars");
    const Rational h2 = moment_H(2, inverse_mod(x, M) * m, M, 1);
    sum += c.real() - delta_star_sq(x, m, M) - h2.get_d();
  }
  return sum / (2.0 * static_cast<double>(euler_phi(M)));
}

std::vector<SignPrediction> sign_rules(std::int64_t m, std::int64_t M) {
  if (M < 1) throw std::invalid_argument("M must be positive");
  std::vector<SignPrediction> out;
  if (M == 1) {
    out.push_back({"A1", "M = 1: the average vanishes", 0});
    return out;
  }
  out.push_back({"A1", "M > 1: the average is nonzero", 0});
  const auto primes = prime_divisors(M);
  if (primes.size() == 1 && primes[0] != 2) {
    const std::int64_t p = primes[0];
    const bool pm1 = mod(m - 1, p) == 0 || mod(m + 1, p) == 0;
    out.push_back({"A1", "odd prime power M: positive iff m = +-1 mod p", pm1 ? 1 : -1});
  }
  if (M % 6 == 0) {
    const bool coprime = gcd(m - 1, M) == 1 || gcd(m + 1, M) == 1;
    out.push_back({"A1", "6 | M: negative iff gcd(m-1, M) = 1 or gcd(m+1, M) = 1", coprime ? -1 : 1});
  }
  if (M >= 3 && M % 4 != 0) {
    out.push_back({"A2", "M >= 3, 4 does not divide M: negative iff gcd(m, M_odd) = 1",
                   gcd(m, odd_part(M)) == 1 ? -1 : 1});
  }
  return out;
}

std::vector<ScanRow> scan_A1(std::int64_t X, int threads) {
  if (X < 1) throw std::invalid_argument("scan needs X >= 1");
  std::vector<std::vector<ScanRow>> per_M(static_cast<std::size_t>(X) + 1);
  auto work = [&](std::int64_t begin, std::int64_t step) {
    for (std::int64_t M = begin; M <= X; M += step) {
      auto& rows = per_M[M];
      rows.reserve(static_cast<std::size_t>(M));
      for (std::int64_t m = 1; m <= M; ++m) rows.push_back({m, M, A1_closed(m, M)});
    }
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    work(1, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, 1 + w, threads);
    for (auto& t : pool) t.join();
  }
  std::vector<ScanRow> out;
  out.reserve(static_cast<std::size_t>(X * (X + 1) / 2));
  for (auto& rows : per_M) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  return out;
}

DensityReport density_from(const std::vector<ScanRow>& rows, std::int64_t X) {
  DensityReport report;
  report.X = X;
  for (const auto& r : rows) {
    const int s = sign(r.a1);
    if (s > 0) {
      ++report.positive;
    } else if (s < 0) {
      ++report.negative;
    } else {
      ++report.zero;
    }
  }
  return report;
}

DensityReport density_scan(std::int64_t X, int threads) { return density_from(scan_A1(X, threads), X); }

double empirical_A1(std::int64_t m, std::int64_t M, std::int64_t X, const Interpretation& interp) {
  const MainTermExpansion expansion(representative(m, M), M, interp);
  std::vector<double> summand(static_cast<std::size_t>(M), 0.0);
  for (std::int64_t x = 0; x < M; ++x) {
    if (gcd(x, M) != 1) continue;
    summand[x] = (expansion.unit_coefficient(x).real() - delta_star(x, m, M)) / 2.0;
  }
  double sum = 0.0;
  std::int64_t count = 0;
  for (auto p : primes_up_to(X)) {
    if (M % p == 0) continue;
    sum += summand[mod(p, M)];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("empirical_A1: no primes up to X");
  return sum / static_cast<double>(count);
}

}  // namespace hcm
