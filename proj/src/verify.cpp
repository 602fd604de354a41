#include "hcm/verify.hpp"

#include "hcm/bias.hpp"
#include "hcm/frobenius.hpp"
#include "hcm/hurwitz.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

namespace hcm {

void VerifySuiteReport::check(bool ok, const std::string& inputs, const std::string& expected,
                              const std::string& got) {
  ++checks;
  if (ok) return;
  ++failed;
  if (failures.size() < kMaxRecorded) failures.push_back({inputs, expected, got});
}

namespace {

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string args(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ' ';
    out += k;
    out += '=';
    out += std::to_string(v);
  }
  return out;
}

void check_runtime(VerifySuiteReport& r, double seconds, double limit) {
  r.check(seconds < limit, "runtime", "< " + real(limit) + " s", real(seconds) + " s");
}

bool odd_prime_power(std::int64_t M) {
  if (M < 3 || M % 2 == 0) return false;
  return prime_divisors(M).size() == 1;
}

void suite_kronecker_hurwitz(VerifySuiteReport& r, const VerifyOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const HurwitzTable table(4 * 997, o.threads);
  for (auto p : primes_up_to(999)) {
    std::int64_t sum12 = 0;
    for (std::int64_t t = -isqrt(4 * p); t * t <= 4 * p; ++t) sum12 += table.scaled(4 * p - t * t);
    r.check(sum12 == 24 * p, args({{"p", p}}), std::to_string(2 * p), to_string(make_rational(sum12, 12)));
  }
  check_runtime(r, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
}

void suite_progressions(VerifySuiteReport& r, const VerifyOptions& o) {
  const HurwitzTable table(4 * 997, o.threads);
  for (auto p : primes_up_to(999)) {
    if (p == 2) continue;
    const Rational h0 = moment_H(0, 0, 2, p, table);
    const Rational h1 = moment_H(0, 1, 2, p, table);
    const Rational e0 = make_rational(4 * p - 2, 3);
    const Rational e1 = make_rational(2 * p + 2, 3);
    r.check(h0 == e0, args({{"m", 0}, {"M", 2}, {"p", p}}), to_string(e0), to_string(h0));
    r.check(h1 == e1, args({{"m", 1}, {"M", 2}, {"p", p}}), to_string(e1), to_string(h1));
  }
}

void suite_t_coeff(VerifySuiteReport& r, const VerifyOptions&) {
  for (int k = 1; k <= 40; ++k) {
    for (int mu = 0; 2 * mu <= k - 1; ++mu) {
      const BigInt closed = T_coeff(k, mu);
      const BigInt rec = T_coeff_rec(k, mu);
      r.check(closed == rec, args({{"k", k}, {"mu", mu}}), to_string(rec), to_string(closed));
    }
  }
  for (int mu = 1; mu <= 10; ++mu) {
    for (int k = 2 * mu + 1; k <= 30; ++k) {
      const BigInt s = factorial_identity_sum(k, mu);
      r.check(s == 0, args({{"k", k}, {"mu", mu}}), "0", to_string(s));
    }
  }
}

void suite_gauss(VerifySuiteReport& r, const VerifyOptions&) {
  std::set<int> cases;
  for (std::int64_t c = 1; c <= 60; ++c) {
    for (std::int64_t a = 0; a < c; ++a) {
      for (std::int64_t b = 0; b < c; ++b) {
        const Complex closed = gauss_quad_closed(a, b, c);
        const Complex direct = gauss_quad_direct(a, b, c);
        r.check(std::abs(closed - direct) < 1e-9, args({{"a", a}, {"b", b}, {"c", c}}),
                real(direct.real()) + "+" + real(direct.imag()) + "i",
                real(closed.real()) + "+" + real(closed.imag()) + "i");
        if (c > 1 && gcd(a, c) > 1) {
          cases.insert(0);
        } else if (c % 2 == 1) {
          cases.insert(1);
        } else {
          cases.insert(c % 4 == 2 ? 2 : 3);
        }
      }
    }
  }
  r.check(cases.size() == 4, "cases exercised", "4", std::to_string(cases.size()));
}

bool expected_vanishing(std::int64_t m, std::int64_t M) {
  return M <= 5 || (M == 8 && (m == 2 || m == 6));
}

void suite_eisenstein(VerifySuiteReport& r, const VerifyOptions& o) {
  for (std::int64_t M = 1; M <= 9; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      double w = 0.0;
      for (const auto& row : residual_series(m, M, 500, o.interp, o.threads)) w = std::max(w, std::abs(row.residual));
      const bool vanishes = w < 1e-6;
      r.check(vanishes == expected_vanishing(m, M), args({{"m", m}, {"M", M}, {"max_n", 500}}),
              expected_vanishing(m, M) ? "max |residual| < 1e-6" : "max |residual| >= 1e-6",
              "max |residual| = " + real(w));
    }
  }
  for (auto [m, M] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 6}, {1, 7}, {3, 8}, {1, 9}}) {
    double w = 0.0;
    for (std::int64_t n = 1; n <= 100; ++n) w = std::max(w, std::abs(cusp_residual_0(m, M, n, o.interp)));
    r.check(w > 1e-3, args({{"m", m}, {"M", M}, {"max_n", 100}}), "some |residual| > 1e-3",
            "max |residual| = " + real(w));
  }
  r.notes.push_back("interpretation " + o.interp.describe());
}

void suite_boundary(VerifySuiteReport& r, const VerifyOptions&) {
  for (std::int64_t M = 6; M <= 30; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      Rational expected = 0;
      if (m == M) {
        expected = make_rational(1, 2);
      } else if (m == 1 || m == M - 1) {
        expected = make_rational(1, 3);
      } else if (m == 2 || m == M - 2) {
        expected = make_rational(5, 12);
      }
      const Rational got = moment_H(0, m, M, 1) + lambda_km(0, m, M, 1);
      r.check(got == expected, args({{"m", m}, {"M", M}}), to_string(expected), to_string(got));
    }
  }
}

void suite_schoof(VerifySuiteReport& r, const VerifyOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  auto grid = [&](std::int64_t p, int rr) {
    const TraceMassTable table(p, rr, o.threads);
    for (std::int64_t M = 1; M <= 8; ++M) {
      if (M % p == 0) continue;
      for (std::int64_t m = 0; m < M; ++m) {
        for (int k = 0; k <= 2; ++k) {
          const Rational direct = S_direct(k, m, M, table);
          const Rational moments = S_via_moments(k, m, M, p, rr);
          r.check(direct == moments, args({{"k", k}, {"m", m}, {"M", M}, {"p", p}, {"r", rr}}),
                  to_string(Rational(2 * moments)), to_string(Rational(2 * direct)));
        }
      }
    }
  };
  for (auto p : primes_up_to(47)) {
    if (p >= 5) grid(p, 1);
  }
  for (std::int64_t p : {5, 7, 11}) grid(p, 2);
  for (std::int64_t q : {5, 7, 11, 13, 25, 49, 121}) {
    const Rational total = trace_mass_table(q, o.threads).total_mass();
    r.check(total == q, args({{"q", q}}), std::to_string(q), to_string(total));
  }
  check_runtime(r, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
}

void suite_higher_moments(VerifySuiteReport& r, const VerifyOptions&) {
  for (int k = 1; k <= 6; ++k) {
    for (std::int64_t M = 1; M <= 6; ++M) {
      for (std::int64_t m = 0; m < M; ++m) {
        for (std::int64_t n = 1; n <= 200; ++n) {
          const Rational direct = moment_H(k, m, M, n);
          const Rational reduced = moment_via_reduction(k, m, M, n);
          r.check(direct == reduced, args({{"k", k}, {"m", m}, {"M", M}, {"n", n}}), to_string(direct),
                  to_string(reduced));
        }
      }
    }
  }
}

void suite_bias_routes(VerifySuiteReport& r, const VerifyOptions& o) {
  for (std::int64_t M = 1; M <= 36; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const double closed = A1_closed(m, M).get_d();
      const double chars = A1_chars(m, M, o.interp);
      r.check(std::abs(closed - chars) < 1e-9, "A1 " + args({{"m", m}, {"M", M}}), real(closed), real(chars));
    }
  }
  for (std::int64_t M = 3; M <= 30; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const double closed = A2_closed(m, M).get_d();
      const double chars = A2_chars(m, M, o.interp);
      r.check(std::abs(closed - chars) < 1e-9, "A2 " + args({{"m", m}, {"M", M}}), real(closed), real(chars));
    }
  }
  const struct {
    const char* name;
    std::function<Rational(std::int64_t, std::int64_t)> f;
    std::int64_t m, M;
    Rational want;
  } spots[] = {{"A1", A1_closed, 1, 3, make_rational(1, 16)},
               {"A1", A1_closed, 2, 5, make_rational(-5, 96)},
               {"A2", A2_closed, 1, 3, make_rational(-1, 8)}};
  for (const auto& s : spots) {
    const Rational got = s.f(s.m, s.M);
    r.check(got == s.want, std::string(s.name) + " " + args({{"m", s.m}, {"M", s.M}}), to_string(s.want),
            to_string(got));
  }
}

std::string sign_name(int s) { return s > 0 ? "positive" : s < 0 ? "negative" : "zero"; }

void suite_signs(VerifySuiteReport& r, const VerifyOptions&) {
  for (std::int64_t M = 1; M <= 500; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const int s = sign(A1_closed(m, M));
      const int want = M == 1 ? 0 : s == 0 ? 1 : s;
      r.check(s == want, "A1 zero iff M = 1: " + args({{"m", m}, {"M", M}}), M == 1 ? "zero" : "nonzero",
              sign_name(s));
    }
  }
  for (std::int64_t M = 3; M <= 343; ++M) {
    if (!odd_prime_power(M)) continue;
    const std::int64_t p = prime_divisors(M)[0];
    for (std::int64_t m = 1; m <= M; ++m) {
      const int want = mod(m - 1, p) == 0 || mod(m + 1, p) == 0 ? 1 : -1;
      const int s = sign(A1_closed(m, M));
      r.check(s == want, "A1 odd prime power: " + args({{"m", m}, {"M", M}}), sign_name(want), sign_name(s));
    }
  }
  for (std::int64_t M = 6; M <= 300; M += 6) {
    for (std::int64_t m = 1; m <= M; ++m) {
      const int want = gcd(m - 1, M) == 1 || gcd(m + 1, M) == 1 ? -1 : 1;
      const int s = sign(A1_closed(m, M));
      r.check(s == want, "A1 6 | M: " + args({{"m", m}, {"M", M}}), sign_name(want), sign_name(s));
    }
  }
  for (std::int64_t M = 3; M <= 200; ++M) {
    if (M % 4 == 0) continue;
    for (std::int64_t m = 1; m <= M; ++m) {
      const int want = gcd(m, odd_part(M)) == 1 ? -1 : 1;
      const double a2 = A2_closed(m, M).get_d();
      const int s = std::abs(a2) > 1e-9 ? (a2 > 0 ? 1 : -1) : 0;
      r.check(s == want, "A2 4 does not divide M: " + args({{"m", m}, {"M", M}}), sign_name(want),
              sign_name(s) + " (" + real(a2) + ")");
    }
  }
}

void suite_density(VerifySuiteReport& r, const VerifyOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const DensityReport d = density_scan(1000, o.threads);
  const double pos = d.positive_fraction();
  const double neg = d.negative_fraction();
  r.check(std::abs(pos - 0.44) <= 0.01, "X=1000 positive fraction", "0.44 +- 0.01", real(pos));
  r.check(std::abs(neg - 0.56) <= 0.01, "X=1000 negative fraction", "0.56 +- 0.01", real(neg));
  r.check(pos >= 0.25, "X=1000 positive fraction lower bound", ">= 0.25", real(pos));
  const double lower = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
  r.check(neg >= lower, "X=1000 negative fraction lower bound", ">= " + real(lower), real(neg));
  check_runtime(r, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 30.0);
  r.notes.push_back("pairs " + std::to_string(d.total()) + ", positive " + std::to_string(d.positive) + ", zero " +
                    std::to_string(d.zero) + ", negative " + std::to_string(d.negative));
}

void suite_equidistribution(VerifySuiteReport& r, const VerifyOptions& o) {
  for (auto [m, M] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 3}, {2, 5}, {1, 4}, {3, 8}}) {
    const double closed = A1_closed(m, M).get_d();
    const double emp = empirical_A1(m, M, 100'000, o.interp);
    r.check(std::abs(emp - closed) < 0.02, args({{"m", m}, {"M", M}, {"X", 100'000}}), real(closed) + " +- 0.02",
            real(emp));
  }
}

struct SuiteEntry {
  const char* name;
  const char* summary;
  void (*run)(VerifySuiteReport&, const VerifyOptions&);
};

const SuiteEntry kSuites[] = {
    {"kronecker-hurwitz", "sum_t H(4p - t^2) = 2p for primes p < 1000", suite_kronecker_hurwitz},
    {"progressions", "H_{0,2}(p), H_{1,2}(p) for odd primes p < 1000", suite_progressions},
    {"t-coeff", "T(k, mu) closed form vs recursion; factorial identity", suite_t_coeff},
    {"gauss", "quadratic Gauss sums, closed form vs direct, c <= 60", suite_gauss},
    {"eisenstein", "cusp residuals vanish exactly for M <= 5, (2,8), (6,8)", suite_eisenstein},
    {"boundary", "H_{m,M}(1) + lambda_{0,m,M}(1) for 6 <= M <= 30", suite_boundary},
    {"schoof", "trace moments over F_q vs Hurwitz moments; total mass", suite_schoof},
    {"higher-moments", "higher moments from cusp coefficients, k, M <= 6, n <= 200", suite_higher_moments},
    {"bias-routes", "A1, A2 closed forms vs character sums; spot values", suite_bias_routes},
    {"signs", "sign theorems for A1 and A2", suite_signs},
    {"density", "sign densities of A1 up to X = 1000", suite_density},
    {"equidistribution", "empirical A1 over primes up to 1e5", suite_equidistribution},
};

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

VerifySuiteReport run_verify_suite(const std::string& name, const VerifyOptions& options) {
  for (const auto& s : kSuites) {
    if (name != s.name) continue;
    VerifySuiteReport report;
    report.suite = s.name;
    report.summary = s.summary;
    const auto start = std::chrono::steady_clock::now();
    try {
      s.run(report, options);
    } catch (const std::exception& e) {
      report.check(false, "exception", "no exception", e.what());
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  throw std::invalid_argument("unknown verify suite: " + name);
}

std::vector<VerifySuiteReport> run_all_suites(const VerifyOptions& options) {
  std::vector<VerifySuiteReport> out;
  for (const auto& name : verify_suite_names()) out.push_back(run_verify_suite(name, options));
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> vanishing_pairs(std::int64_t max_M, std::int64_t max_n,
                                                                   const Interpretation& interp, int threads) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t M = 1; M <= max_M; ++M) {
    for (std::int64_t m = 1; m <= M; ++m) {
      bool vanishes = true;
      try {
        for (const auto& row : residual_series(m, M, max_n, interp, threads)) {
          if (std::abs(row.residual) >= 1e-6) {
            vanishes = false;
            break;
          }
        }
      } catch (const std::runtime_error&) {
        vanishes = false;  // complex main term
      }
      if (vanishes) out.emplace_back(m, M);
    }
  }
  return out;
}

}  // namespace hcm
