// Averages of the size-p and size-p^3 coefficients in the second moments of
// Frobenius traces: closed forms, the same averages assembled from character
// sums, sign predictions and density scans.

#pragma once

#include "hcm/eisenstein.hpp"

#include <string>
#include <vector>

namespace hcm {

// Number of the congruences x + 1 = m, x + 1 = -m (mod M) that hold.
int delta_star(std::int64_t x, std::int64_t m, std::int64_t M);
// Number of the congruences 2x = m, 2x = -m (mod M) that hold.
int delta_star_sq(std::int64_t x, std::int64_t m, std::int64_t M);

// 2 prod_{p | M} (1 - [p does not divide m]/(p^2 - p)) / (1 + 1/p).
Rational A1_first_term(std::int64_t m, std::int64_t M);
Rational A1_closed(std::int64_t m, std::int64_t M);
double A1_chars(std::int64_t m, std::int64_t M, const Interpretation& interp = {});

// Exact residue average of the p^3 coefficient, in closed form (M >= 3).
Rational A2_closed(std::int64_t m, std::int64_t M);
// The printed closed form, evaluated term by term; kept as a diagnostic since
// it disagrees with the character route for most (m, M).
double A2_printed(std::int64_t m, std::int64_t M, const Interpretation& interp = {});
double A2_chars(std::int64_t m, std::int64_t M, const Interpretation& interp = {});

struct SignPrediction {
  std::string average;  // "A1" or "A2"
  std::string rule;
  int sign = 0;
};

// Every sign theorem that applies to (m, M), with its verdict.
std::vector<SignPrediction> sign_rules(std::int64_t m, std::int64_t M);

struct DensityReport {
  std::int64_t X = 0;
  std::int64_t positive = 0;
  std::int64_t zero = 0;
  std::int64_t negative = 0;

  std::int64_t total() const { return positive + zero + negative; }
  double positive_fraction() const { return static_cast<double>(positive) / static_cast<double>(total()); }
  double zero_fraction() const { return static_cast<double>(zero) / static_cast<double>(total()); }
  double negative_fraction() const { return static_cast<double>(negative) / static_cast<double>(total()); }
};

struct ScanRow {
  std::int64_t m = 0;
  std::int64_t M = 0;
  Rational a1;
};

// A1_closed for all 1 <= m <= M <= X; the M-range is split across workers.
std::vector<ScanRow> scan_A1(std::int64_t X, int threads = 1);
DensityReport density_scan(std::int64_t X, int threads = 1);
DensityReport density_from(const std::vector<ScanRow>& rows, std::int64_t X);

// Average of (sum_eta a(eta,1) eta(p) - delta_star(p)) / 2 over primes p <= X, p not dividing M.
double empirical_A1(std::int64_t m, std::int64_t M, std::int64_t X, const Interpretation& interp = {});

}  // namespace hcm
