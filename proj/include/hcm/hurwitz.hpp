// Hurwitz class numbers, their moments over arithmetic progressions, the
// lambda correction sums and the coefficients that reduce higher moments to
// cusp form coefficients.

#pragma once

#include "hcm/arith.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace hcm {

// H(D) by reduced-form enumeration. H(0) = -1/12, H(D) = 0 for D < 0 or D = 1, 2 mod 4.
Rational hurwitz_H(std::int64_t D);
// 12 * H(D) as an integer.
std::int64_t hurwitz_H12(std::int64_t D);

class HurwitzTable {
 public:
  static constexpr std::int64_t kMaxEntries = 10'000'000;

  // Sieve over reduced forms; the a-range is split across `threads` workers.
  explicit HurwitzTable(std::int64_t d_max, int threads = 1);

  std::int64_t d_max() const { return d_max_; }
  // 12 * H(D); D must lie in [0, d_max], negative D gives 0.
  std::int64_t scaled(std::int64_t D) const;
  Rational operator[](std::int64_t D) const;
  const std::vector<std::int64_t>& scaled_values() const { return h12_; }

 private:
  std::int64_t d_max_;
  std::vector<std::int64_t> h12_;
};

HurwitzTable hurwitz_table(std::int64_t d_max, int threads = 1);
// Process-wide table covering at least [0, d_max], grown on demand.
std::shared_ptr<const HurwitzTable> shared_hurwitz_table(std::int64_t d_max);

// H_{k,m,M}(n) = sum over t = m mod M of t^k H(4n - t^2).
Rational moment_H(int k, std::int64_t m, std::int64_t M, std::int64_t n);
// Same, reading H from `table`, which must cover 4n.
Rational moment_H(int k, std::int64_t m, std::int64_t M, std::int64_t n, const HurwitzTable& table);
Rational lambda_km(int k, std::int64_t m, std::int64_t M, std::int64_t n);

BigInt T_coeff(int k, int mu);
BigInt T_coeff_rec(int k, int mu);
// sum_{j=0}^{mu} (-1)^j binom(mu, j) (k-j)!/(k-mu-j+1)!, which vanishes.
BigInt factorial_identity_sum(int k, int mu);

Rational bracket_Hstar(int k, std::int64_t m, std::int64_t M, std::int64_t n);
Rational cusp_coefficient_k(int k, std::int64_t m, std::int64_t M, std::int64_t n);
Rational moment_via_reduction(int k, std::int64_t m, std::int64_t M, std::int64_t n);

}  // namespace hcm
