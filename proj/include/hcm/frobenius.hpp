// Elliptic curves over F_p and F_{p^2} (p >= 5): trace-of-Frobenius masses by
// enumeration, moments of traces in progressions, and their relation to
// Hurwitz class number moments.

#pragma once

#include "hcm/eisenstein.hpp"

#include <cstdint>
#include <vector>

namespace hcm {

class TraceMassTable {
 public:
  static constexpr std::int64_t kMaxField = 20'000;

  // q = p^r with r in {1, 2}; curve enumeration split across `threads` workers.
  TraceMassTable(std::int64_t p, int r, int threads = 1);

  std::int64_t p() const { return p_; }
  int r() const { return r_; }
  std::int64_t q() const { return q_; }
  std::int64_t bound() const { return bound_; }
  // Number of nonsingular (a, b) in F_q^2 with trace t.
  std::int64_t pairs(std::int64_t t) const;
  std::int64_t nonsingular_pairs() const;
  // Sum of 1/|Aut E| over isomorphism classes with trace t.
  Rational mass(std::int64_t t) const;
  Rational total_mass() const;

 private:
  std::int64_t p_;
  int r_;
  std::int64_t q_;
  std::int64_t bound_;
  std::vector<std::int64_t> counts_;  // indexed by t + bound_
};

TraceMassTable trace_mass_table(std::int64_t q, int threads = 1);
// Trace of y^2 = x^3 + a x + b over F_p by direct point count (oracle).
std::int64_t trace_direct(std::int64_t a, std::int64_t b, std::int64_t p);

Rational S_direct(int k, std::int64_t m, std::int64_t M, const TraceMassTable& table);
Rational S_direct(int k, std::int64_t m, std::int64_t M, std::int64_t q);
Rational S_via_moments(int k, std::int64_t m, std::int64_t M, std::int64_t p, int r);

// Readings of the indicator in front of H(4p) in the error term.
enum class DeltaReading { MDividesM, AsPrinted };

Rational tilde_moment(int k, std::int64_t m, std::int64_t M, std::int64_t p, int r);
std::int64_t rho(int k, std::int64_t m, std::int64_t M, std::int64_t n);
Rational error_E(int k, std::int64_t m, std::int64_t M, std::int64_t p, int r,
                 DeltaReading reading = DeltaReading::MDividesM);

// 2 S_{2,m,M}(p^r) = leading p^{2r} + cusp + subleading p^{2r-1} + remainder.
struct ExpansionTerms {
  std::int64_t p = 0;
  int r = 1;
  double leading = 0.0;
  double cusp = 0.0;
  double subleading = 0.0;
  double remainder = 0.0;
  Rational target;  // 2 S_{2,m,M}(p^r) from the moment side

  double recombined() const;
};

ExpansionTerms expansion_p(std::int64_t m, std::int64_t M, std::int64_t p, const Interpretation& interp = {});
ExpansionTerms expansion_p2(std::int64_t m, std::int64_t M, std::int64_t p, const Interpretation& interp = {});

}  // namespace hcm
