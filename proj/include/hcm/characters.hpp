// Dirichlet characters stored by local exponent data, so that every value is
// an exact root of unity. Also the classical and generalized quadratic Gauss
// sums.

#pragma once

#include "hcm/arith.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hcm {

// e^{2 pi i num/den}, or zero.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(std::int64_t num, std::int64_t den);

  static RootOfUnity zero();
  static RootOfUnity one() { return {}; }
  static RootOfUnity minus_one() { return {1, 2}; }

  bool is_zero() const { return zero_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity conj() const;
  RootOfUnity pow(std::int64_t k) const;
  bool operator==(const RootOfUnity&) const = default;
  Complex value() const;
  std::string str() const;

 private:
  bool zero_ = false;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// The p-part of a character. For odd p the exponent x means g -> e^{2 pi i x/phi(p^e)}
// with g the fixed primitive root. For p = 2, (a, b) means -1 -> (-1)^a and
// 5 -> e^{2 pi i b/2^{e-2}}; for e = 2 only a is used, for e = 1 neither.
struct LocalCharacter {
  std::int64_t p = 0;
  int e = 0;
  std::int64_t x = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;

  std::int64_t modulus() const;
  RootOfUnity eval(std::int64_t n) const;
  std::int64_t conductor() const;
  std::int64_t order() const;
  LocalCharacter primitive() const;
  bool is_trivial() const { return x == 0 && a == 0 && b == 0; }
  bool operator==(const LocalCharacter&) const = default;
};

class DirichletCharacter {
 public:
  // The trivial character modulo 1.
  DirichletCharacter() = default;
  DirichletCharacter(std::int64_t modulus, std::vector<LocalCharacter> locals);

  static DirichletCharacter trivial(std::int64_t modulus);
  // The character mod `modulus` with the given values on units. `values` must
  // be a character; this is checked on generators only.
  static DirichletCharacter from_values(std::int64_t modulus,
                                        const std::function<RootOfUnity(std::int64_t)>& values);
  // Kronecker symbol (. | n) as a character, n > 0, modulo n or lcm(n, 8).
  static DirichletCharacter kronecker_char(std::int64_t n);

  std::int64_t modulus() const { return modulus_; }
  const std::vector<LocalCharacter>& locals() const { return locals_; }
  // Local component at p, or nullptr when p does not divide the modulus.
  const LocalCharacter* local(std::int64_t p) const;

  RootOfUnity eval(std::int64_t n) const;
  Complex value(std::int64_t n) const { return eval(n).value(); }
  std::int64_t conductor() const;
  DirichletCharacter primitive() const;
  bool is_primitive() const { return conductor() == modulus_; }
  bool is_trivial() const;
  std::int64_t order() const;
  // +1 for even, -1 for odd characters.
  int parity() const;
  // Same modulus required.
  DirichletCharacter operator*(const DirichletCharacter& o) const;
  DirichletCharacter pow(std::int64_t k) const;
  // The character mod a multiple of the modulus.
  DirichletCharacter lift(std::int64_t modulus) const;
  bool operator==(const DirichletCharacter&) const = default;
  std::string label() const;

 private:
  std::int64_t modulus_ = 1;
  std::vector<LocalCharacter> locals_;
};

std::int64_t primitive_root_for(std::int64_t p);

// All phi(M) characters modulo M.
std::vector<DirichletCharacter> enumerate_chars(std::int64_t M);
// All primitive characters whose conductor divides M, each at its conductor.
std::vector<DirichletCharacter> primitive_chars_dividing(std::int64_t M);
std::int64_t conductor(const DirichletCharacter& chi);
DirichletCharacter induce_primitive(const DirichletCharacter& chi);

struct QuadDecomposition {
  DirichletCharacter hat;
  DirichletCharacter tilde;
};

// eta = hat * tilde, split prime by prime: quadratic local components go into
// hat, the rest into tilde.
QuadDecomposition quad_decomp(const DirichletCharacter& eta);
// Primitive inducer of tilde * (. | N_tilde).
DirichletCharacter star_char(const DirichletCharacter& eta);

Complex gauss_sum(const DirichletCharacter& chi);
Complex gauss_quad_direct(std::int64_t a, std::int64_t b, std::int64_t c);
Complex gauss_quad_closed(std::int64_t a, std::int64_t b, std::int64_t c);

}  // namespace hcm
