#include "hcm/characters.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hcm {

RootOfUnity::RootOfUnity(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("root of unity with non-positive denominator");
  num = mod(num, den);
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

RootOfUnity RootOfUnity::zero() {
  RootOfUnity z;
  z.zero_ = true;
  return z;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  if (zero_ || o.zero_) return zero();
  const std::int64_t den = std::lcm(den_, o.den_);
  return {num_ * (den / den_) + o.num_ * (den / o.den_), den};
}

RootOfUnity RootOfUnity::conj() const {
  if (zero_) return zero();
  return {-num_, den_};
}

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
  if (zero_) return k == 0 ? one() : zero();
  return {mulmod(num_, mod(k, den_), den_), den_};
}

Complex RootOfUnity::value() const {
  if (zero_) return {0.0, 0.0};
  // Exact values at the quarter turns keep products of real characters real.
  if (den_ == 1) return {1.0, 0.0};
  if (den_ == 2) return {-1.0, 0.0};
  if (den_ == 4) return num_ == 1 ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  return std::polar(1.0, angle);
}

std::string RootOfUnity::str() const {
  if (zero_) return "0";
  if (den_ == 1) return "1";
  if (den_ == 2) return "-1";
  return "e(" + std::to_string(num_) + "/" + std::to_string(den_) + ")";
}

namespace {

bool is_primitive_root_mod_p(std::int64_t g, std::int64_t p) {
  const std::int64_t order = p - 1;
  for (auto q : prime_divisors(order)) {
    if (powmod(g, order / q, p) == 1) return false;
  }
  return true;
}

// Discrete logarithm tables, shared by all characters on the same prime power.
// Odd p: table[n] = log_g n. p = 2, e >= 3: table[n] = i * 2^{e-2} + j for
// n = (-1)^i 5^j. Non-units hold -1.
class LogTables {
 public:
  static const std::vector<std::int32_t>& get(std::int64_t p, int e) {
    static LogTables instance;
    std::lock_guard lock(instance.mutex_);
    auto& slot = instance.tables_[{p, e}];
    if (!slot) slot = std::make_unique<std::vector<std::int32_t>>(build(p, e));
    return *slot;
  }

 private:
  static std::vector<std::int32_t> build(std::int64_t p, int e) {
    std::int64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    std::vector<std::int32_t> table(static_cast<std::size_t>(q), -1);
    if (p != 2) {
      const std::int64_t g = primitive_root_for(p);
      const std::int64_t phi = q / p * (p - 1);
      std::int64_t v = 1;
      for (std::int64_t j = 0; j < phi; ++j) {
        table[v] = static_cast<std::int32_t>(j);
        v = v * g % q;
      }
    } else {
      const std::int64_t h = q / 4;
      std::int64_t v = 1;
      for (std::int64_t j = 0; j < h; ++j) {
        table[v] = static_cast<std::int32_t>(j);
        table[q - v] = static_cast<std::int32_t>(h + j);
        v = v * 5 % q;
      }
    }
    return table;
  }

  std::mutex mutex_;
  std::map<std::pair<std::int64_t, int>, std::unique_ptr<std::vector<std::int32_t>>> tables_;
};

std::int64_t prime_power(std::int64_t p, int e) {
  std::int64_t q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  return q;
}

// Residue congruent to r mod q and to 1 mod rest.
std::int64_t crt_lift(std::int64_t r, std::int64_t q, std::int64_t rest) {
  r = mod(r, q);
  if (rest == 1) return r;
  const std::int64_t t = mulmod(mod(1 - r, rest), inverse_mod(q % rest, rest), rest);
  return r + q * t;
}

std::int64_t exponent_from(const RootOfUnity& v, std::int64_t order) {
  if (v.is_zero() || order % v.den() != 0) {
    throw std::invalid_argument("values do not define a character");
  }
  return v.num() * (order / v.den());
}

}  // namespace

// A generator that is a primitive root modulo every power of p.
std::int64_t primitive_root_for(std::int64_t p) {
  if (p == 2) throw std::invalid_argument("no primitive root for powers of 2");
  for (std::int64_t g = 2;; ++g) {
    if (is_primitive_root_mod_p(g, p) && powmod(g, p - 1, p * p) != 1) return g;
  }
}

std::int64_t LocalCharacter::modulus() const { return prime_power(p, e); }

RootOfUnity LocalCharacter::eval(std::int64_t n) const {
  if (e == 0) return RootOfUnity::one();
  const std::int64_t q = modulus();
  const std::int64_t r = mod(n, q);
  if (r % p == 0) return RootOfUnity::zero();
  if (p != 2) {
    const std::int64_t log = LogTables::get(p, e)[r];
    return {mulmod(x, log, q / p * (p - 1)), q / p * (p - 1)};
  }
  if (e == 1) return RootOfUnity::one();
  if (e == 2) return {a * (r == 3 ? 1 : 0), 2};
  const std::int64_t h = q / 4;
  const std::int64_t code = LogTables::get(2, e)[r];
  const std::int64_t i = code / h, j = code % h;
  return {a * i * h + 2 * b * j, 2 * h};
}

std::int64_t LocalCharacter::conductor() const {
  if (e == 0 || is_trivial()) return 1;
  if (p != 2) {
    int f = 1;
    while (x % prime_power(p, e - f) != 0) ++f;
    return prime_power(p, f);
  }
  if (b == 0) return 4;
  return prime_power(2, e - ord_p(b, 2));
}

std::int64_t LocalCharacter::order() const {
  if (e == 0) return 1;
  if (p != 2) {
    const std::int64_t phi = modulus() / p * (p - 1);
    return phi / std::gcd(x, phi);
  }
  std::int64_t out = a ? 2 : 1;
  if (e >= 3 && b != 0) {
    const std::int64_t h = modulus() / 4;
    out = std::lcm(out, h / std::gcd(b, h));
  }
  return out;
}

LocalCharacter LocalCharacter::primitive() const {
  const std::int64_t f = conductor();
  if (f == 1) return {p, 0, 0, 0, 0};
  const int ef = ord_p(f, p);
  const std::int64_t drop = prime_power(p, e - ef);
  if (p != 2) return {p, ef, x / drop, 0, 0};
  return {2, ef, 0, a, b / drop};
}

DirichletCharacter::DirichletCharacter(std::int64_t modulus, std::vector<LocalCharacter> locals)
    : modulus_(modulus), locals_(std::move(locals)) {
  std::int64_t check = 1;
  for (const auto& l : locals_) check *= l.modulus();
  if (check != modulus_) throw std::invalid_argument("local components do not match the modulus");
}

DirichletCharacter DirichletCharacter::trivial(std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<LocalCharacter> locals;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(modulus))) locals.push_back({p, e, 0, 0, 0});
  return {modulus, std::move(locals)};
}

DirichletCharacter DirichletCharacter::from_values(std::int64_t modulus,
                                                   const std::function<RootOfUnity(std::int64_t)>& values) {
  DirichletCharacter out = trivial(modulus);
  for (auto& l : out.locals_) {
    const std::int64_t q = l.modulus();
    const std::int64_t rest = modulus / q;
    if (l.p != 2) {
      const std::int64_t g = crt_lift(primitive_root_for(l.p), q, rest);
      l.x = exponent_from(values(g), q / l.p * (l.p - 1));
    } else if (l.e >= 2) {
      l.a = exponent_from(values(crt_lift(-1, q, rest)), 2);
      if (l.e >= 3) l.b = exponent_from(values(crt_lift(5, q, rest)), q / 4);
    }
  }
  return out;
}

DirichletCharacter DirichletCharacter::kronecker_char(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("kronecker_char needs n >= 1");
  const std::int64_t modulus = n % 2 ? n : std::lcm(n, std::int64_t{8});
  return from_values(modulus, [n](std::int64_t u) {
    const int k = kronecker(u, n);
    if (k == 0) throw std::logic_error("kronecker value zero on a unit");
    return k == 1 ? RootOfUnity::one() : RootOfUnity::minus_one();
  });
}

const LocalCharacter* DirichletCharacter::local(std::int64_t p) const {
  for (const auto& l : locals_) {
    if (l.p == p) return &l;
  }
  return nullptr;
}

RootOfUnity DirichletCharacter::eval(std::int64_t n) const {
  RootOfUnity out;
  for (const auto& l : locals_) {
    out = out * l.eval(n);
    if (out.is_zero()) break;
  }
  return out;
}

std::int64_t DirichletCharacter::conductor() const {
  std::int64_t out = 1;
  for (const auto& l : locals_) out *= l.conductor();
  return out;
}

DirichletCharacter DirichletCharacter::primitive() const {
  std::vector<LocalCharacter> locals;
  std::int64_t modulus = 1;
  for (const auto& l : locals_) {
    LocalCharacter prim = l.primitive();
    if (prim.e == 0) continue;
    modulus *= prim.modulus();
    locals.push_back(prim);
  }
  return {modulus, std::move(locals)};
}

bool DirichletCharacter::is_trivial() const {
  for (const auto& l : locals_) {
    if (!l.is_trivial()) return false;
  }
  return true;
}

std::int64_t DirichletCharacter::order() const {
  std::int64_t out = 1;
  for (const auto& l : locals_) out = std::lcm(out, l.order());
  return out;
}

int DirichletCharacter::parity() const { return eval(-1) == RootOfUnity::one() ? 1 : -1; }

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
  if (modulus_ != o.modulus_) throw std::invalid_argument("character product needs equal moduli");
  DirichletCharacter out = *this;
  for (std::size_t i = 0; i < out.locals_.size(); ++i) {
    auto& l = out.locals_[i];
    const auto& r = o.locals_[i];
    const std::int64_t q = l.modulus();
    if (l.p != 2) {
      l.x = mod(l.x + r.x, q / l.p * (l.p - 1));
    } else {
      l.a = (l.a + r.a) % 2;
      if (l.e >= 3) l.b = mod(l.b + r.b, q / 4);
    }
  }
  return out;
}

DirichletCharacter DirichletCharacter::pow(std::int64_t k) const {
  DirichletCharacter out = trivial(modulus_);
  DirichletCharacter base = *this;
  if (k < 0) throw std::invalid_argument("negative character power");
  while (k) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

DirichletCharacter DirichletCharacter::lift(std::int64_t modulus) const {
  if (modulus % modulus_ != 0) throw std::invalid_argument("lift target is not a multiple of the modulus");
  return from_values(modulus, [this](std::int64_t u) { return eval(u); });
}

std::string DirichletCharacter::label() const {
  std::ostringstream out;
  out << "mod " << modulus_ << " [";
  for (std::size_t i = 0; i < locals_.size(); ++i) {
    const auto& l = locals_[i];
    if (i) out << ", ";
    out << l.p << "^" << l.e << ":";
    if (l.p != 2) {
      out << l.x;
    } else {
      out << l.a << "," << l.b;
    }
  }
  out << "]";
  return out.str();
}

namespace {

std::vector<LocalCharacter> all_locals(std::int64_t p, int e) {
  std::vector<LocalCharacter> out;
  const std::int64_t q = prime_power(p, e);
  if (p != 2) {
    for (std::int64_t x = 0; x < q / p * (p - 1); ++x) out.push_back({p, e, x, 0, 0});
  } else if (e == 1) {
    out.push_back({2, 1, 0, 0, 0});
  } else {
    const std::int64_t h = e >= 3 ? q / 4 : 1;
    for (std::int64_t a = 0; a < 2; ++a) {
      for (std::int64_t b = 0; b < h; ++b) out.push_back({2, e, 0, a, b});
    }
  }
  return out;
}

std::vector<DirichletCharacter> product_of(const std::vector<std::vector<LocalCharacter>>& options) {
  std::vector<DirichletCharacter> out{DirichletCharacter()};
  for (const auto& opts : options) {
    std::vector<DirichletCharacter> next;
    for (const auto& chi : out) {
      for (const auto& l : opts) {
        auto locals = chi.locals();
        std::int64_t modulus = chi.modulus();
        if (l.e > 0) {
          locals.push_back(l);
          modulus *= l.modulus();
        }
        next.emplace_back(modulus, std::move(locals));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<DirichletCharacter> enumerate_chars(std::int64_t M) {
  if (M < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<std::vector<LocalCharacter>> options;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(M))) options.push_back(all_locals(p, e));
  return product_of(options);
}

std::vector<DirichletCharacter> primitive_chars_dividing(std::int64_t M) {
  if (M < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<std::vector<LocalCharacter>> options;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(M))) {
    std::vector<LocalCharacter> opts{{p, 0, 0, 0, 0}};
    for (int f = 1; f <= e; ++f) {
      for (const auto& l : all_locals(p, f)) {
        if (l.conductor() == l.modulus()) opts.push_back(l);
      }
    }
    options.push_back(std::move(opts));
  }
  return product_of(options);
}

std::int64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

DirichletCharacter induce_primitive(const DirichletCharacter& chi) { return chi.primitive(); }

QuadDecomposition quad_decomp(const DirichletCharacter& eta) {
  std::vector<LocalCharacter> hat, tilde;
  std::int64_t nh = 1, nt = 1;
  const DirichletCharacter prim = eta.primitive();
  for (const auto& l : prim.locals()) {
    if (l.order() == 2) {
      hat.push_back(l);
      nh *= l.modulus();
    } else {
      tilde.push_back(l);
      nt *= l.modulus();
    }
  }
  return {DirichletCharacter(nh, std::move(hat)), DirichletCharacter(nt, std::move(tilde))};
}

DirichletCharacter star_char(const DirichletCharacter& eta) {
  const DirichletCharacter tilde = quad_decomp(eta).tilde;
  const std::int64_t nt = tilde.modulus();
  const DirichletCharacter kron = DirichletCharacter::kronecker_char(nt);
  const DirichletCharacter product = DirichletCharacter::from_values(
      kron.modulus(), [&](std::int64_t u) { return tilde.eval(u) * kron.eval(u); });
  return product.primitive();
}

Complex gauss_sum(const DirichletCharacter& chi) {
  const std::int64_t n = chi.modulus();
  Complex out{0.0, 0.0};
  for (std::int64_t x = 0; x < n; ++x) {
    const RootOfUnity v = chi.eval(x);
    if (v.is_zero()) continue;
    out += v.value() * RootOfUnity(x, n).value();
  }
  return out;
}

Complex gauss_quad_direct(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (c < 1) throw std::invalid_argument("gauss_quad needs c >= 1");
  Complex out{0.0, 0.0};
  for (std::int64_t x = 0; x < c; ++x) {
    const std::int64_t phase = mod(mod(a, c) * x % c * x + mod(b, c) * x, c);
    out += RootOfUnity(phase, c).value();
  }
  return out;
}

Complex gauss_quad_closed(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (c < 1) throw std::invalid_argument("gauss_quad needs c >= 1");
  const std::int64_t g = std::gcd(mod(a, c), c);
  if (g > 1) {
    if (b % g != 0) return {0.0, 0.0};
    return static_cast<double>(g) * gauss_quad_closed(mod(a, c) / g, b / g, c / g);
  }
  if (c == 1) return {1.0, 0.0};
  a = mod(a, c);
  if (c % 2 == 1) {
    const std::int64_t k = inverse_mod(mod(4 * a, c), c);
    const RootOfUnity phase(-mulmod(k, mulmod(b, b, c), c), c);
    return phase.value() * eps(c).value() * static_cast<double>(kronecker(a, c)) * std::sqrt(static_cast<double>(c));
  }
  if (c % 4 == 2) {
    if (b % 2 == 0) return {0.0, 0.0};
    const std::int64_t c0 = c / 2;
    const std::int64_t k = inverse_mod(mod(8 * a, c0), c0);
    const RootOfUnity phase(-mulmod(k, mulmod(mod(b, c0), mod(b, c0), c0), c0), c0);
    return phase.value() * eps(c0).value() * static_cast<double>(kronecker(2 * a, c0)) *
           std::sqrt(static_cast<double>(2 * c));
  }
  if (mod(b, 2) == 1) return {0.0, 0.0};
  const std::int64_t k = inverse_mod(a, c);
  const RootOfUnity phase(-mulmod(k, mulmod(mod(b, 4 * c), mod(b, 4 * c), 4 * c), 4 * c), 4 * c);
  return phase.value() * eps(a).pow(3).value() * static_cast<double>(kronecker(c, a)) * Complex(1.0, 1.0) *
         std::sqrt(static_cast<double>(c));
}

}  // namespace hcm
