#include "hcm/frobenius.hpp"

#include "hcm/bias.hpp"
#include "hcm/hurwitz.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace hcm {

namespace {

// F_q for q = p or p^2, the latter as F_p[s]/(s^2 - ns). Elements are pairs
// (u, v) meaning u + v s, with v = 0 throughout when q = p.
class Field {
 public:
  struct Elem {
    std::int64_t u = 0;
    std::int64_t v = 0;
  };

  Field(std::int64_t p, int r) : p_(p), r_(r), legendre_(static_cast<std::size_t>(p), 0) {
    for (std::int64_t x = 1; x < p; ++x) legendre_[x * x % p] = 1;
    for (std::int64_t x = 1; x < p; ++x) {
      if (legendre_[x] == 0) legendre_[x] = -1;
    }
    ns_ = 2;
    while (legendre_[ns_] != -1) ++ns_;
  }

  std::int64_t size() const { return r_ == 1 ? p_ : p_ * p_; }
  Elem at(std::int64_t index) const { return {index % p_, r_ == 1 ? 0 : index / p_}; }

  Elem add(Elem a, Elem b) const { return {(a.u + b.u) % p_, (a.v + b.v) % p_}; }
  Elem mul(Elem a, Elem b) const {
    return {(a.u * b.u + ns_ * (a.v * b.v % p_)) % p_, (a.u * b.v + a.v * b.u) % p_};
  }
  bool is_zero(Elem a) const { return a.u == 0 && a.v == 0; }

  // Quadratic character of F_q. Over F_{p^2} it factors through the norm.
  int chi(Elem a) const {
    if (r_ == 1) return legendre_[a.u];
    const std::int64_t norm = mod(a.u * a.u - ns_ * (a.v * a.v % p_), p_);
    return is_zero(a) ? 0 : (norm == 0 ? 0 : legendre_[norm]);
  }

  Elem inverse(Elem a) const {
    if (r_ == 1) return {inverse_mod(a.u, p_), 0};
    const std::int64_t norm = mod(a.u * a.u - ns_ * (a.v * a.v % p_), p_);
    const std::int64_t inv = inverse_mod(norm, p_);
    return {a.u * inv % p_, mod(-a.v, p_) * inv % p_};
  }

  Elem scalar(std::int64_t c) const { return {mod(c, p_), 0}; }

 private:
  std::int64_t p_;
  int r_;
  std::int64_t ns_ = 0;
  std::vector<int> legendre_;
};

// Trace of y^2 = x^3 + a x + b as minus the character sum.
std::int64_t trace_of(const Field& F, const std::vector<Field::Elem>& xs, const std::vector<Field::Elem>& cubes,
                      Field::Elem a, Field::Elem b) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sum += F.chi(F.add(F.add(cubes[i], F.mul(a, xs[i])), b));
  return -sum;
}

}  // namespace

TraceMassTable::TraceMassTable(std::int64_t p, int r, int threads) : p_(p), r_(r) {
  if (p < 5 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("trace_mass_table needs a prime p >= 5");
  if (r != 1 && r != 2) throw std::invalid_argument("trace_mass_table supports q = p and q = p^2 only");
  q_ = r == 1 ? p : p * p;
  if (q_ > kMaxField) throw std::length_error("trace_mass_table: q exceeds 20000");
  bound_ = isqrt(4 * q_);
  counts_.assign(static_cast<std::size_t>(2 * bound_ + 1), 0);

  const Field F(p, r);
  const std::int64_t q = q_;
  std::vector<Field::Elem> xs(static_cast<std::size_t>(q)), cubes(static_cast<std::size_t>(q));
  for (std::int64_t i = 0; i < q; ++i) {
    xs[i] = F.at(i);
    cubes[i] = F.mul(xs[i], F.mul(xs[i], xs[i]));
  }
  // 4 r^3 + 27 r^2 = r^2 (4 r + 27) vanishes at r = -27/4.
  const Field::Elem bad = F.mul(F.scalar(-27), F.inverse(F.scalar(4)));

  // Pairs with a b != 0 are (c l^2, c l^3): the quadratic twist of (c, c) by l.
  // Pairs on the axes a = 0 or b = 0 are counted one by one.
  auto work = [&](std::int64_t begin, std::int64_t step, std::vector<std::int64_t>& acc) {
    for (std::int64_t i = begin; i < q; i += step) {
      const Field::Elem c = xs[i];
      if (F.is_zero(c)) continue;
      if (!(c.u == bad.u && c.v == bad.v)) {
        const std::int64_t t = trace_of(F, xs, cubes, c, c);
        acc[t + bound_] += (q - 1) / 2;
        acc[-t + bound_] += (q - 1) / 2;
      }
      acc[trace_of(F, xs, cubes, Field::Elem{}, c) + bound_] += 1;
      acc[trace_of(F, xs, cubes, c, Field::Elem{}) + bound_] += 1;
    }
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    work(0, 1, counts_);
  } else {
    std::vector<std::vector<std::int64_t>> partial(threads, std::vector<std::int64_t>(counts_.size(), 0));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back([&, w] { work(w, threads, partial[w]); });
    for (auto& t : pool) t.join();
    for (const auto& part : partial) {
      for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += part[i];
    }
  }
}

std::int64_t TraceMassTable::pairs(std::int64_t t) const {
  if (t < -bound_ || t > bound_) return 0;
  return counts_[t + bound_];
}

std::int64_t TraceMassTable::nonsingular_pairs() const {
  std::int64_t out = 0;
  for (auto c : counts_) out += c;
  return out;
}

Rational TraceMassTable::mass(std::int64_t t) const { return make_rational(pairs(t), q_ - 1); }

Rational TraceMassTable::total_mass() const { return make_rational(nonsingular_pairs(), q_ - 1); }

TraceMassTable trace_mass_table(std::int64_t q, int threads) {
  if (q >= 5 && is_prime(static_cast<std::uint64_t>(q))) return TraceMassTable(q, 1, threads);
  const std::int64_t p = isqrt(q);
  if (p * p == q && is_prime(static_cast<std::uint64_t>(p))) return TraceMassTable(p, 2, threads);
  throw std::invalid_argument("trace_mass_table needs q = p or p^2");
}

std::int64_t trace_direct(std::int64_t a, std::int64_t b, std::int64_t p) {
  std::int64_t points = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t f = mod(x * x % p * x + a * x + b, p);
    if (f == 0) {
      points += 1;
    } else if (powmod(f, static_cast<std::uint64_t>((p - 1) / 2), p) == 1) {
      points += 2;
    }
  }
  return p + 1 - points;
}

Rational S_direct(int k, std::int64_t m, std::int64_t M, const TraceMassTable& table) {
  if (k < 0 || M < 1) throw std::invalid_argument("S_direct needs k >= 0, M >= 1");
  BigInt acc = 0;
  const std::int64_t b = table.bound();
  for (std::int64_t t = -b + mod(m + b, M); t <= b; t += M) {
    acc += ipow(BigInt(static_cast<long>(t)), static_cast<unsigned>(k)) * table.pairs(t);
  }
  Rational out(acc, table.q() - 1);
  out.canonicalize();
  return out;
}

Rational S_direct(int k, std::int64_t m, std::int64_t M, std::int64_t q) {
  return S_direct(k, m, M, trace_mass_table(q));
}

Rational S_via_moments(int k, std::int64_t m, std::int64_t M, std::int64_t p, int r) {
  if (M % p == 0) throw std::invalid_argument("S_via_moments needs p not dividing M");
  if (r != 1 && r != 2) throw std::invalid_argument("S_via_moments supports r = 1, 2");
  Rational out = moment_H(k, m, M, r == 1 ? p : p * p);
  if (r == 2) out -= rpow(p, static_cast<unsigned>(k + 1)) * moment_H(k, m * inverse_mod(p, M), M, 1);
  return out / 2;
}

Rational tilde_moment(int k, std::int64_t m, std::int64_t M, std::int64_t p, int r) {
  const std::int64_t n = r == 1 ? p : p * p;
  const std::int64_t bound = isqrt(4 * n);
  BigInt acc = 0;
  for (std::int64_t t = -bound + mod(m + bound, M); t <= bound; t += M) {
    if (t % p == 0) continue;
    acc += ipow(BigInt(static_cast<long>(t)), static_cast<unsigned>(k)) * hurwitz_H12(4 * n - t * t);
  }
  Rational out(acc, 12);
  out.canonicalize();
  return out;
}

std::int64_t rho(int k, std::int64_t m, std::int64_t M, std::int64_t n) {
  if (!is_square(n)) return 0;
  const std::int64_t s = isqrt(n);
  std::int64_t out = 0;
  for (std::int64_t t : {s, -s}) {
    if (mod(t - m, M) != 0) continue;
    const std::int64_t sg = t > 0 ? 1 : (t < 0 ? -1 : 0);
    out += (k == 0 ? 1 : (k % 2 ? sg : sg * sg));
    if (s == 0) break;
  }
  return out;
}

Rational error_E(int k, std::int64_t m, std::int64_t M, std::int64_t p, int r, DeltaReading reading) {
  const std::int64_t n = r == 1 ? p : p * p;
  const bool indicator = reading == DeltaReading::MDividesM ? mod(m, M) == 0 : (m == 0 || M % m != 0);
  const bool k0 = k == 0;
  Rational out = 0;
  if (indicator && k0 && r % 2 == 1) out += hurwitz_H(4 * p);
  if (indicator && k0 && r % 2 == 0) out += make_rational(1 - kronecker(-1, p), 2);
  if (r % 2 == 0) {
    const Rational scale = rpow(p, static_cast<unsigned>(r * k / 2));
    out += make_rational(1 - kronecker(-3, p), 3) * scale * rho(k, m, M, n);
    out += make_rational((std::int64_t{1} << k) * (p - 1), 12) * scale * rho(k, m, M, 4 * n);
  }
  return out;
}

double ExpansionTerms::recombined() const {
  const auto pp = static_cast<double>(p);
  const double top = r == 1 ? pp * pp : pp * pp * pp * pp;
  const double sub = r == 1 ? pp : pp * pp * pp;
  return leading * top + cusp + subleading * sub + remainder;
}

namespace {

std::int64_t representative(std::int64_t m, std::int64_t M) {
  const std::int64_t r = mod(m, M);
  return r == 0 ? M : r;
}

void check_expansion_args(std::int64_t M, std::int64_t p) {
  if (p < 5 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("expansion needs a prime p >= 5");
  if (M % p == 0) throw std::invalid_argument("expansion needs p not dividing M");
}

}  // namespace

ExpansionTerms expansion_p(std::int64_t m, std::int64_t M, std::int64_t p, const Interpretation& interp) {
  check_expansion_args(M, p);
  const std::int64_t mr = representative(m, M);
  const MainTermExpansion main(mr, M, interp);
  const double P = main.unit_coefficient(p).real();
  const int delta = delta_star(p, m, M);
  ExpansionTerms out;
  out.p = p;
  out.r = 1;
  out.leading = P;
  out.cusp = cusp_residual_0(mr, M, p, interp) * static_cast<double>(p) + cusp_coefficient_k(2, m, M, p).get_d();
  out.subleading = P - delta;
  out.remainder = -delta;
  out.target = 2 * S_via_moments(2, m, M, p, 1);
  return out;
}

ExpansionTerms expansion_p2(std::int64_t m, std::int64_t M, std::int64_t p, const Interpretation& interp) {
  check_expansion_args(M, p);
  const std::int64_t mr = representative(m, M);
  const MainTermExpansion main(mr, M, interp);
  const double P = main.unit_coefficient(p, 2).real();
  const int delta_sq = delta_star_sq(p, m, M);
  const int delta_top = delta_star(p * p, m, M);
  const double h = moment_H(2, m * inverse_mod(p, M), M, 1).get_d();
  const auto pp = static_cast<double>(p);
  ExpansionTerms out;
  out.p = p;
  out.r = 2;
  out.leading = P;
  out.cusp = cusp_residual_0(mr, M, p * p, interp) * pp * pp + cusp_coefficient_k(2, m, M, p * p).get_d();
  out.subleading = P - delta_sq - h;
  out.remainder = (P - delta_top) * pp * pp - delta_top;
  out.target = 2 * S_via_moments(2, m, M, p, 2);
  return out;
}

}  // namespace hcm
