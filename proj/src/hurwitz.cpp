#include "hcm/hurwitz.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace hcm {

std::int64_t hurwitz_H12(std::int64_t D) {
  if (D == 0) return -1;
  if (D < 0 || D % 4 == 1 || D % 4 == 2) return 0;
  std::int64_t out = 0;
  for (std::int64_t a = 1; 3 * a * a <= D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b * b + D) % (4 * a) != 0) continue;
      const std::int64_t c = (b * b + D) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (a == b && b == c) {
        out += 4;
      } else if (b == 0 && a == c) {
        out += 6;
      } else {
        out += 12;
      }
    }
  }
  return out;
}

Rational hurwitz_H(std::int64_t D) { return make_rational(hurwitz_H12(D), 12); }

HurwitzTable::HurwitzTable(std::int64_t d_max, int threads) : d_max_(d_max) {
  if (d_max < 0) throw std::invalid_argument("hurwitz_table needs d_max >= 0");
  if (d_max > kMaxEntries) throw std::length_error("hurwitz_table: d_max exceeds 10^7");
  threads = std::max(1, threads);
  const std::int64_t a_max = isqrt(d_max / 3);

  // Each reduced form with 0 <= b <= a stands for itself and, unless it lies
  // on the boundary, for (a, -b, c) as well.
  auto sieve = [d_max](std::int64_t a_begin, std::int64_t a_step, std::int64_t a_end, std::vector<std::int64_t>& acc) {
    for (std::int64_t a = a_begin; a <= a_end; a += a_step) {
      for (std::int64_t b = 0; b <= a; ++b) {
        for (std::int64_t c = a;; ++c) {
          const std::int64_t D = 4 * a * c - b * b;
          if (D > d_max) break;
          if (a == b && b == c) {
            acc[D] += 4;
          } else if (b == 0 && a == c) {
            acc[D] += 6;
          } else if (b == 0 || b == a || a == c) {
            acc[D] += 12;
          } else {
            acc[D] += 24;
          }
        }
      }
    }
  };

  h12_.assign(static_cast<std::size_t>(d_max) + 1, 0);
  if (threads == 1 || a_max < 2 * threads) {
    sieve(1, 1, a_max, h12_);
  } else {
    // Strided a-ranges balance the work; partial tables are summed in worker order.
    std::vector<std::vector<std::int64_t>> partial(threads, std::vector<std::int64_t>(h12_.size(), 0));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] { sieve(1 + w, threads, a_max, partial[w]); });
    }
    for (auto& t : pool) t.join();
    for (const auto& part : partial) {
      for (std::size_t D = 0; D < h12_.size(); ++D) h12_[D] += part[D];
    }
  }
  h12_[0] = -1;
}

std::int64_t HurwitzTable::scaled(std::int64_t D) const {
  if (D < 0) return 0;
  if (D > d_max_) throw std::out_of_range("hurwitz table does not cover D = " + std::to_string(D));
  return h12_[D];
}

Rational HurwitzTable::operator[](std::int64_t D) const { return make_rational(scaled(D), 12); }

HurwitzTable hurwitz_table(std::int64_t d_max, int threads) { return HurwitzTable(d_max, threads); }

std::shared_ptr<const HurwitzTable> shared_hurwitz_table(std::int64_t d_max) {
  static std::mutex mutex;
  static std::shared_ptr<const HurwitzTable> table;
  std::lock_guard lock(mutex);
  if (!table || table->d_max() < d_max) {
    const std::int64_t size = std::min(HurwitzTable::kMaxEntries, std::max<std::int64_t>(2 * d_max, 1 << 14));
    if (size < d_max) throw std::length_error("hurwitz table request too large");
    table = std::make_shared<const HurwitzTable>(size, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  }
  return table;
}

Rational moment_H(int k, std::int64_t m, std::int64_t M, std::int64_t n, const HurwitzTable& table) {
  if (k < 0 || M < 1 || n < 0) throw std::invalid_argument("moment_H needs k >= 0, M >= 1, n >= 0");
  const std::int64_t r = isqrt(4 * n);
  BigInt acc = 0;
  for (std::int64_t t = -r + mod(m + r, M); t <= r; t += M) {
    const std::int64_t h = table.scaled(4 * n - t * t);
    if (h == 0) continue;
    acc += ipow(BigInt(static_cast<long>(t)), static_cast<unsigned>(k)) * h;
  }
  Rational out(acc, 12);
  out.canonicalize();
  return out;
}

Rational moment_H(int k, std::int64_t m, std::int64_t M, std::int64_t n) {
  return moment_H(k, m, M, n, *shared_hurwitz_table(4 * n));
}

Rational lambda_km(int k, std::int64_t m, std::int64_t M, std::int64_t n) {
  if (k < 0 || M < 1 || n < 1) throw std::invalid_argument("lambda_km needs k >= 0, M >= 1, n >= 1");
  Rational out = 0;
  for (auto a : divisors(n)) {
    const std::int64_t b = n / a;
    if (a > b) break;
    const std::int64_t t = a + b;
    Rational term(ipow(BigInt(static_cast<long>(a)), static_cast<unsigned>(k + 1)));
    if (a == b) term /= 2;
    if (mod(t - m, M) == 0) out += term;
    if (mod(t + m, M) == 0) out += (k % 2 ? -term : term);
  }
  return out;
}

namespace {

void check_T_range(int k, int mu) {
  if (k < 1 || mu < 0 || 2 * mu > k - 1) throw std::invalid_argument("T(k, mu) needs k >= 1 and 0 <= mu <= (k-1)/2");
}

}  // namespace

BigInt T_coeff(int k, int mu) {
  check_T_range(k, mu);
  const BigInt num = binomial(k, mu) * (k - 2 * mu + 1);
  if (num % (k - mu + 1) != 0) throw std::logic_error("T(k, mu) is not an integer");
  return num / (k - mu + 1);
}

BigInt T_coeff_rec(int k, int mu) {
  check_T_range(k, mu);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, BigInt> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find({k, mu}); it != memo.end()) return it->second;
  }
  BigInt out = 1;
  if (mu > 0) {
    out = 0;
    for (int j = 1; j <= mu; ++j) {
      const BigInt term = binomial(k - j, j) * T_coeff_rec(k - 2 * j, mu - j);
      out += (j % 2 ? term : BigInt(-term));
    }
  }
  std::lock_guard lock(mutex);
  memo.emplace(std::make_pair(k, mu), out);
  return out;
}

BigInt factorial_identity_sum(int k, int mu) {
  if (mu < 1 || k < 2 * mu + 1) throw std::invalid_argument("factorial identity needs mu >= 1, k >= 2 mu + 1");
  BigInt out = 0;
  for (int j = 0; j <= mu; ++j) {
    const BigInt term = binomial(mu, j) * (factorial(static_cast<unsigned>(k - j)) /
                                           factorial(static_cast<unsigned>(k - mu - j + 1)));
    out += (j % 2 ? BigInt(-term) : term);
  }
  return out;
}

Rational bracket_Hstar(int k, std::int64_t m, std::int64_t M, std::int64_t n) {
  if (k < 0) throw std::invalid_argument("bracket_Hstar needs k >= 0");
  Rational sum = 0;
  for (int mu = 0; 2 * mu <= k; ++mu) {
    const Rational term = Rational(binomial(k - mu, mu)) * rpow(n, static_cast<unsigned>(mu)) * moment_H(k - 2 * mu, m, M, n);
    sum += (mu % 2 ? Rational(-term) : term);
  }
  return Rational(binomial(k, k / 2)) * sum;
}

Rational cusp_coefficient_k(int k, std::int64_t m, std::int64_t M, std::int64_t n) {
  if (k < 1) throw std::invalid_argument("cusp_coefficient_k needs k >= 1; use cusp_residual_0 for k = 0");
  Rational out = moment_H(k, m, M, n) + lambda_km(k, m, M, n);
  for (int mu = 1; 2 * mu <= k; ++mu) {
    const Rational term = Rational(binomial(k - mu, mu)) * rpow(n, static_cast<unsigned>(mu)) * moment_H(k - 2 * mu, m, M, n);
    out += (mu % 2 ? Rational(-term) : term);
  }
  return out;
}

Rational moment_via_reduction(int k, std::int64_t m, std::int64_t M, std::int64_t n) {
  if (k < 1) throw std::invalid_argument("moment_via_reduction needs k >= 1");
  Rational out = 0;
  if (k % 2 == 0) out = Rational(catalan_ext(k)) * rpow(n, static_cast<unsigned>(k / 2)) * moment_H(0, m, M, n);
  for (int mu = 0; 2 * mu <= k - 1; ++mu) {
    const int j = k - 2 * mu;
    const Rational a = cusp_coefficient_k(j, m, M, n);
    out += Rational(T_coeff(k, mu)) * (a - lambda_km(j, m, M, n)) * rpow(n, static_cast<unsigned>(mu));
  }
  return out;
}

}  // namespace hcm
