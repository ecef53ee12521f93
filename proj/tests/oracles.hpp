#pragma once

// Brute-force reference implementations used only by tests. They work on
// machine integers with std::gcd and never call into the library.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  for (std::int64_t x = 1; x < m; ++x) {
    if ((a % m + m) % m * x % m == 1) return x;
  }
  return 0;
}

// Smallest g such that every window [s, s+g) with s in [1, 2b] holds an
// integer coprime to b.
inline std::int64_t jacobsthal(std::int64_t b) {
  std::int64_t g = 1;
  while (true) {
    bool every_window = true;
    for (std::int64_t s = 1; s <= 2 * b && every_window; ++s) {
      bool found = false;
      for (std::int64_t j = 0; j < g && !found; ++j) found = std::gcd(s + j, b) == 1;
      every_window = found;
    }
    if (every_window) return g;
    ++g;
  }
}

// Fractions as (num, den) with den > 0; all values in tests stay small.
struct Frac {
  std::int64_t num;
  std::int64_t den;
};

inline bool less(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }

// argmin over a in [1,b) of |x - a/b| subject to gcd(a,Q) = 1, |x - a/b| < eps,
// a/b > min_ratio; ties to the smaller a.
inline std::optional<std::int64_t> coprime_numerator(Frac x, std::int64_t b, std::int64_t q, Frac eps,
                                                     Frac min_ratio) {
  std::optional<std::int64_t> best;
  std::int64_t best_dist = 0;  // |x.num*b - a*x.den|, common denominator x.den*b
  for (std::int64_t a = 1; a < b; ++a) {
    if (std::gcd(a, q) != 1) continue;
    if (!less(min_ratio, Frac{a, b})) continue;
    const std::int64_t dist = std::llabs(x.num * b - a * x.den);
    if (!less(Frac{dist, x.den * b}, eps)) continue;
    if (!best || dist < best_dist) {
      best = a;
      best_dist = dist;
    }
  }
  return best;
}

// argmin over m in (p, limit) of |x - p/m| with the analogous constraints.
inline std::optional<std::int64_t> denominator_for_prime(std::int64_t p, Frac x, Frac eps, Frac min_ratio,
                                                         std::int64_t limit) {
  std::optional<std::int64_t> best;
  Frac best_err{0, 1};
  for (std::int64_t m = p + 1; m < limit; ++m) {
    if (m % p == 0) continue;
    if (!less(min_ratio, Frac{p, m})) continue;
    const Frac err{std::llabs(x.num * m - p * x.den), x.den * m};
    if (!less(err, eps)) continue;
    if (!best || less(err, best_err)) {
      best = m;
      best_err = err;
    }
  }
  return best;
}

// All points of x_1...x_n = 1 (mod p) in [1,p)^n, by a full n-fold loop.
inline std::vector<std::vector<std::uint64_t>> hypersurface_points(std::uint64_t p, std::size_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> x(n, 1);
  while (true) {
    std::uint64_t product = 1;
    for (const auto v : x) product = product * v % p;
    if (product == 1 % p) out.push_back(x);
    std::size_t i = n;
    while (i > 0 && x[i - 1] == p - 1) x[--i] = 1;
    if (i == 0) return out;
    ++x[i - 1];
  }
}

}  // namespace oracle
