#include "fpdense/coprime_search.hpp"

#include <optional>

namespace fpdense {

namespace {

void check_unit_interval(const Rational& x, const Rational& eps) {
  if (x < 0 || x > 1) throw Error(Errc::InvalidArgument, "target " + to_string(x) + " outside [0,1]");
  if (eps <= 0 || eps > 1) throw Error(Errc::InvalidArgument, "eps " + to_string(eps) + " outside (0,1]");
}

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

// Largest integer strictly below q.
Integer below(const Rational& q) { return ceil_div(q.get_num(), q.get_den()) - 1; }

FractionCandidate make_candidate(const Integer& num, const Integer& den, const Rational& x) {
  Rational value = make_rational(num, den);
  Rational err = abs_diff(x, value);
  return {num, den, std::move(value), std::move(err)};
}

}  // namespace

FractionCandidate find_coprime_numerator(const Rational& x, const Integer& b, const Integer& coprime_to,
                                         const Rational& eps, const Rational& min_ratio) {
  check_unit_interval(x, eps);
  if (b < 2) throw Error(Errc::InvalidArgument, "denominator must be >= 2");
  if (coprime_to < 1 || !mpz_divisible_p(coprime_to.get_mpz_t(), b.get_mpz_t())) {
    throw Error(Errc::InvalidArgument, "coprimality modulus must be a multiple of b");
  }
  if (min_ratio < 0 || min_ratio >= 1) throw Error(Errc::InvalidArgument, "min_ratio outside [0,1)");

  const Rational scaled = x * b;
  Integer lowest = 1;
  lowest = std::max(lowest, Integer(floor_of(min_ratio * b) + 1));
  lowest = std::max(lowest, Integer(floor_of((x - eps) * b) + 1));
  const Integer highest = std::min(Integer(b - 1), below((x + eps) * b));
  const Integer centre = floor_of(scaled);

  std::optional<Integer> down, up;
  for (Integer a = std::min(centre, highest); a >= lowest; --a) {
    if (coprime(a, coprime_to)) {
      down = a;
      break;
    }
  }
  for (Integer a = std::max(Integer(centre + 1), lowest); a <= highest; ++a) {
    if (coprime(a, coprime_to)) {
      up = a;
      break;
    }
  }
  if (!down && !up) {
    throw Error(Errc::NoCandidate, "no numerator for " + to_string(x) + " over " + b.get_str() + " within " +
                                       to_string(eps));
  }
  if (down && up) {
    const Rational down_gap = scaled - *down;
    const Rational up_gap = *up - scaled;
    return make_candidate(up_gap < down_gap ? *up : *down, b, x);
  }
  return make_candidate(down ? *down : *up, b, x);
}

FractionCandidate find_denominator_for_prime(const Integer& prime, const Rational& x, const Rational& eps,
                                             const Rational& min_ratio) {
  check_unit_interval(x, eps);
  if (!is_prime(prime)) throw Error(Errc::InvalidArgument, prime.get_str() + " is not prime");
  if (min_ratio < 0 || min_ratio >= 1) throw Error(Errc::InvalidArgument, "min_ratio outside [0,1)");

  const Rational p(prime);
  Integer lowest = prime + 1;
  lowest = std::max(lowest, Integer(floor_of(p / (x + eps)) + 1));
  Integer highest = ceil_div(2 * prime * eps.get_den(), eps.get_num()) + prime;
  if (min_ratio > 0) highest = std::min(highest, below(p / min_ratio));
  if (x - eps > 0) highest = std::min(highest, below(p / (x - eps)));

  // prime/m is decreasing in m, so the error grows monotonically on either
  // side of prime/x and the first coprime m on each side is that side's best.
  std::optional<Integer> left, right;
  const std::optional<Integer> centre = x > 0 ? std::optional<Integer>(floor_of(p / x)) : std::nullopt;
  for (Integer m = centre ? std::min(*centre, highest) : highest; m >= lowest; --m) {
    if (!mpz_divisible_p(m.get_mpz_t(), prime.get_mpz_t())) {
      left = m;
      break;
    }
  }
  if (centre) {
    for (Integer m = std::max(Integer(*centre + 1), lowest); m <= highest; ++m) {
      if (!mpz_divisible_p(m.get_mpz_t(), prime.get_mpz_t())) {
        right = m;
        break;
      }
    }
  }
  if (!left && !right) {
    throw Error(Errc::NoCandidate, "no denominator for " + prime.get_str() + " near " + to_string(x) +
                                       " within " + to_string(eps));
  }
  if (left && right) {
    auto l = make_candidate(prime, *left, x);
    auto r = make_candidate(prime, *right, x);
    return r.error < l.error ? r : l;
  }
  return make_candidate(prime, left ? *left : *right, x);
}

}  // namespace fpdense
