#include "fpdense/chain.hpp"

#include "fpdense/coprime_search.hpp"

namespace fpdense {

TargetPoint::TargetPoint(std::vector<Rational> c) : coords(std::move(c)) {
  if (coords.size() < 2) throw Error(Errc::InvalidArgument, "target needs at least 2 coordinates");
  for (auto& q : coords) {
    q.canonicalize();
    if (q < 0 || q > 1) throw Error(Errc::InvalidArgument, "target coordinate " + to_string(q) + " outside [0,1]");
  }
}

bool chain_is_valid(std::span<const Integer> a) {
  if (a.size() < 3) return false;
  if (a[0] < 1) return false;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (!(a[i] < a[i + 1]) || !coprime(a[i], a[i + 1])) return false;
  }
  Integer tail = 1;
  for (std::size_t i = 2; i < a.size(); ++i) tail *= a[i];
  return coprime(a[1], tail);
}

Chain::Chain(std::vector<Integer> terms) : terms_(std::move(terms)) {
  if (!chain_is_valid(terms_)) throw Error(Errc::InvalidArgument, "terms do not form a valid chain");
}

Chain Chain::unchecked(std::vector<Integer> terms) {
  Chain c;
  c.terms_ = std::move(terms);
  return c;
}

Rational Chain::coordinate(std::size_t i) const { return make_rational(terms_[i - 1], terms_[i]); }

std::vector<Rational> Chain::point() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < terms_.size(); ++i) out.push_back(coordinate(i));
  return out;
}

Integer Chain::tail_product() const {
  Integer tail = 1;
  for (std::size_t i = 2; i < terms_.size(); ++i) tail *= terms_[i];
  return tail;
}

std::string_view build_mode_name(BuildMode mode) noexcept {
  return mode == BuildMode::Search ? "search" : "faithful";
}

BuildMode parse_build_mode(std::string_view text) {
  if (text == "search") return BuildMode::Search;
  if (text == "faithful") return BuildMode::Faithful;
  throw Error(Errc::ParseError, "unknown mode '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Faithful parameters

namespace {

Integer pow_ui(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational pow_ui(const Rational& base, unsigned long e) {
  return make_rational(pow_ui(base.get_num(), e), pow_ui(base.get_den(), e));
}

// Explicit stand-in for g(b) + 1 valid for every integer up to b.
Integer gap_bound(const Integer& b) { return pow_ui(Integer(2), max_distinct_prime_factors(b)) + 1; }

Integer next_primorial_above(const Integer& b, unsigned& count) {
  Integer product = 1, p = 2;
  count = 0;
  while (product <= b) {
    product *= p;
    ++count;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  return product;
}

// Coprime-fraction gaps over any denominator >= m stay below eps/2.
bool gaps_below(const Integer& m, const Rational& half_eps) {
  if (!(make_rational(gap_bound(m), m) < half_eps)) return false;
  unsigned k = 0;
  const Integer primorial = next_primorial_above(m, k);
  return make_rational(pow_ui(Integer(2), k) + 1, primorial) < half_eps;
}

}  // namespace

unsigned max_distinct_prime_factors(const Integer& b) {
  unsigned count = 0;
  Integer product = 1, p = 2;
  while (true) {
    product *= p;
    if (product > b) return count;
    ++count;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
}

FaithfulParameters faithful_parameters(const Rational& eps, std::size_t n) {
  if (eps <= 0 || eps > 1) throw Error(Errc::InvalidArgument, "eps outside (0,1]");
  if (n < 2) throw Error(Errc::InvalidArgument, "dimension must be >= 2");
  const Rational half_eps = eps / 2;
  const Rational two_over_eps = 2 / eps;
  const Rational floor_scale = pow_ui(two_over_eps, n - 2);

  auto floor_for = [&](const Integer& m) {
    const Rational f = floor_scale * m;
    return ceil_div(f.get_num(), f.get_den());
  };
  // Gap of the last coprime-numerator step, whose coprimality modulus is
  // a_2 * ... * a_n <= (2/eps) * a_{n-1}^(n-1) while a_2 >= (eps/2)^(n-3) a_{n-1}.
  auto last_step_holds = [&](const Integer& m) {
    if (n < 3) return true;
    const Integer prime_floor = floor_for(m);
    const Rational modulus_bound = two_over_eps * pow_ui(prime_floor, n - 1);
    const Integer modulus_floor = floor_plus_one(modulus_bound) - 1;
    const Rational gap = gap_bound(modulus_floor) * pow_ui(two_over_eps, n - 3) / Rational(prime_floor);
    return gap < half_eps;
  };

  Integer m = floor_plus_one(4 / eps);
  while (!(gaps_below(m, half_eps) && last_step_holds(m))) ++m;
  return {m, floor_for(m)};
}

// ---------------------------------------------------------------------------
// Construction

namespace {

Chain construct(const TargetPoint& target, const Rational& eps, const Integer& prime) {
  const std::size_t n = target.dimension();
  const Rational half_eps = eps / 2;
  const auto& x = target.coords;  // x[i-1] is coordinate i
  std::vector<Integer> a(n + 1);

  a[n - 1] = prime;
  a[n] = find_denominator_for_prime(prime, x[n - 1], eps, half_eps).denominator;
  for (std::size_t i = n - 1; i >= 3; --i) {
    a[i - 1] = find_coprime_numerator(x[i - 1], a[i], a[i], eps, half_eps).numerator;
    if (a[i - 1] < 2) throw Error(Errc::NoCandidate, "chain term collapsed to 1");
  }
  if (n >= 3) {
    Integer tail = 1;
    for (std::size_t i = 2; i <= n; ++i) tail *= a[i];
    a[1] = find_coprime_numerator(x[1], a[2], tail, eps, half_eps).numerator;
  }
  if (a[1] < 2) throw Error(Errc::NoCandidate, "a_1 = 1 leaves no room for a_0");
  a[0] = find_coprime_numerator(x[0], a[1], a[1], eps, Rational(0)).numerator;
  return Chain(std::move(a));
}

}  // namespace

Chain build_chain(const TargetPoint& target, const Rational& eps, const BuilderConfig& config) {
  if (target.dimension() < 2) throw Error(Errc::InvalidArgument, "target needs at least 2 coordinates");
  if (eps <= 0 || eps > 1) throw Error(Errc::InvalidArgument, "eps outside (0,1]");

  if (config.mode == BuildMode::Faithful) {
    const auto params = faithful_parameters(eps, target.dimension());
    const Integer prime = next_prime_in_ap(CongruenceClass(0, 1), params.prime_floor);
    try {
      return construct(target, eps, prime);
    } catch (const Error& e) {
      if (e.code() != Errc::NoCandidate) throw;
      throw Error(Errc::NoCandidate, "faithful schedule failed with a_{n-1} = " + prime.get_str() + ": " + e.what());
    }
  }

  if (config.escalation_factor <= 1) throw Error(Errc::InvalidArgument, "escalation factor must exceed 1");
  Integer floor = std::max(config.start_prime_floor, Integer(2));
  for (unsigned attempt = 0; attempt <= config.max_escalations; ++attempt) {
    const Integer prime = next_prime_in_ap(CongruenceClass(0, 1), floor);
    try {
      return construct(target, eps, prime);
    } catch (const Error& e) {
      if (e.code() != Errc::NoCandidate) throw;
    }
    const Rational grown = config.escalation_factor * floor;
    floor = std::max(ceil_div(grown.get_num(), grown.get_den()), Integer(prime + 1));
  }
  throw Error(Errc::EscalationExhausted,
              "no chain after " + std::to_string(config.max_escalations) + " escalations (floor " + floor.get_str() + ")");
}

}  // namespace fpdense
