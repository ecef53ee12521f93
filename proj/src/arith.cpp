#include "fpdense/arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace fpdense {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::ModuliNotCoprime: return "ModuliNotCoprime";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::FactorizationTooHard: return "FactorizationTooHard";
    case Errc::InputTooLarge: return "InputTooLarge";
    case Errc::NoCandidate: return "NoCandidate";
    case Errc::EscalationExhausted: return "EscalationExhausted";
    case Errc::CongruenceViolated: return "CongruenceViolated";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Rationals and parsing

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::ParseError, "not an integer: '" + std::string(text) + "'");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(s.substr(0, slash));
    const auto den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text)) throw Error(Errc::ParseError, "bad denominator in '" + std::string(text) + "'");
    const Integer den(std::string(den_text), 10);
    if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw Error(Errc::ParseError, "not a decimal literal: '" + std::string(text) + "'");
    }
    const std::string digits = std::string(int_part) + std::string(frac_part);
    Integer num(digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    if (negative) num = -num;
    return make_rational(num, den);
  }
  return Rational(parse_integer(s));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (const auto part : split_commas(text)) out.push_back(parse_rational(part));
  return out;
}

std::vector<Integer> parse_integer_list(std::string_view text) {
  std::vector<Integer> out;
  for (const auto part : split_commas(text)) out.push_back(parse_integer(part));
  return out;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return d < 0 ? Rational(-d) : d;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_plus_one(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f + 1;
}

// ---------------------------------------------------------------------------
// Congruences

CongruenceClass::CongruenceClass(Integer r, Integer m) : residue(std::move(r)), modulus(std::move(m)) {
  if (modulus < 1) throw Error(Errc::InvalidArgument, "modulus must be positive");
  mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
}

bool CongruenceClass::contains(const Integer& value) const {
  return mpz_congruent_p(value.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

bool coprime(const Integer& a, const Integer& b) { return gcd(a, b) == 1; }

Integer mod_inverse(const Integer& a, const Integer& m) {
  if (m < 2) throw Error(Errc::InvalidArgument, "mod_inverse needs modulus >= 2");
  // Extended Euclid on (a mod m, m).
  Integer old_r = a % m, r = m;
  if (old_r < 0) old_r += m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    const Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(Errc::NotCoprime, "gcd(" + a.get_str() + ", " + m.get_str() + ") = " + old_r.get_str());
  }
  Integer x = old_s % m;
  if (x < 0) x += m;
  return x;
}

CongruenceClass crt(std::span<const CongruenceClass> classes) {
  if (classes.empty()) throw Error(Errc::InvalidArgument, "crt of an empty list");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (!coprime(classes[i].modulus, classes[j].modulus)) {
        throw Error(Errc::ModuliNotCoprime, classes[i].modulus.get_str() + " and " + classes[j].modulus.get_str());
      }
    }
  }
  Integer residue = classes.front().residue;
  Integer modulus = classes.front().modulus;
  for (const auto& next : classes.subspan(1)) {
    if (next.modulus == 1) continue;
    if (modulus == 1) {
      residue = next.residue;
      modulus = next.modulus;
      continue;
    }
    // residue + modulus * k = next.residue (mod next.modulus)
    Integer k = (next.residue - residue) * mod_inverse(modulus, next.modulus);
    mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), next.modulus.get_mpz_t());
    residue += modulus * k;
    modulus *= next.modulus;
  }
  return CongruenceClass(residue, modulus);
}

// ---------------------------------------------------------------------------
// Primality

namespace {

constexpr std::array<unsigned long, 13> kWitnessBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

constexpr std::array<unsigned long, 25> kSmallPrimes{2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool strong_probable_prime(const Integer& n, const Integer& n_minus_1, const Integer& d, unsigned long s,
                           const Integer& base) {
  Integer x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

std::string_view primality_method_name(PrimalityMethod m) noexcept {
  return m == PrimalityMethod::Deterministic ? "deterministic-miller-rabin" : "probabilistic-miller-rabin";
}

PrimalityMethod parse_primality_method(std::string_view text) {
  if (text == primality_method_name(PrimalityMethod::Deterministic)) return PrimalityMethod::Deterministic;
  if (text == primality_method_name(PrimalityMethod::Probabilistic)) return PrimalityMethod::Probabilistic;
  throw Error(Errc::ParseError, "unknown primality method '" + std::string(text) + "'");
}

const Integer& deterministic_primality_bound() {
  // psi_13: the least strong pseudoprime to all of the first 13 prime bases.
  static const Integer bound("3317044064679887385961981", 10);
  return bound;
}

PrimalityMethod primality_method(const Integer& n) {
  return n < deterministic_primality_bound() ? PrimalityMethod::Deterministic : PrimalityMethod::Probabilistic;
}

bool is_prime(const Integer& n, const PrimalityConfig& config) {
  if (n < 2) return false;
  for (const unsigned long p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 97 * 97) return true;

  const Integer n_minus_1 = n - 1;
  Integer d = n_minus_1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  for (const unsigned long b : kWitnessBases) {
    if (!strong_probable_prime(n, n_minus_1, d, s, Integer(b))) return false;
  }
  if (primality_method(n) == PrimalityMethod::Deterministic) return true;

  // Fixed seed keeps the verdict reproducible run to run.
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x5eed5eedUL);
  const Integer span = n - 3;
  for (unsigned i = 0; i < config.rounds; ++i) {
    const Integer base = rng.get_z_range(span) + 2;
    if (!strong_probable_prime(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

Integer next_prime_in_ap(const CongruenceClass& cls, const Integer& lower, const PrimeSearchConfig& config) {
  if (!coprime(cls.residue, cls.modulus)) {
    throw Error(Errc::InvalidArgument, "class " + cls.residue.get_str() + " mod " + cls.modulus.get_str() +
                                           " is not coprime to its modulus");
  }
  Integer t = cls.residue - lower;
  mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), cls.modulus.get_mpz_t());
  t += lower;
  for (std::uint64_t step = 0; step < config.max_steps; ++step, t += cls.modulus) {
    if (is_prime(t, config.primality)) return t;
  }
  throw Error(Errc::SearchExhausted, "no prime = " + cls.residue.get_str() + " mod " + cls.modulus.get_str() +
                                         " within " + std::to_string(config.max_steps) + " terms from " +
                                         lower.get_str());
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the
// budget runs out for this polynomial.
Integer rho_factor(const Integer& n, unsigned long c, std::uint64_t& budget) {
  auto f = [&](const Integer& v) {
    Integer r = v * v + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  Integer y = 2, x, ys, q = 1, g = 1;
  std::uint64_t r = 1;
  constexpr std::uint64_t kBatch = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = f(y);
        Integer diff = x - y;
        q = q * abs(diff) % n;
      }
      g = gcd(q, n);
      k += lim;
      if (budget <= lim) {
        budget = 0;
        return 0;
      }
      budget -= lim;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(Integer(x - ys)), n);
      if (budget == 0) return 0;
      --budget;
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

void split_composite(const Integer& n, std::vector<Integer>& primes, std::uint64_t& budget) {
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    const Integer root = sqrt(n);
    split_composite(root, primes, budget);
    split_composite(root, primes, budget);
    return;
  }
  for (unsigned long c = 1; budget > 0; ++c) {
    const Integer d = rho_factor(n, c, budget);
    if (d != 0) {
      split_composite(d, primes, budget);
      split_composite(n / d, primes, budget);
      return;
    }
  }
  throw Error(Errc::FactorizationTooHard, "rho budget exhausted on " + n.get_str());
}

}  // namespace

bool Factorization::is_consistent() const {
  Integer product = 1;
  for (std::size_t i = 0; i < prime_powers.size(); ++i) {
    const auto& pp = prime_powers[i];
    if (pp.exponent < 1 || !is_prime(pp.prime)) return false;
    if (i > 0 && !(prime_powers[i - 1].prime < pp.prime)) return false;
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    product *= power;
  }
  return product == base;
}

Factorization factorize(const Integer& n, const FactorizeConfig& config) {
  if (n < 1) throw Error(Errc::InvalidArgument, "factorize needs n >= 1");
  Factorization out{n, {}};
  Integer rest = n;
  auto take = [&](const Integer& p) {
    unsigned long e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e > 0) out.prime_powers.push_back({p, e});
  };

  take(Integer(2));
  for (std::uint64_t d = 3; d <= config.trial_division_limit; d += 2) {
    if (Integer(d) * d > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) take(Integer(static_cast<unsigned long>(d)));
  }
  if (rest > 1) {
    std::vector<Integer> primes;
    std::uint64_t budget = config.rho_iterations;
    split_composite(rest, primes, budget);
    std::sort(primes.begin(), primes.end());
    for (const auto& p : primes) {
      if (!out.prime_powers.empty() && out.prime_powers.back().prime == p) {
        ++out.prime_powers.back().exponent;
      } else {
        out.prime_powers.push_back({p, 1});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jacobsthal function

std::uint64_t jacobsthal(std::uint64_t b) {
  if (b < 1) throw Error(Errc::InvalidArgument, "jacobsthal needs b >= 1");
  if (b > kJacobsthalScanLimit) {
    throw Error(Errc::InputTooLarge, "jacobsthal scan limited to b <= " + std::to_string(kJacobsthalScanLimit));
  }
  if (b == 1) return 1;

  // The coprimality pattern is b-periodic, so one period of residues plus the
  // wraparound gap covers every window.
  std::vector<bool> shares_factor(b + 1, false);
  for (const auto& pp : factorize(Integer(static_cast<unsigned long>(b))).prime_powers) {
    const std::uint64_t p = pp.prime.get_ui();
    for (std::uint64_t m = p; m <= b; m += p) shares_factor[m] = true;
  }
  std::uint64_t first = 0, last = 0, widest = 0;
  for (std::uint64_t k = 1; k <= b; ++k) {
    if (shares_factor[k]) continue;
    if (first == 0) {
      first = k;
    } else {
      widest = std::max(widest, k - last);
    }
    last = k;
  }
  return std::max(widest, first + b - last);
}

}  // namespace fpdense
