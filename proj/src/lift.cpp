#include "fpdense/lift.hpp"

#include <algorithm>
#include <array>

namespace fpdense {

bool WitnessPoint::on_hypersurface() const {
  if (p < 2 || x.empty()) return false;
  Integer product = 1;
  for (const auto& xi : x) {
    if (xi < 1 || !(xi < p)) return false;
    product = product * xi % p;
  }
  return product == 1 % p;
}

CongruenceClass dirichlet_residue(const Chain& chain) {
  const std::size_t n = chain.dimension();
  const Integer& a0 = chain[0];
  const Integer& a1 = chain[1];
  const Integer& an = chain[n];
  const Integer tail = chain.tail_product();
  const std::array<CongruenceClass, 2> classes{
      CongruenceClass(-mod_inverse(a0, a1) * an, a1),
      CongruenceClass(tail - 1, tail),
  };
  return crt(classes);
}

Integer min_prime_for_error(const Chain& chain, const Rational& delta) {
  if (delta <= 0) throw Error(Errc::InvalidArgument, "delta must be positive");
  const std::size_t n = chain.dimension();
  const auto& a = chain.terms();

  // error_1 = a_n/(a_1 p); error_i = a_{i-1}/(a_i p) for i >= 2.
  // x_1 < p  iff  p > a_n/(a_1 - a_0);  x_i < p  iff  p > a_{i-1}/(a_i - a_{i-1}).
  Integer floor = 2;
  auto require_above = [&](const Rational& bound) { floor = std::max(floor, floor_plus_one(bound)); };
  require_above(make_rational(a[n], a[1]) / delta);
  require_above(make_rational(a[n], a[1] - a[0]));
  for (std::size_t i = 2; i <= n; ++i) {
    require_above(make_rational(a[i - 1], a[i]) / delta);
    require_above(make_rational(a[i - 1], a[i] - a[i - 1]));
  }
  return floor;
}

WitnessPoint lift_chain(const Chain& chain, const Integer& p) {
  const std::size_t n = chain.dimension();
  const auto& a = chain.terms();
  WitnessPoint w{p, std::vector<Integer>(n)};

  auto exact_div = [&](const Integer& num, const Integer& den, std::size_t i) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
      throw Error(Errc::CongruenceViolated, "x_" + std::to_string(i) + " is not integral for p = " + p.get_str());
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  };
  w.x[0] = exact_div(a[0] * p + a[n], a[1], 1);
  for (std::size_t i = 2; i <= n; ++i) w.x[i - 1] = exact_div(a[i - 1] * (p + 1), a[i], i);

  if (!w.on_hypersurface()) {
    throw Error(Errc::CongruenceViolated, "lift with p = " + p.get_str() + " leaves the hypersurface");
  }
  return w;
}

std::vector<Rational> lift_errors(const Chain& chain, const WitnessPoint& w) {
  std::vector<Rational> out;
  for (std::size_t i = 1; i <= chain.dimension(); ++i) {
    out.push_back(abs_diff(make_rational(w.x[i - 1], w.p), chain.coordinate(i)));
  }
  return out;
}

Certificate approximate(const TargetPoint& target, const Rational& eps, const BuilderConfig& config,
                        const ApproximateOptions& options) {
  if (eps <= 0 || eps > 1) throw Error(Errc::InvalidArgument, "eps outside (0,1]");
  const Rational half = eps / 2;
  Chain chain = build_chain(target, half, config);
  CongruenceClass cls = dirichlet_residue(chain);
  const Integer floor = std::max(min_prime_for_error(chain, half), options.min_prime);
  const Integer p = next_prime_in_ap(cls, floor, options.prime_search);
  WitnessPoint witness = lift_chain(chain, p);

  std::vector<Rational> errors;
  for (std::size_t i = 0; i < target.dimension(); ++i) {
    errors.push_back(abs_diff(target.coords[i], make_rational(witness.x[i], p)));
  }
  Rational max_error = *std::max_element(errors.begin(), errors.end());
  if (!(max_error < eps)) {
    throw Error(Errc::InvalidArgument, "internal: max error " + to_string(max_error) + " not below eps");
  }
  return Certificate{
      .target = target,
      .eps = eps,
      .chain = std::move(chain),
      .congruence = std::move(cls),
      .prime_floor = floor,
      .witness = std::move(witness),
      .errors = std::move(errors),
      .max_error = std::move(max_error),
      .primality_method = primality_method(p),
      .mode = config.mode,
  };
}

// Deliberately avoids dirichlet_residue, lift_chain and is_prime so that a
// bug in the construction path cannot vouch for itself.
VerifyResult verify_certificate(const Certificate& cert) {
  auto fail = [](std::string reason) { return VerifyResult{false, std::move(reason)}; };

  if (cert.version != kCertificateVersion) return fail("unsupported version " + std::to_string(cert.version));
  const std::size_t n = cert.target.dimension();
  if (n < 2) return fail("target dimension below 2");
  for (const auto& t : cert.target.coords) {
    if (t < 0 || t > 1) return fail("target coordinate outside [0,1]");
  }
  if (cert.eps <= 0 || cert.eps > 1) return fail("eps outside (0,1]");

  const auto& a = cert.chain.terms();
  if (a.size() != n + 1) return fail("chain length does not match target dimension");
  if (!chain_is_valid(a)) return fail("chain invalid");

  const Integer& p = cert.witness.p;
  if (mpz_probab_prime_p(p.get_mpz_t(), 50) == 0) return fail("p is not prime");
  const PrimalityMethod expected_method =
      p < deterministic_primality_bound() ? PrimalityMethod::Deterministic : PrimalityMethod::Probabilistic;
  if (cert.primality_method != expected_method) return fail("primality method tag mismatch");
  if (p < cert.prime_floor) return fail("p below recorded prime floor");

  // Congruence: modulus a_1 * (a_2...a_n); a_0 r + a_n = 0 (mod a_1); r = -1 (mod a_2...a_n).
  Integer tail = 1;
  for (std::size_t i = 2; i <= n; ++i) tail *= a[i];
  const auto& cls = cert.congruence;
  if (cls.modulus != a[1] * tail) return fail("congruence modulus mismatch");
  if (cls.residue < 0 || !(cls.residue < cls.modulus)) return fail("congruence residue out of range");
  if (!mpz_divisible_p(Integer(a[0] * cls.residue + a[n]).get_mpz_t(), a[1].get_mpz_t())) {
    return fail("residue violates the a_1 congruence");
  }
  if (!mpz_divisible_p(Integer(cls.residue + 1).get_mpz_t(), tail.get_mpz_t())) {
    return fail("residue violates the a_2...a_n congruence");
  }
  if (!mpz_congruent_p(p.get_mpz_t(), cls.residue.get_mpz_t(), cls.modulus.get_mpz_t())) {
    return fail("p not in the congruence class");
  }

  const auto& x = cert.witness.x;
  if (x.size() != n) return fail("witness dimension mismatch");
  if (Integer(a[0] * p + a[n]) != x[0] * a[1]) return fail("x_1 does not match the lift formula");
  for (std::size_t i = 2; i <= n; ++i) {
    if (Integer(a[i - 1] * (p + 1)) != x[i - 1] * a[i]) {
      return fail("x_" + std::to_string(i) + " does not match the lift formula");
    }
  }
  Integer product = 1;
  for (const auto& xi : x) {
    if (xi < 1 || xi >= p) return fail("witness coordinate outside [1, p)");
    product *= xi;
  }
  if (product % p != 1) return fail("product of witness coordinates is not 1 mod p");

  if (cert.errors.size() != n) return fail("error list length mismatch");
  Rational worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational e = cert.target.coords[i] - make_rational(x[i], p);
    if (e < 0) e = -e;
    if (e != cert.errors[i]) return fail("error " + std::to_string(i + 1) + " misstated");
    worst = std::max(worst, e);
  }
  if (worst != cert.max_error) return fail("max_error misstated");
  if (!(worst < cert.eps)) return fail("max_error not below eps");
  return {true, "ok"};
}

}  // namespace fpdense
