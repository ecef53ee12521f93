#include "fpdense/poly.hpp"

namespace fpdense {

MonicPolynomial::MonicPolynomial(std::vector<Integer> lower_coefficients) : coeffs_(std::move(lower_coefficients)) {
  if (coeffs_.empty()) throw Error(Errc::InvalidArgument, "polynomial degree must be >= 1");
}

Integer MonicPolynomial::height() const {
  Integer h = 1;
  for (const auto& c : coeffs_) h = std::max(h, Integer(abs(c)));
  return h;
}

std::string MonicPolynomial::to_string() const {
  std::string out = "x^" + std::to_string(degree());
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const auto& c = coeffs_[k];
    if (c == 0) continue;
    out += c < 0 ? " - " : " + ";
    out += Integer(abs(c)).get_str();
    if (k >= 1) out += k == 1 ? "x" : "x^" + std::to_string(k);
  }
  return out;
}

Integer poly_eval(const MonicPolynomial& f, const Integer& x) {
  Integer acc = 1;
  const auto& c = f.lower_coefficients();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

namespace {

Integer pow_ui(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational pow_ui(const Rational& base, unsigned long e) {
  return make_rational(pow_ui(base.get_num(), e), pow_ui(base.get_den(), e));
}

bool exact_root(const Integer& v, unsigned d, Integer& root) {
  return mpz_root(root.get_mpz_t(), v.get_mpz_t(), d) != 0;
}

// alpha^(1/d) > lower, for lower possibly negative.
bool root_above(const Rational& alpha, unsigned d, const Rational& lower) {
  return lower < 0 || pow_ui(lower, d) < alpha;
}

bool root_below(const Rational& alpha, unsigned d, const Rational& upper) { return alpha < pow_ui(upper, d); }

}  // namespace

Rational rational_root(const Rational& alpha, unsigned d, const Rational& precision) {
  if (alpha < 0 || alpha > 1) throw Error(Errc::InvalidArgument, "alpha outside [0,1]");
  if (d < 1) throw Error(Errc::InvalidArgument, "degree must be >= 1");
  if (precision <= 0) throw Error(Errc::InvalidArgument, "precision must be positive");

  Integer num_root, den_root;
  if (exact_root(alpha.get_num(), d, num_root) && exact_root(alpha.get_den(), d, den_root)) {
    return make_rational(num_root, den_root);
  }
  // Scale 2^k with 2^-k <= precision; t = largest k-bit numerator with t^d <= alpha 2^(kd).
  unsigned long k = 0;
  while (Rational(pow_ui(Integer(2), k)) * precision < 1) ++k;
  const Integer scale = pow_ui(Integer(2), k);
  const Integer bound = alpha.get_num() * pow_ui(scale, d) / alpha.get_den();
  Integer lo = 0, hi = scale;
  while (lo < hi) {
    const Integer mid = (lo + hi + 1) / 2;
    if (pow_ui(mid, d) <= bound) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return make_rational(lo, scale);
}

Integer poly_prime_floor(const MonicPolynomial& f, const Rational& eps) {
  return floor_plus_one(Rational(2 * static_cast<unsigned long>(f.degree()) * f.height()) / eps);
}

PolyCertificate approximate_polynomial(const MonicPolynomial& f, const TargetPoint& alphas, const Rational& eps,
                                       const BuilderConfig& config, const ApproximateOptions& options) {
  if (eps <= 0 || eps > 1) throw Error(Errc::InvalidArgument, "eps outside (0,1]");
  const auto d = static_cast<unsigned>(f.degree());
  // The budget eps/2^(d+1) on |x_i/p - alpha_i^(1/d)| is split evenly between
  // the root approximation and the point approximation.
  const Rational root_precision = eps / Rational(pow_ui(Integer(2), d + 2));

  std::vector<Rational> roots;
  for (const auto& alpha : alphas.coords) roots.push_back(rational_root(alpha, d, root_precision));
  TargetPoint root_targets(std::move(roots));

  ApproximateOptions inner_options = options;
  inner_options.min_prime = std::max(options.min_prime, poly_prime_floor(f, eps));
  Certificate inner = approximate(root_targets, root_precision, config, inner_options);

  const Integer& p = inner.witness.p;
  const Integer p_pow = pow_ui(p, d);
  std::vector<Rational> values, errors;
  for (std::size_t i = 0; i < alphas.dimension(); ++i) {
    values.push_back(make_rational(poly_eval(f, inner.witness.x[i]), p_pow));
    errors.push_back(abs_diff(values.back(), alphas.coords[i]));
    if (!(errors.back() < eps)) {
      throw Error(Errc::InvalidArgument, "internal: coordinate " + std::to_string(i + 1) + " error " +
                                             fpdense::to_string(errors.back()) + " not below eps");
    }
  }
  return PolyCertificate{
      .f = f,
      .alphas = alphas,
      .eps = eps,
      .root_targets = std::move(root_targets),
      .root_precision = root_precision,
      .inner = std::move(inner),
      .values = std::move(values),
      .errors = std::move(errors),
  };
}

VerifyResult verify_poly_certificate(const PolyCertificate& cert) {
  auto fail = [](std::string reason) { return VerifyResult{false, std::move(reason)}; };
  if (auto inner = verify_certificate(cert.inner); !inner) return fail("inner certificate: " + inner.reason);

  const auto d = static_cast<unsigned>(cert.f.degree());
  const std::size_t n = cert.alphas.dimension();
  if (cert.root_precision != cert.eps / Rational(pow_ui(Integer(2), d + 2))) return fail("root precision mismatch");
  if (cert.inner.target != cert.root_targets || cert.inner.eps != cert.root_precision) {
    return fail("inner certificate does not target the roots");
  }
  if (cert.root_targets.dimension() != n || cert.values.size() != n || cert.errors.size() != n) {
    return fail("dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = cert.root_targets.coords[i];
    const auto& alpha = cert.alphas.coords[i];
    if (!root_above(alpha, d, t - cert.root_precision) || !root_below(alpha, d, t + cert.root_precision)) {
      return fail("root target " + std::to_string(i + 1) + " too far from alpha^(1/d)");
    }
  }
  const Integer& p = cert.inner.witness.p;
  if (!(Rational(p) > Rational(2 * static_cast<unsigned long>(d) * cert.f.height()) / cert.eps)) {
    return fail("p does not exceed 2 d ||f|| / eps");
  }
  const Integer p_pow = pow_ui(p, d);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational value = make_rational(poly_eval(cert.f, cert.inner.witness.x[i]), p_pow);
    if (value != cert.values[i]) return fail("value " + std::to_string(i + 1) + " misstated");
    const Rational err = abs_diff(value, cert.alphas.coords[i]);
    if (err != cert.errors[i]) return fail("error " + std::to_string(i + 1) + " misstated");
    if (!(err < cert.eps)) return fail("error " + std::to_string(i + 1) + " not below eps");
  }
  return {true, "ok"};
}

}  // namespace fpdense
