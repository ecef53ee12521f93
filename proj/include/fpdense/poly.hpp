#pragma once

#include <string>
#include <vector>

#include "fpdense/lift.hpp"

namespace fpdense {

// x^d + c_{d-1} x^{d-1} + ... + c_0, stored low-to-high without the leading 1.
class MonicPolynomial {
 public:
  explicit MonicPolynomial(std::vector<Integer> lower_coefficients);

  std::size_t degree() const { return coeffs_.size(); }
  const std::vector<Integer>& lower_coefficients() const { return coeffs_; }
  // max(1, |c_i|): the leading 1 counts as a coefficient.
  Integer height() const;
  std::string to_string() const;

  bool operator==(const MonicPolynomial&) const = default;

 private:
  std::vector<Integer> coeffs_;
};

Integer poly_eval(const MonicPolynomial& f, const Integer& x);

// t in [0,1] with |t - alpha^(1/d)| < precision. Exact when alpha is a perfect
// d-th power of a rational; otherwise t has a power-of-two denominator.
Rational rational_root(const Rational& alpha, unsigned d, const Rational& precision);

struct PolyCertificate {
  MonicPolynomial f;
  TargetPoint alphas;
  Rational eps;
  TargetPoint root_targets;
  Rational root_precision;
  Certificate inner;
  std::vector<Rational> values;  // f(x_i) / p^d
  std::vector<Rational> errors;  // |values_i - alphas_i|

  bool operator==(const PolyCertificate&) const = default;
};

// The inner certificate's prime exceeds 2 d ||f|| / eps.
Integer poly_prime_floor(const MonicPolynomial& f, const Rational& eps);

PolyCertificate approximate_polynomial(const MonicPolynomial& f, const TargetPoint& alphas, const Rational& eps,
                                       const BuilderConfig& config = {}, const ApproximateOptions& options = {});

VerifyResult verify_poly_certificate(const PolyCertificate& cert);

// JSON with every number as a decimal string; the inner certificate is nested
// in the plain certificate format.
std::string serialize_poly_certificate(const PolyCertificate& cert);
PolyCertificate parse_poly_certificate(const std::string& text);

}  // namespace fpdense
