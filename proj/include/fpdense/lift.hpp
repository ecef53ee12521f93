#pragma once

#include <string>
#include <vector>

#include "fpdense/arith.hpp"
#include "fpdense/chain.hpp"

namespace fpdense {

// A point (x_1/p, ..., x_n/p) with 1 <= x_i < p and x_1 * ... * x_n = 1 (mod p).
struct WitnessPoint {
  Integer p;
  std::vector<Integer> x;

  bool on_hypersurface() const;
  bool operator==(const WitnessPoint&) const = default;
};

inline constexpr int kCertificateVersion = 1;

struct Certificate {
  TargetPoint target;
  Rational eps;
  Chain chain;
  CongruenceClass congruence;
  Integer prime_floor;
  WitnessPoint witness;
  std::vector<Rational> errors;
  Rational max_error;
  PrimalityMethod primality_method = PrimalityMethod::Deterministic;
  BuildMode mode = BuildMode::Search;
  int version = kCertificateVersion;

  bool operator==(const Certificate&) const = default;
};

// p = -a_0^{-1} a_n (mod a_1) combined with p = -1 (mod a_2 ... a_n).
CongruenceClass dirichlet_residue(const Chain& chain);

// Least L such that every prime p >= L in the Dirichlet class lifts to a point
// with 1 <= x_i < p whose coordinates are all within delta of the chain point.
Integer min_prime_for_error(const Chain& chain, const Rational& delta);

// x_1 = (a_0 p + a_n)/a_1, x_i = a_{i-1}(p+1)/a_i. Throws CongruenceViolated
// if a division is inexact or the result leaves the hypersurface.
WitnessPoint lift_chain(const Chain& chain, const Integer& p);

// |x_i/p - a_{i-1}/a_i| for each coordinate.
std::vector<Rational> lift_errors(const Chain& chain, const WitnessPoint& w);

struct ApproximateOptions {
  PrimeSearchConfig prime_search;
  // Extra lower bound on p on top of the error-driven floor.
  Integer min_prime = 0;
};

// End-to-end: chain within eps/2, prime from the class with lift error < eps/2.
Certificate approximate(const TargetPoint& target, const Rational& eps, const BuilderConfig& config = {},
                        const ApproximateOptions& options = {});

struct VerifyResult {
  bool valid = false;
  std::string reason;

  explicit operator bool() const { return valid; }
};

// Rechecks a certificate from its target, eps, chain and prime alone.
VerifyResult verify_certificate(const Certificate& cert);

// Structured text (JSON) with every integer and rational as a decimal string.
std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);
// The "format" tag of a certificate document.
std::string certificate_format(const std::string& text);

}  // namespace fpdense
