#pragma once

#include "fpdense/arith.hpp"

namespace fpdense {

struct FractionCandidate {
  Integer numerator;
  Integer denominator;
  Rational value;  // numerator / denominator
  Rational error;  // |target - value|
};

// Best a in [1, b) with gcd(a, coprime_to) = 1, |x - a/b| < eps and
// a/b > min_ratio; ties go to the smaller a. coprime_to must be a multiple of
// b (coprime_to == b is the plain coprime-numerator case).
// Throws NoCandidate when nothing is admissible, InvalidArgument on bad input.
FractionCandidate find_coprime_numerator(const Rational& x, const Integer& b, const Integer& coprime_to,
                                         const Rational& eps, const Rational& min_ratio);

// Best m > prime with gcd(prime, m) = 1, |x - prime/m| < eps and
// prime/m > min_ratio; ties go to the smaller m. The search never looks past
// ceil(2*prime/eps) + prime. Throws NoCandidate.
FractionCandidate find_denominator_for_prime(const Integer& prime, const Rational& x, const Rational& eps,
                                             const Rational& min_ratio);

}  // namespace fpdense
