#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fpdense/arith.hpp"

namespace fpdense {

// A point of [0,1]^n with exact coordinates, n >= 2.
struct TargetPoint {
  std::vector<Rational> coords;

  TargetPoint() = default;
  explicit TargetPoint(std::vector<Rational> c);

  std::size_t dimension() const { return coords.size(); }
  bool operator==(const TargetPoint&) const = default;
};

// Terms a_0 < a_1 < ... < a_n; coordinate i of the represented point is
// a_{i-1}/a_i. The public constructor rejects terms failing chain_is_valid.
class Chain {
 public:
  explicit Chain(std::vector<Integer> terms);
  // Skips validation; for deserializing data that is verified afterwards.
  static Chain unchecked(std::vector<Integer> terms);

  const std::vector<Integer>& terms() const { return terms_; }
  const Integer& operator[](std::size_t i) const { return terms_[i]; }
  std::size_t dimension() const { return terms_.size() - 1; }
  Rational coordinate(std::size_t i) const;  // 1-based, a_{i-1}/a_i
  std::vector<Rational> point() const;
  // a_2 * a_3 * ... * a_n
  Integer tail_product() const;

  bool operator==(const Chain&) const = default;

 private:
  Chain() = default;
  std::vector<Integer> terms_;
};

bool chain_is_valid(std::span<const Integer> terms);

enum class BuildMode { Search, Faithful };

std::string_view build_mode_name(BuildMode mode) noexcept;
BuildMode parse_build_mode(std::string_view text);

struct BuilderConfig {
  BuildMode mode = BuildMode::Search;
  Integer start_prime_floor = 2;
  Rational escalation_factor = 2;
  unsigned max_escalations = 40;
};

struct FaithfulParameters {
  Integer m;            // denominator threshold for the gap bound
  Integer prime_floor;  // ceil((2/eps)^(n-2) * M)
};

// The gap threshold M and the starting chain prime, with the Jacobsthal bound made
// explicit as g(b) <= 2^omega(b) and omega(b) bounded by the primorial count.
FaithfulParameters faithful_parameters(const Rational& eps, std::size_t n);

// Largest k with the product of the first k primes <= b.
unsigned max_distinct_prime_factors(const Integer& b);

// Chain whose coordinates are each within eps of target. Throws
// EscalationExhausted (search mode) or NoCandidate (faithful mode).
Chain build_chain(const TargetPoint& target, const Rational& eps, const BuilderConfig& config = {});

}  // namespace fpdense
