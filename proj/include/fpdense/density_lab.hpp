#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fpdense/arith.hpp"
#include "fpdense/chain.hpp"

namespace fpdense {

struct EnumerationConfig {
  std::uint64_t point_budget = 100'000'000;
  std::uint64_t box_budget = 10'000'000;
};

using PointVisitor = std::function<void(std::span<const std::uint64_t>)>;

// Visits every (x_1, ..., x_n) in [1,p)^n with x_1 * ... * x_n = 1 (mod p),
// lexicographically in (x_1, ..., x_{n-1}). Throws BudgetExceeded when
// (p-1)^(n-1) exceeds the point budget.
void enumerate_points(std::uint64_t p, std::size_t n, const PointVisitor& visit, const EnumerationConfig& config = {});

std::vector<std::vector<std::uint64_t>> collect_points(std::uint64_t p, std::size_t n,
                                                       const EnumerationConfig& config = {});

struct DiscrepancyReport {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> counts;  // row-major over box indices (j_1, ..., j_n)
  Rational sup_deviation;             // max over boxes of |count/total - 1/k^n|
  Rational mean_abs_deviation;
};

DiscrepancyReport box_discrepancy(std::uint64_t p, std::size_t n, std::uint64_t k,
                                  const EnumerationConfig& config = {});

// Max-norm distance from target to the nearest enumerated point.
Rational nearest_point_distance(std::uint64_t p, const TargetPoint& target, const EnumerationConfig& config = {});

void write_points_csv(std::ostream& out, std::uint64_t p, std::size_t n, const EnumerationConfig& config = {});
std::string serialize_report(const DiscrepancyReport& report);

}  // namespace fpdense
