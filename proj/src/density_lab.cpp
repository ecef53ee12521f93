#include "fpdense/density_lab.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <json.hpp>

namespace fpdense {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kInverseTableLimit = 10'000'000;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  return mod_inverse(Integer(static_cast<unsigned long>(a)), Integer(static_cast<unsigned long>(p))).get_ui();
}

// (p-1)^(n-1), or budget + 1 if it would exceed the budget.
std::uint64_t point_count(std::uint64_t p, std::size_t n, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (total > budget / (p - 1)) return budget + 1;
    total *= p - 1;
  }
  return total;
}

void check_inputs(std::uint64_t p, std::size_t n, const EnumerationConfig& config) {
  if (n < 2) throw Error(Errc::InvalidArgument, "dimension must be >= 2");
  if (!is_prime(Integer(static_cast<unsigned long>(p)))) {
    throw Error(Errc::InvalidArgument, std::to_string(p) + " is not prime");
  }
  if (point_count(p, n, config.point_budget) > config.point_budget) {
    throw Error(Errc::BudgetExceeded, "(p-1)^(n-1) exceeds the enumeration budget of " +
                                          std::to_string(config.point_budget));
  }
}

}  // namespace

void enumerate_points(std::uint64_t p, std::size_t n, const PointVisitor& visit, const EnumerationConfig& config) {
  check_inputs(p, n, config);

  std::vector<std::uint64_t> inverse;
  if (p <= kInverseTableLimit) {
    inverse.assign(p, 0);
    inverse[1] = 1;
    for (std::uint64_t i = 2; i < p; ++i) inverse[i] = (p - mul_mod(p / i, inverse[p % i], p)) % p;
  }
  auto inv = [&](std::uint64_t a) { return inverse.empty() ? inverse_mod(a, p) : inverse[a]; };

  // Odometer over the free coordinates; prefix[i] = x_1 * ... * x_i mod p.
  std::vector<std::uint64_t> x(n, 1), prefix(n, 1);
  while (true) {
    x[n - 1] = inv(prefix[n - 2]);
    visit(x);
    std::size_t i = n - 1;
    while (i > 0 && x[i - 1] == p - 1) {
      x[i - 1] = 1;
      --i;
    }
    if (i == 0) return;
    ++x[i - 1];
    for (std::size_t j = i - 1; j + 1 < n; ++j) prefix[j] = mul_mod(j == 0 ? 1 : prefix[j - 1], x[j], p);
  }
}

std::vector<std::vector<std::uint64_t>> collect_points(std::uint64_t p, std::size_t n,
                                                       const EnumerationConfig& config) {
  std::vector<std::vector<std::uint64_t>> out;
  enumerate_points(p, n, [&](std::span<const std::uint64_t> x) { out.emplace_back(x.begin(), x.end()); }, config);
  return out;
}

DiscrepancyReport box_discrepancy(std::uint64_t p, std::size_t n, std::uint64_t k, const EnumerationConfig& config) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be >= 1");
  check_inputs(p, n, config);
  std::uint64_t boxes = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (boxes > config.box_budget / k) throw Error(Errc::BudgetExceeded, "k^n exceeds the box budget");
    boxes *= k;
  }

  DiscrepancyReport report;
  report.p = p;
  report.n = n;
  report.k = k;
  report.counts.assign(boxes, 0);
  // Half-open boxes [j/k, (j+1)/k); x_i/p < 1 never reaches the closed end.
  enumerate_points(
      p, n,
      [&](std::span<const std::uint64_t> x) {
        std::uint64_t index = 0;
        for (const auto xi : x) index = index * k + static_cast<std::uint64_t>(static_cast<u128>(xi) * k / p);
        ++report.counts[index];
        ++report.total;
      },
      config);

  // |c/T - 1/K| = |c K - T| / (T K)
  const Integer total(static_cast<unsigned long>(report.total));
  const Integer box_count(static_cast<unsigned long>(boxes));
  Integer worst = 0, sum = 0;
  for (const auto c : report.counts) {
    const Integer dev = abs(Integer(Integer(static_cast<unsigned long>(c)) * box_count - total));
    worst = std::max(worst, dev);
    sum += dev;
  }
  report.sup_deviation = make_rational(worst, total * box_count);
  report.mean_abs_deviation = make_rational(sum, total * box_count * box_count);
  return report;
}

Rational nearest_point_distance(std::uint64_t p, const TargetPoint& target, const EnumerationConfig& config) {
  const std::size_t n = target.dimension();
  const Integer prime(static_cast<unsigned long>(p));
  std::optional<Rational> best;
  enumerate_points(
      p, n,
      [&](std::span<const std::uint64_t> x) {
        Rational worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
          worst = std::max(worst, abs_diff(make_rational(Integer(static_cast<unsigned long>(x[i])), prime),
                                           target.coords[i]));
          if (best && worst >= *best) return;
        }
        best = worst;
      },
      config);
  return *best;
}

void write_points_csv(std::ostream& out, std::uint64_t p, std::size_t n, const EnumerationConfig& config) {
  check_inputs(p, n, config);
  for (std::size_t i = 1; i <= n; ++i) out << (i > 1 ? "," : "") << 'x' << i;
  out << '\n';
  enumerate_points(
      p, n,
      [&](std::span<const std::uint64_t> x) {
        for (std::size_t i = 0; i < x.size(); ++i) out << (i > 0 ? "," : "") << x[i];
        out << '\n';
      },
      config);
}

std::string serialize_report(const DiscrepancyReport& report) {
  nlohmann::ordered_json doc;
  doc["format"] = "fpdense-discrepancy";
  doc["p"] = std::to_string(report.p);
  doc["n"] = report.n;
  doc["k"] = report.k;
  doc["total"] = std::to_string(report.total);
  doc["counts"] = report.counts;
  doc["sup_deviation"] = to_string(report.sup_deviation);
  doc["mean_abs_deviation"] = to_string(report.mean_abs_deviation);
  return doc.dump(2) + "\n";
}

}  // namespace fpdense
