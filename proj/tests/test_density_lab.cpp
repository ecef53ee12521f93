#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fpdense/density_lab.hpp"
#include "oracles.hpp"

using namespace fpdense;

namespace {

std::uint64_t power(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("enumerate_points small example") {
  const auto pts = collect_points(5, 2);
  const std::vector<std::vector<std::uint64_t>> expected{{1, 1}, {2, 3}, {3, 2}, {4, 4}};
  CHECK(pts == expected);
}

TEST_CASE("point count is (p-1)^(n-1)") {
  for (std::uint64_t p = 2; p <= 31; ++p) {
    if (!oracle::is_prime(static_cast<std::int64_t>(p))) continue;
    for (std::size_t n : {2u, 3u}) {
      std::uint64_t count = 0;
      enumerate_points(p, n, [&](std::span<const std::uint64_t>) { ++count; });
      CHECK(count == power(p - 1, n - 1));
    }
  }
}

TEST_CASE("enumeration agrees with the naive scan") {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (std::size_t n : {2u, 3u, 4u}) {
      CHECK(collect_points(p, n) == oracle::hypersurface_points(p, n));
    }
  }
}

TEST_CASE("point set is symmetric under coordinate permutations") {
  auto pts = collect_points(11, 3);
  std::sort(pts.begin(), pts.end());
  for (auto q : pts) {
    std::swap(q[0], q[2]);
    CHECK(std::binary_search(pts.begin(), pts.end(), q));
    std::swap(q[0], q[1]);
    CHECK(std::binary_search(pts.begin(), pts.end(), q));
  }
}

TEST_CASE("enumerate_points input checks") {
  CHECK_THROWS_AS(collect_points(6, 2), Error);
  CHECK_THROWS_AS(collect_points(5, 1), Error);
  EnumerationConfig tight;
  tight.point_budget = 100;
  try {
    collect_points(101, 3, tight);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
  CHECK(collect_points(101, 2, tight).size() == 100);
}

TEST_CASE("box_discrepancy examples") {
  const auto one = box_discrepancy(7, 3, 1);
  CHECK(one.counts == std::vector<std::uint64_t>{36});
  CHECK(one.sup_deviation == 0);

  // (1,1), (2,3), (3,2), (4,4) land one per quarter box.
  const auto r = box_discrepancy(5, 2, 2);
  CHECK(r.counts == std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(r.sup_deviation == 0);
  CHECK(r.mean_abs_deviation == 0);

  const auto big = box_discrepancy(101, 2, 4);
  CHECK(big.total == 100);
  CHECK(std::accumulate(big.counts.begin(), big.counts.end(), std::uint64_t{0}) == 100);
  CHECK(big.sup_deviation == Rational(7, 400));
  CHECK_THROWS_AS(box_discrepancy(5, 2, 0), Error);
}

TEST_CASE("box_discrepancy matches direct counting") {
  for (std::uint64_t p : {7u, 13u, 29u}) {
    for (std::uint64_t k : {2u, 3u, 5u}) {
      const auto r = box_discrepancy(p, 3, k);
      std::vector<std::uint64_t> counts(k * k * k, 0);
      for (const auto& x : oracle::hypersurface_points(p, 3)) {
        // floor(k x / p) per axis.
        ++counts[(k * x[0] / p) * k * k + (k * x[1] / p) * k + k * x[2] / p];
      }
      CHECK(r.counts == counts);
      Rational worst = 0;
      for (const auto c : counts) {
        worst = std::max(worst, abs_diff(make_rational(c, r.total), make_rational(1, k * k * k)));
      }
      CHECK(r.sup_deviation == worst);
    }
  }
}

TEST_CASE("discrepancy shrinks as p grows") {
  const auto a = box_discrepancy(101, 2, 4);
  const auto b = box_discrepancy(1009, 2, 4);
  const auto c = box_discrepancy(10007, 2, 4);
  CHECK(b.sup_deviation == Rational(13, 1008));
  CHECK(c.sup_deviation == Rational(501, 80048));
  CHECK(a.sup_deviation > b.sup_deviation);
  CHECK(b.sup_deviation > c.sup_deviation);
}

TEST_CASE("nearest_point_distance") {
  CHECK(nearest_point_distance(5, TargetPoint({Rational(1, 5), Rational(1, 5)})) == 0);
  CHECK(nearest_point_distance(5, TargetPoint({Rational(2, 5), Rational(3, 5)})) == 0);
  CHECK(nearest_point_distance(5, TargetPoint({Rational(0), Rational(0)})) == Rational(1, 5));

  const TargetPoint t({Rational(1, 3), Rational(1, 2), Rational(5, 7)});
  Rational best = 1;
  for (const auto& x : oracle::hypersurface_points(13, 3)) {
    Rational worst = 0;
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, abs_diff(make_rational(x[i], 13), t.coords[i]));
    best = std::min(best, worst);
  }
  CHECK(nearest_point_distance(13, t) == best);
}

TEST_CASE("CSV and report output") {
  std::ostringstream csv;
  write_points_csv(csv, 5, 2);
  CHECK(csv.str() == "x1,x2\n1,1\n2,3\n3,2\n4,4\n");

  const std::string json = serialize_report(box_discrepancy(5, 2, 2));
  CHECK(json.find("\"sup_deviation\"") != std::string::npos);
  CHECK(json.find("\"0/1\"") != std::string::npos);
}
