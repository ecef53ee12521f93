#include <doctest.h>

#include <random>
#include <vector>

#include "fpdense/arith.hpp"
#include "oracles.hpp"

using namespace fpdense;

TEST_CASE("gcd small cases") {
  CHECK(gcd(12, 18) == 6);
  CHECK(gcd(7, 1) == 1);
  CHECK(gcd(0, 5) == 5);
  CHECK(gcd(0, 0) == 0);
  CHECK(gcd(-12, 18) == 6);
}

TEST_CASE("gcd divides both and absorbs common divisors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  for (int i = 0; i < 1000; ++i) {
    const Integer a = dist(rng), b = dist(rng);
    const Integer g = gcd(a, b);
    if (g == 0) {
      CHECK(a == 0);
      CHECK(b == 0);
      continue;
    }
    CHECK(a % g == 0);
    CHECK(b % g == 0);
    const Integer c = std::uniform_int_distribution<long>(1, 50)(rng);
    CHECK(gcd(Integer(a * c), Integer(b * c)) == g * c);
  }
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(1, 2) == 1);
  CHECK(mod_inverse(3, 7) == oracle::mod_inverse(3, 7));
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(-3, 7) == 2);

  try {
    mod_inverse(4, 6);
    FAIL("expected NotCoprime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCoprime);
  }
  CHECK_THROWS_AS(mod_inverse(1, 1), Error);
}

TEST_CASE("mod_inverse property over random coprime pairs") {
  std::mt19937_64 rng(3);
  int tested = 0;
  while (tested < 1000) {
    const long m = std::uniform_int_distribution<long>(2, 1'000'000)(rng);
    const long a = std::uniform_int_distribution<long>(1, 10'000'000)(rng);
    if (std::gcd(a, m) != 1) continue;
    const Integer inv = mod_inverse(a, m);
    CHECK(inv >= 1);
    CHECK(inv < m);
    CHECK(Integer(a) * inv % m == 1);
    ++tested;
  }
}

TEST_CASE("crt examples") {
  const std::vector<CongruenceClass> two{{1, 2}, {14, 15}};
  CHECK(crt(two) == CongruenceClass(29, 30));

  const std::vector<CongruenceClass> vacuous{{0, 1}};
  CHECK(crt(vacuous) == CongruenceClass(0, 1));

  const std::vector<CongruenceClass> clash{{2, 4}, {3, 6}};
  try {
    crt(clash);
    FAIL("expected ModuliNotCoprime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ModuliNotCoprime);
  }
  CHECK_THROWS_AS(crt(std::vector<CongruenceClass>{}), Error);
}

TEST_CASE("crt agrees with a scan over the full period") {
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 200) {
    std::vector<CongruenceClass> classes;
    long product = 1;
    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      const long m = std::uniform_int_distribution<long>(1, 100)(rng);
      for (const auto& c : classes) ok = ok && std::gcd(c.modulus.get_si(), m) == 1;
      classes.emplace_back(std::uniform_int_distribution<long>(0, m - 1)(rng), m);
      product *= m;
    }
    if (!ok || product > 1'000'000) continue;
    const CongruenceClass got = crt(classes);
    CHECK(got.modulus == product);
    long matches = 0, found = -1;
    for (long r = 0; r < product; ++r) {
      bool all = true;
      for (const auto& c : classes) all = all && r % c.modulus.get_si() == c.residue.get_si();
      if (all) {
        ++matches;
        found = r;
      }
    }
    CHECK(matches == 1);
    CHECK(got.residue == found);
    ++tested;
  }
}

TEST_CASE("is_prime against trial division") {
  CHECK(is_prime(29));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(0));
  for (long n = 1; n < 20000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("is_prime on strong pseudoprimes and large values") {
  // Strong pseudoprimes to several small bases.
  CHECK_FALSE(is_prime(Integer("3215031751")));
  CHECK_FALSE(is_prime(Integer("3825123056546413051")));
  CHECK_FALSE(is_prime(Integer("318665857834031151167461")));
  // psi_13 itself is composite and is the first number past the deterministic range.
  CHECK_FALSE(is_prime(deterministic_primality_bound()));
  CHECK(primality_method(deterministic_primality_bound()) == PrimalityMethod::Probabilistic);
  CHECK(primality_method(Integer(1'000'003)) == PrimalityMethod::Deterministic);

  Integer mersenne127;
  mpz_ui_pow_ui(mersenne127.get_mpz_t(), 2, 127);
  mersenne127 -= 1;
  CHECK(is_prime(mersenne127));
  CHECK_FALSE(is_prime(Integer(mersenne127 * 3)));
  CHECK(is_prime(Integer("1000000000000000000000007")));
}

TEST_CASE("next_prime_in_ap examples") {
  CHECK(next_prime_in_ap(CongruenceClass(29, 30), 2) == 29);
  CHECK(next_prime_in_ap(CongruenceClass(29, 30), 30) == 59);
  CHECK(next_prime_in_ap(CongruenceClass(1, 1), 8) == 11);
  CHECK_THROWS_AS(next_prime_in_ap(CongruenceClass(2, 4), 2), Error);

  PrimeSearchConfig tiny;
  tiny.max_steps = 1;
  try {
    next_prime_in_ap(CongruenceClass(19, 30), 40, tiny);  // 49 is the only term tried
    FAIL("expected SearchExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SearchExhausted);
  }
}

TEST_CASE("next_prime_in_ap is the least prime in range") {
  std::mt19937_64 rng(9);
  int tested = 0;
  while (tested < 300) {
    const long m = std::uniform_int_distribution<long>(1, 500)(rng);
    const long r = std::uniform_int_distribution<long>(0, m - 1)(rng);
    if (std::gcd(r, m) != 1) continue;
    const long lower = std::uniform_int_distribution<long>(1, 5000)(rng);
    const Integer p = next_prime_in_ap(CongruenceClass(r, m), lower);
    CHECK(p >= lower);
    CHECK(p % m == r);
    CHECK(oracle::is_prime(p.get_si()));
    for (long t = lower; t < p.get_si(); ++t) {
      if (t % m == r) CHECK_FALSE(oracle::is_prime(t));
    }
    ++tested;
  }
}

TEST_CASE("factorize") {
  const auto f30 = factorize(30);
  REQUIRE(f30.omega() == 3);
  CHECK(f30.prime_powers[0] == PrimePower{2, 1});
  CHECK(f30.prime_powers[1] == PrimePower{3, 1});
  CHECK(f30.prime_powers[2] == PrimePower{5, 1});

  CHECK(factorize(1).prime_powers.empty());

  const auto f1372 = factorize(1372);
  REQUIRE(f1372.omega() == 2);
  CHECK(f1372.prime_powers[0] == PrimePower{2, 2});
  CHECK(f1372.prime_powers[1] == PrimePower{7, 3});

  for (unsigned long n = 1; n < 3000; ++n) CHECK(factorize(n).is_consistent());

  // Product of two primes above the trial-division limit forces rho.
  const Integer semi = Integer(1'000'003) * Integer(1'000'033);
  const auto fs = factorize(semi);
  REQUIRE(fs.omega() == 2);
  CHECK(fs.prime_powers[0].prime == 1'000'003);
  CHECK(fs.prime_powers[1].prime == 1'000'033);
  CHECK(fs.is_consistent());

  const Integer square = Integer(1'000'003) * Integer(1'000'003) * 12;
  CHECK(factorize(square).is_consistent());

  FactorizeConfig starved;
  starved.trial_division_limit = 10;
  starved.rho_iterations = 5;
  try {
    factorize(semi, starved);
    FAIL("expected FactorizationTooHard");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FactorizationTooHard);
  }
}

TEST_CASE("jacobsthal spot values") {
  CHECK(jacobsthal(1) == 1);
  CHECK(jacobsthal(2) == 2);
  CHECK(jacobsthal(6) == 4);
  CHECK(jacobsthal(30) == 6);
  CHECK(jacobsthal(210) == 10);
  try {
    jacobsthal(kJacobsthalScanLimit + 1);
    FAIL("expected InputTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InputTooLarge);
  }
}

TEST_CASE("jacobsthal matches the sliding-window oracle for small b") {
  for (std::int64_t b = 1; b <= 600; ++b) CHECK(jacobsthal(b) == static_cast<std::uint64_t>(oracle::jacobsthal(b)));
}

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("1/100") == Rational(1, 100));
  CHECK(parse_rational("0.01") == Rational(1, 100));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational(" 3 ") == Rational(3));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);

  const auto list = parse_rational_list("1/2, 0.75,1");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == Rational(3, 4));
}
