#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "fpdense/error.hpp"

namespace fpdense {

// Arbitrary precision integer and exact fraction. mpq_class values produced by
// this library are always canonical (reduced, positive denominator).
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

// Parses "n", "n/d" or a decimal literal such as "0.125" (taken as the exact
// fraction 125/1000). Throws Error{ParseError}.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);
std::vector<Integer> parse_integer_list(std::string_view text);

// "num/den", always with the slash so the form is unambiguous.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational abs_diff(const Rational& a, const Rational& b);
Integer ceil_div(const Integer& a, const Integer& b);
// Smallest integer strictly greater than q.
Integer floor_plus_one(const Rational& q);

struct CongruenceClass {
  Integer residue;
  Integer modulus;

  // Reduces residue into [0, modulus). Throws InvalidArgument if modulus < 1.
  CongruenceClass(Integer residue, Integer modulus);

  bool contains(const Integer& value) const;
  bool operator==(const CongruenceClass&) const = default;
};

struct PrimePower {
  Integer prime;
  unsigned long exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  Integer base;
  std::vector<PrimePower> prime_powers;

  std::size_t omega() const { return prime_powers.size(); }
  bool is_consistent() const;
};

struct FactorizeConfig {
  std::uint64_t trial_division_limit = 1'000'000;
  std::uint64_t rho_iterations = 10'000'000;
};

enum class PrimalityMethod {
  Deterministic,  // Miller-Rabin with the first 13 prime bases, n < 3.3e24
  Probabilistic,  // Miller-Rabin with seeded pseudo-random bases
};

std::string_view primality_method_name(PrimalityMethod m) noexcept;
PrimalityMethod parse_primality_method(std::string_view text);

struct PrimalityConfig {
  unsigned rounds = 64;
};

struct PrimeSearchConfig {
  std::uint64_t max_steps = 50'000'000;
  PrimalityConfig primality;
};

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
bool coprime(const Integer& a, const Integer& b);

// x in [1, m) with a*x = 1 (mod m). Throws NotCoprime / InvalidArgument (m < 2).
Integer mod_inverse(const Integer& a, const Integer& m);

// Combines pairwise coprime congruences. Throws ModuliNotCoprime.
CongruenceClass crt(std::span<const CongruenceClass> classes);

// The bound below which the fixed 13-base Miller-Rabin test is a proof.
const Integer& deterministic_primality_bound();
PrimalityMethod primality_method(const Integer& n);
bool is_prime(const Integer& n, const PrimalityConfig& config = {});

// Smallest prime p >= lower in the progression. Throws SearchExhausted after
// max_steps terms, InvalidArgument if the class is not coprime to its modulus.
Integer next_prime_in_ap(const CongruenceClass& cls, const Integer& lower,
                         const PrimeSearchConfig& config = {});

Factorization factorize(const Integer& n, const FactorizeConfig& config = {});

constexpr std::uint64_t kJacobsthalScanLimit = 10'000'000;

// Largest gap between consecutive integers coprime to b; every run of g(b)
// consecutive integers contains one. Throws InputTooLarge above the scan limit.
std::uint64_t jacobsthal(std::uint64_t b);

}  // namespace fpdense
