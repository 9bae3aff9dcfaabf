// Exact integer arithmetic shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zsparse {

using Integer = mpz_class;

std::string to_string(const Integer& value);
Integer parse_integer(const std::string& text);

bool fits_u64(const Integer& value);
std::uint64_t to_u64(const Integer& value);
bool fits_i64(const Integer& value);
std::int64_t to_i64(const Integer& value);
Integer from_u64(std::uint64_t value);
Integer from_i64(std::int64_t value);

/// Least nonnegative residue of `value` modulo `modulus` (modulus >= 1).
std::uint64_t floor_mod(const Integer& value, std::uint64_t modulus);

/// Exact quotient when `divisor` divides `value`, otherwise nullopt.
std::optional<Integer> exact_quotient(const Integer& value, const Integer& divisor);

Integer pow(const Integer& base, unsigned long exponent);
Integer factorial(unsigned long n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
/// lcm, throwing DomainError on 64-bit overflow.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Prime factorisation by trial division; ascending (prime, multiplicity).
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

struct Congruence {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
};

/// Merge x = a.residue (mod a.modulus) and x = b.residue (mod b.modulus).
/// Returns nullopt when the system has no solution.
std::optional<Congruence> crt_merge(const Congruence& a, const Congruence& b);

}  // namespace zsparse
