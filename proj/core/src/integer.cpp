#include "zsparse/integer.hpp"

#include "zsparse/errors.hpp"

#include <limits>

namespace zsparse {

std::string to_string(const Integer& value) { return value.get_str(); }

Integer parse_integer(const std::string& text) {
  Integer out;
  std::string body = text;
  if (!body.empty() && body.front() == '+') body.erase(body.begin());
  if (body.empty() || out.set_str(body, 10) != 0) {
    throw DomainError("not an integer: '" + text + "'");
  }
  return out;
}

bool fits_u64(const Integer& value) {
  if (sgn(value) < 0) return false;
  return mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Integer& value) {
  if (!fits_u64(value)) throw DomainError("integer does not fit in 64 bits: " + to_string(value));
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

bool fits_i64(const Integer& value) {
  static const Integer lo = from_i64(std::numeric_limits<std::int64_t>::min());
  static const Integer hi = from_i64(std::numeric_limits<std::int64_t>::max());
  return value >= lo && value <= hi;
}

std::int64_t to_i64(const Integer& value) {
  if (!fits_i64(value)) throw DomainError("integer does not fit in 64 bits: " + to_string(value));
  if (sgn(value) >= 0) return static_cast<std::int64_t>(to_u64(value));
  Integer magnitude = -value;
  if (magnitude == from_u64(std::uint64_t{1} << 63)) return std::numeric_limits<std::int64_t>::min();
  return -static_cast<std::int64_t>(to_u64(magnitude));
}

Integer from_u64(std::uint64_t value) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
  return out;
}

Integer from_i64(std::int64_t value) {
  if (value >= 0) return from_u64(static_cast<std::uint64_t>(value));
  // two's complement magnitude, valid for INT64_MIN too
  std::uint64_t magnitude = ~static_cast<std::uint64_t>(value) + 1;
  return -from_u64(magnitude);
}

std::uint64_t floor_mod(const Integer& value, std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("modulus must be positive");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), from_u64(modulus).get_mpz_t());
  return to_u64(r);
}

std::optional<Integer> exact_quotient(const Integer& value, const Integer& divisor) {
  if (divisor == 0) return std::nullopt;
  if (!mpz_divisible_p(value.get_mpz_t(), divisor.get_mpz_t())) return std::nullopt;
  Integer q;
  mpz_divexact(q.get_mpz_t(), value.get_mpz_t(), divisor.get_mpz_t());
  return q;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  std::uint64_t g = gcd_u64(a, b);
  unsigned __int128 l = static_cast<unsigned __int128>(a / g) * b;
  if (l > std::numeric_limits<std::uint64_t>::max()) throw DomainError("lcm overflows 64 bits");
  return static_cast<std::uint64_t>(l);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::optional<Congruence> crt_merge(const Congruence& a, const Congruence& b) {
  // Solve x = a.r + a.m * t with a.m * t = b.r - a.r (mod b.m).
  Integer m1 = from_u64(a.modulus), m2 = from_u64(b.modulus);
  Integer r1 = from_u64(a.residue % a.modulus), r2 = from_u64(b.residue % b.modulus);
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  Integer diff = r2 - r1;
  if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  Integer l = m1 / g * m2;
  if (!fits_u64(l)) throw DomainError("CRT modulus overflows 64 bits");
  Integer x = r1 + m1 * ((diff / g) * s);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), l.get_mpz_t());
  return Congruence{to_u64(r), to_u64(l)};
}

}  // namespace zsparse
