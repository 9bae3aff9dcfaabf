#include "zsparse/exponent_arith.hpp"

#include "zsparse/errors.hpp"

#include <algorithm>
#include <set>

namespace zsparse {

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_phi: n must be >= 1");
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::uint64_t mult_order(std::uint64_t q, std::uint64_t n) {
  if (n < 2) throw DomainError("mult_order: modulus must be >= 2");
  if (gcd_u64(q % n, n) != 1) {
    throw DomainError("mult_order: " + std::to_string(q) + " is not coprime to " + std::to_string(n));
  }
  // The order divides phi(n); strip prime factors while the power stays 1.
  std::uint64_t order = euler_phi(n);
  for (const auto& [p, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % p == 0; ++i) {
      if (pow_mod(q, order / p, n) != 1) break;
      order /= p;
    }
  }
  return order;
}

ResidueOrbit residue_orbit(std::uint64_t q, std::uint64_t n) {
  if (n == 0) throw DomainError("residue_orbit: modulus must be >= 1");
  auto step = [&](std::uint64_t r) { return mul_mod(r, q % n, n); };
  const std::uint64_t x0 = q % n;  // residue of q^1
  // Brent's cycle detection.
  std::uint64_t power = 1, lambda = 1;
  std::uint64_t tortoise = x0, hare = step(x0);
  while (tortoise != hare) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = step(hare);
    ++lambda;
  }
  std::uint64_t mu = 0;
  tortoise = hare = x0;
  for (std::uint64_t i = 0; i < lambda; ++i) hare = step(hare);
  while (tortoise != hare) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
  }
  return ResidueOrbit{mu + 1, lambda};
}

bool ExponentClassSet::contains(std::uint64_t m) const {
  if (std::binary_search(exceptional.begin(), exceptional.end(), m)) return true;
  return std::any_of(progressions.begin(), progressions.end(), [&](const Progression& p) { return p.contains(m); });
}

std::vector<std::uint64_t> ExponentClassSet::materialize(std::uint64_t limit) const {
  std::vector<std::uint64_t> out;
  for (auto m : exceptional) {
    if (m <= limit) out.push_back(m);
  }
  for (const auto& p : progressions) {
    for (std::uint64_t m = p.start; m <= limit; m += p.step) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExponentClassSet power_residue_union(std::uint64_t q, const std::vector<std::uint64_t>& residues, std::uint64_t n) {
  if (n < 1) throw DomainError("power_residue_class: modulus must be >= 1");
  std::set<std::uint64_t> wanted;
  for (auto k : residues) wanted.insert(k % n);
  const ResidueOrbit orbit = residue_orbit(q, n);
  ExponentClassSet out;
  out.pre_period = orbit.cycle_start - 1;
  std::uint64_t r = q % n;
  for (std::uint64_t m = 1; m < orbit.cycle_start + orbit.period; ++m) {
    if (wanted.count(r)) {
      if (m < orbit.cycle_start) {
        out.exceptional.push_back(m);
      } else {
        out.progressions.push_back(Progression{m, orbit.period});
      }
    }
    r = mul_mod(r, q % n, n);
  }
  return out;
}

ExponentClassSet power_residue_class(std::uint64_t q, std::uint64_t k, std::uint64_t n) {
  if (q < 2) throw DomainError("power_residue_class: base must be >= 2");
  if (n < 2) throw DomainError("power_residue_class: modulus must be >= 2");
  if (k >= n) throw DomainError("power_residue_class: residue must satisfy 0 <= k < n");
  return power_residue_union(q, {k}, n);
}

namespace {

// Smallest m with m! = 0 (mod n); every larger factorial is also divisible by n.
std::uint64_t factorial_vanishing_index(std::uint64_t n) {
  if (n == 1) return 0;
  std::uint64_t r = 1 % n;
  for (std::uint64_t m = 1;; ++m) {
    r = mul_mod(r, m % n, n);
    if (r == 0) return m;
  }
}

// Set index of m! inside {0, 1, 2, 6, ...} for m >= 1.
std::size_t fac_index(std::uint64_t m) { return m <= 1 ? 1 : static_cast<std::size_t>(m); }

}  // namespace

FacClassResult fac_residue_class(std::uint64_t k, std::uint64_t n) {
  if (n < 2) throw DomainError("fac_residue_class: modulus must be >= 2");
  if (k >= n) throw DomainError("fac_residue_class: residue must satisfy 0 <= k < n");
  const std::uint64_t vanish = factorial_vanishing_index(n);
  // Elements at set index >= tail are all = 0 (mod n).
  const std::size_t tail = std::max<std::size_t>(fac_index(vanish), 2);
  auto element = [](std::size_t i) { return i == 0 ? Integer(0) : factorial(i); };
  FacClassResult out;
  std::size_t start = 0;
  std::uint64_t r = 1 % n;  // i! mod n
  for (std::size_t i = 0; i < tail; ++i) {
    if (i > 0) r = mul_mod(r, i % n, n);
    const std::uint64_t residue = i == 0 ? 0 : r;
    if (residue != 0) start = i + 1;
    if ((residue == k) != (k == 0)) out.elements.push_back(element(i));
  }
  if (k == 0) {
    out.classification = FacClassResult::Classification::Cofinite;
    out.threshold_index = start;
    out.threshold_element = element(start);
  }
  return out;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::optional<ResidueStructure> residue_structure(const SparseSet& set, std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("residue_structure: modulus must be >= 1");
  return std::visit(
      overloaded{
          [&](const Powers& p) -> std::optional<ResidueStructure> {
            ResidueStructure rs;
            const ResidueOrbit orbit = residue_orbit(p.base, modulus);
            for (std::uint64_t m = 1; m < orbit.cycle_start; ++m) {
              rs.transient.push_back(pow(from_u64(p.base), static_cast<unsigned long>(m)));
            }
            std::set<std::uint64_t> rec;
            std::uint64_t r = pow_mod(p.base, orbit.cycle_start, modulus);
            for (std::uint64_t i = 0; i < orbit.period; ++i) {
              rec.insert(r);
              r = mul_mod(r, p.base % modulus, modulus);
            }
            rs.recurrent.assign(rec.begin(), rec.end());
            return rs;
          },
          [&](const Factorials&) -> std::optional<ResidueStructure> {
            ResidueStructure rs;
            const std::size_t tail = std::max<std::size_t>(fac_index(factorial_vanishing_index(modulus)), 2);
            rs.transient.push_back(0);
            for (std::size_t i = 1; i < tail; ++i) rs.transient.push_back(factorial(i));
            rs.recurrent = {0};
            return rs;
          },
          [&](const ExplicitSet& e) -> std::optional<ResidueStructure> {
            return ResidueStructure{e.elements, {}};
          },
          [&](const IteratedPowers&) -> std::optional<ResidueStructure> { return std::nullopt; },
      },
      set.kind());
}

std::optional<DecisiveSample> decisive_sample(const SparseSet& set, std::uint64_t modulus, const Integer& cutoff) {
  if (modulus == 0) throw DomainError("decisive_sample: modulus must be >= 1");
  Integer bound = abs(cutoff);
  return std::visit(
      overloaded{
          [&](const Powers& p) -> std::optional<DecisiveSample> {
            const ResidueOrbit orbit = residue_orbit(p.base, modulus);
            const Integer q = from_u64(p.base);
            // first exponent whose power exceeds the cutoff
            std::uint64_t m_cut = 1;
            Integer v = q;
            while (v <= bound) {
              v *= q;
              ++m_cut;
            }
            const std::uint64_t from = std::max(orbit.cycle_start, m_cut);
            DecisiveSample out;
            out.periodic_from = static_cast<std::size_t>(from - 1);
            Integer e = q;
            for (std::uint64_t m = 1; m < from + orbit.period; ++m) {
              out.elements.push_back(e);
              e *= q;
            }
            return out;
          },
          [&](const Factorials&) -> std::optional<DecisiveSample> {
            const std::size_t tail = std::max<std::size_t>(fac_index(factorial_vanishing_index(modulus)), 2);
            std::size_t cut = 0;
            while (set.nth_element(cut) <= bound) ++cut;
            const std::size_t last = std::max(tail, cut);
            DecisiveSample out;
            out.periodic_from = last;
            for (std::size_t i = 0; i <= last; ++i) out.elements.push_back(set.nth_element(i));
            return out;
          },
          [&](const ExplicitSet& e) -> std::optional<DecisiveSample> {
            return DecisiveSample{e.elements, e.elements.size()};
          },
          [&](const IteratedPowers&) -> std::optional<DecisiveSample> { return std::nullopt; },
      },
      set.kind());
}

}  // namespace zsparse
