// Residue analysis of sparse sets: which powers q^m (and which factorials) fall
// into a congruence class k + nZ.
#pragma once

#include "zsparse/integer.hpp"
#include "zsparse/sparse_set.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace zsparse {

std::uint64_t euler_phi(std::uint64_t n);

/// Least d >= 1 with q^d = 1 (mod n). Requires gcd(q, n) = 1 and n >= 2.
std::uint64_t mult_order(std::uint64_t q, std::uint64_t n);

/// The sequence m -> q^m mod n (m >= 1) is eventually periodic: from exponent
/// `cycle_start` on it repeats with `period`.
struct ResidueOrbit {
  std::uint64_t cycle_start = 1;
  std::uint64_t period = 1;
};

ResidueOrbit residue_orbit(std::uint64_t q, std::uint64_t n);

struct Progression {
  std::uint64_t start = 1;
  std::uint64_t step = 1;

  bool contains(std::uint64_t m) const { return m >= start && (m - start) % step == 0; }
  friend bool operator==(const Progression&, const Progression&) = default;
};

/// A set of exponents m >= 1: finitely many exceptions plus arithmetic progressions.
struct ExponentClassSet {
  std::vector<std::uint64_t> exceptional;  // sorted
  std::vector<Progression> progressions;   // sorted by start, common step
  /// Exponents <= pre_period are described by `exceptional` alone.
  std::uint64_t pre_period = 0;

  bool empty() const { return exceptional.empty() && progressions.empty(); }
  bool contains(std::uint64_t m) const;
  /// All members m with 1 <= m <= limit, ascending.
  std::vector<std::uint64_t> materialize(std::uint64_t limit) const;

  friend bool operator==(const ExponentClassSet&, const ExponentClassSet&) = default;
};

/// {m >= 1 : q^m = k (mod n)} for 0 <= k < n, n >= 2.
ExponentClassSet power_residue_class(std::uint64_t q, std::uint64_t k, std::uint64_t n);

/// {m >= 1 : q^m mod n lies in `residues`}.
ExponentClassSet power_residue_union(std::uint64_t q, const std::vector<std::uint64_t>& residues, std::uint64_t n);

struct FacClassResult {
  enum class Classification { Finite, Cofinite };
  Classification classification = Classification::Finite;
  /// Finite case: the members. Cofinite case: the excluded elements.
  std::vector<Integer> elements;
  /// Cofinite case: set index from which every element lies in the class.
  std::size_t threshold_index = 0;
  Integer threshold_element;
};

/// Classifies {0, 1, 2, 6, 24, ...} intersected with k + nZ.
FacClassResult fac_residue_class(std::uint64_t k, std::uint64_t n);

/// How the residues mod `modulus` of a set's elements behave: a finite list of
/// elements whose residues occur only finitely often, and the residues that
/// recur forever.
struct ResidueStructure {
  std::vector<Integer> transient;
  std::vector<std::uint64_t> recurrent;
};

/// nullopt for kinds without an exact residue model (iterated towers).
std::optional<ResidueStructure> residue_structure(const SparseSet& set, std::uint64_t modulus);

/// A finite list of elements that decides any single-variable linear predicate
/// whose moduli divide `modulus` and whose equality points are all <= `cutoff`:
/// every other element exceeds `cutoff` and shares its residue with a listed
/// element that also exceeds `cutoff`. nullopt for iterated towers.
struct DecisiveSample {
  std::vector<Integer> elements;
  /// Index into `elements` from which the residues repeat periodically.
  std::size_t periodic_from = 0;
};

std::optional<DecisiveSample> decisive_sample(const SparseSet& set, std::uint64_t modulus, const Integer& cutoff);

}  // namespace zsparse
