// Homogeneous linear equations k1*x1 + ... + kn*xn = 0 restricted to powers of q
// or to factorial values, with exact finite descriptions of the solution sets.
#pragma once

#include "zsparse/integer.hpp"
#include "zsparse/sparse_set.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zsparse {

struct EquationSpec {
  std::vector<Integer> coefficients;  // all nonzero
  std::vector<std::string> names;
  Integer rhs = 0;  // nonzero only for the brute-force oracle

  /// "1,1,-1" -> x1 + x2 - x3 = 0. Throws DomainError on empty or zero coefficients.
  static EquationSpec parse(const std::string& csv);
  static EquationSpec from_coefficients(std::vector<Integer> coefficients);

  std::size_t arity() const { return coefficients.size(); }
  bool homogeneous() const { return rhs == 0; }
  bool satisfied_by(const std::vector<Integer>& xs) const;
  std::string to_string() const;
};

using Partition = std::vector<std::vector<std::size_t>>;

/// All set partitions of {0..n-1}, blocks sorted by their least element.
std::vector<Partition> set_partitions(std::size_t n);

// ---- powers of q ----

/// Exponent tuples {(e1 + t_B, ..., en + t_B) : t_B >= 0}, where each block B of
/// `blocks` shifts by its own t_B and has minimum base exponent 1. With a single
/// block this is the orbit of a base tuple under multiplication by q^t.
struct ScaleOrbitFamily {
  std::vector<std::uint64_t> base_exponents;
  Partition blocks;

  bool single_block() const { return blocks.size() == 1; }
  /// Every member whose exponents are all <= max_exponent.
  std::vector<std::vector<std::uint64_t>> members(std::uint64_t max_exponent) const;
  bool contains(const std::vector<std::uint64_t>& exponents) const;
  friend bool operator==(const ScaleOrbitFamily&, const ScaleOrbitFamily&) = default;
};

/// Largest exponent spread a solution can have without splitting into
/// independently vanishing sub-sums.
std::uint64_t exponent_spread_bound(const EquationSpec& eq, std::uint64_t q);

/// The exact solution set in (q^N)^n as a union of families, normalised so no
/// family is contained in another. Empty when there are no solutions.
std::vector<ScaleOrbitFamily> solve_powers(const EquationSpec& eq, std::uint64_t q);

// ---- factorials ----

struct FactorialBlock {
  std::vector<std::size_t> indices;
  /// nullopt: a free parameter ranging over Fac.
  std::optional<Integer> value;
};

/// Solutions whose coordinates are equal exactly within each block; the block
/// values are pairwise distinct elements of Fac.
struct FactorialFamily {
  std::vector<FactorialBlock> blocks;
  std::size_t free_parameters() const;
};

struct FactorialSolutionDescription {
  std::vector<FactorialFamily> families;  // each with at least one free parameter
  std::vector<std::vector<Integer>> sporadic;

  /// All described solutions whose values are among the first max_index+1 elements of Fac.
  std::vector<std::vector<Integer>> materialize(std::size_t max_index) const;
};

FactorialSolutionDescription solve_factorials(const EquationSpec& eq);

enum class ProjectionKind { Infinite, Finite };

/// Per block: infinite exactly when the block's coefficients sum to zero.
std::vector<ProjectionKind> block_sum_classify(const EquationSpec& eq, const Partition& partition);

// ---- oracle ----

struct BruteForceOptions {
  std::uint64_t max_tuples = 100'000'000;
  unsigned jobs = 1;
};

/// Exhaustive search over the first `element_bound` elements of `set` in
/// lexicographic index order. Handles inhomogeneous equations.
std::vector<std::vector<Integer>> brute_force_solutions(const EquationSpec& eq, const SparseSet& set,
                                                        std::size_t element_bound,
                                                        const BruteForceOptions& options = {});

}  // namespace zsparse
