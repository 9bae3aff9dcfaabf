// Sparse subsets of the naturals: powers, iterated power towers, factorials,
// and finite user-supplied lists.
#pragma once

#include "zsparse/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace zsparse {

/// {q^n : n >= 1}
struct Powers {
  std::uint64_t base = 2;
};

/// {k1^(k2^(...^(km^n))) : n >= 1}, evaluated right to left.
struct IteratedPowers {
  std::vector<std::uint64_t> bases;
};

/// {n! : n >= 0} together with 0, as a set: {0, 1, 2, 6, 24, ...}.
struct Factorials {};

/// A finite, strictly increasing list of naturals.
struct ExplicitSet {
  std::vector<Integer> elements;
};

inline constexpr std::size_t kDefaultDigitCap = 1'000'000;

class SparseSet {
 public:
  using Kind = std::variant<Powers, IteratedPowers, Factorials, ExplicitSet>;

  static SparseSet powers(std::uint64_t q);
  static SparseSet iterated_powers(std::vector<std::uint64_t> bases);
  static SparseSet factorials();
  static SparseSet explicit_set(std::vector<Integer> elements);

  /// Parses "powers:2", "iter:2,3", "factorials", "explicit:1,4,9,16".
  static SparseSet parse(const std::string& text);

  const Kind& kind() const noexcept { return kind_; }
  std::string describe() const;

  /// Elements of iterated towers beyond this many decimal digits are refused.
  std::size_t digit_cap() const noexcept { return digit_cap_; }
  SparseSet with_digit_cap(std::size_t cap) const;

  /// i-th smallest element, 0-indexed.
  Integer nth_element(std::size_t i) const;
  bool contains(const Integer& z) const;
  /// Cardinality, nullopt for the infinite built-in kinds.
  std::optional<std::size_t> size() const;
  bool is_finite() const { return size().has_value(); }
  /// Built-in kinds are sparse by construction; explicit lists are not certified.
  bool provably_sparse() const;

  /// First `count` elements (fewer for short explicit sets).
  std::vector<Integer> prefix(std::size_t count) const;

  friend bool operator==(const SparseSet& a, const SparseSet& b);

 private:
  explicit SparseSet(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
  std::size_t digit_cap_ = kDefaultDigitCap;
};

/// Consecutive gaps of a prefix and the first index from which they increase strictly.
struct GapProfile {
  std::vector<Integer> gaps;
  /// Smallest k with gaps[k] < gaps[k+1] < ... up to the end of the prefix;
  /// nullopt ("never") when no such k leaves at least two gaps.
  std::optional<std::size_t> threshold_index;
  bool provably_sparse = false;
};

GapProfile sparseness_check(const SparseSet& set, std::size_t prefix_length);

}  // namespace zsparse
