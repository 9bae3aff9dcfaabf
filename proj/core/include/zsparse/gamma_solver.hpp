// Consistency of schemes {phi(b, y, a) : a in P} over Z and the coset-covering
// question behind them.
#pragma once

#include "zsparse/formula.hpp"
#include "zsparse/integer.hpp"
#include "zsparse/sparse_set.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zsparse {

/// {offset + slope * a : a in P}.
struct AffineFamily {
  Integer offset;
  Integer slope;  // nonzero

  /// "1+2a", "-3a", "5-1a", "a" (the set element is always written a).
  static AffineFamily parse(const std::string& text);
  std::string to_string() const;
  bool contains(const Integer& z, const SparseSet& p) const;
};

/// The coset modulus*Z + residue.
struct Coset {
  std::uint64_t modulus = 1;
  Integer residue;
};

struct CoverReport {
  Integer witness;
  /// Why the witness avoids each family, in family order.
  std::vector<std::string> certificates;
  std::uint64_t inspected = 0;
  /// Beyond this absolute value every family is too thin to fill a window of
  /// families+1 consecutive coset elements.
  Integer threshold;
  /// Upper bound on `inspected` implied by `threshold`.
  std::uint64_t scan_bound = 0;
};

struct ScanOptions {
  std::uint64_t max_candidates = 1'000'000;
};

/// The first coset element (by absolute value, nonnegative first) outside every
/// family. Throws DomainError when the scan cap is exceeded.
CoverReport covers_coset(const std::vector<AffineFamily>& families, const Coset& coset, const SparseSet& p,
                         const ScanOptions& options = {});

struct GammaInstance {
  GroupFormula clause;  // quantifier-free in the parameters, y and a
  Assignment params;
  SparseSet set = SparseSet::powers(2);
  std::string y = "y";
  std::string alpha = "a";
};

struct VerificationTrace {
  bool passed = false;
  /// Checked directly on the first elements of the set.
  std::size_t direct_instances = 0;
  std::vector<std::string> certificates;
};

struct GammaReport {
  enum class Status { Witness, Unsat };
  Status status = Status::Unsat;
  std::optional<Integer> witness;
  std::string reason;
  /// Unsat: instances of a with no common solution y.
  std::vector<Integer> inconsistent_instances;
  /// Unsat: the finite subsystem was re-checked by integer quantifier elimination.
  bool subsystem_verified = false;
  std::uint64_t candidates_checked = 0;
  VerificationTrace verification;
};

/// Decides whether some integer c satisfies phi(b, c, a) for every a in P and
/// returns the first such c in scan order. Iterated towers are rejected.
GammaReport gamma_sat(const GammaInstance& g, const ScanOptions& options = {});

/// Independent check that c satisfies every instance: direct evaluation on the
/// first `direct` elements, then a residue certificate for the rest.
VerificationTrace verify_gamma_witness(const GammaInstance& g, const Integer& c, std::size_t direct = 50);

/// Builds an instance from clause text and "b=3,c=-1" parameter text.
GammaInstance make_gamma_instance(const std::string& clause, const std::string& params, const SparseSet& set);

struct SentenceResult {
  EvalResult result;
  std::string method;  // "gamma" or "evaluate"
  std::optional<GammaReport> gamma;
};

/// Sentences of the form EXISTS y. ALL a IN P. phi (or the dual
/// ALL y. EXISTS a IN P. phi) go to gamma_sat; all others to evaluate.
SentenceResult eval_bounded_sentence(const GroupFormula& sentence, const Assignment& assignment,
                                     const SparseSet& p, std::size_t depth);

}  // namespace zsparse
