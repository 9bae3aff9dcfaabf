// Linear formulas over (Z, +, 0) with congruence atoms, plus quantifiers
// relativised to a sparse predicate P.
#pragma once

#include "zsparse/integer.hpp"
#include "zsparse/logic.hpp"
#include "zsparse/sparse_set.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace zsparse {

using Assignment = std::map<std::string, Integer>;

/// sum of coefficient * variable, plus a constant. Zero coefficients are never stored.
class LinearTerm {
 public:
  LinearTerm() = default;
  explicit LinearTerm(Integer constant) : constant_(std::move(constant)) {}
  static LinearTerm variable(const std::string& name, const Integer& coefficient = 1);

  const std::map<std::string, Integer>& coefficients() const noexcept { return coeffs_; }
  const Integer& constant() const noexcept { return constant_; }
  Integer coefficient(const std::string& name) const;
  bool is_constant() const noexcept { return coeffs_.empty(); }
  std::set<std::string> variables() const;

  LinearTerm operator+(const LinearTerm& o) const;
  LinearTerm operator-(const LinearTerm& o) const;
  LinearTerm operator-() const;
  LinearTerm operator*(const Integer& k) const;

  /// Replaces `name` by `value` everywhere.
  LinearTerm substitute(const std::string& name, const LinearTerm& value) const;
  /// The term with `name`'s summand removed.
  LinearTerm without(const std::string& name) const;

  /// Throws DomainError naming the first unassigned variable.
  Integer evaluate(const Assignment& assignment) const;

  /// "2*x - y + 3", variables in sorted order; "0" for the zero term.
  std::string to_string() const;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;

 private:
  void add_coefficient(const std::string& name, const Integer& k);

  std::map<std::string, Integer> coeffs_;
  Integer constant_ = 0;
};

enum class AtomKind { Eq0, Neq0, CongruenceZero };

/// t = 0, t != 0, or t = 0 (mod n) with n >= 2.
struct Atom {
  AtomKind kind = AtomKind::Eq0;
  LinearTerm term;
  std::uint64_t modulus = 0;

  static Atom eq0(LinearTerm t) { return Atom{AtomKind::Eq0, std::move(t), 0}; }
  static Atom neq0(LinearTerm t) { return Atom{AtomKind::Neq0, std::move(t), 0}; }
  static Atom congruence(LinearTerm t, std::uint64_t n);

  std::set<std::string> variables() const { return term.variables(); }
  bool holds(const Assignment& assignment) const;
  /// Truth value when the term has no variables.
  std::optional<bool> ground_value() const;
  Atom substitute(const std::string& name, const LinearTerm& value) const;
  /// Congruences with coefficients and constant reduced into [0, n).
  Atom canonical() const;
  std::string to_string() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend bool operator<(const Atom& a, const Atom& b) { return a.to_string() < b.to_string(); }
};

using GroupFormula = Formula<Atom>;

/// One disjunct in normal form: equalities, disequalities, congruences.
struct DNFClause {
  std::vector<Atom> equalities;
  std::vector<Atom> disequalities;
  std::vector<Atom> congruences;

  bool holds(const Assignment& assignment) const;
  std::vector<Atom> atoms() const;
  GroupFormula to_formula() const;
  friend bool operator==(const DNFClause&, const DNFClause&) = default;
};

using DNF = std::vector<DNFClause>;

// ---- text ----

/// Grammar: terms over [a-zA-Z_][a-zA-Z0-9_]* and integers with + and -,
/// relations = != "=mod n" and the UTF-8 spelling with the congruence sign,
/// connectives AND OR NOT, TRUE/FALSE, "ALL x." "EXISTS x." and the P-bounded
/// forms "ALL x IN P." "EXISTS x IN P.". Throws ParseError.
GroupFormula parse_formula(const std::string& text);

/// Deterministic printer for the same grammar.
std::string print(const GroupFormula& f);

// ---- normal forms ----

/// Quantifier-free input only (throws DomainError otherwise). Negated
/// congruences t != 0 (mod n) expand into t - j = 0 (mod n), j = 1..n-1.
DNF to_dnf(const GroupFormula& f);
GroupFormula from_dnf(const DNF& clauses);

/// Replaces the free occurrences of `name` by `value`.
GroupFormula substitute(const GroupFormula& f, const std::string& name, const Integer& value);

bool has_bounded_quantifier(const GroupFormula& f);

/// Eliminates unrestricted integer quantifiers. The equality/congruence
/// fragment of (Z, +, 0) admits elimination in this language; P-bounded
/// quantifiers are rejected with DomainError.
GroupFormula eliminate_integer_quantifiers(const GroupFormula& f);

// ---- evaluation ----

struct EvalOptions {
  /// P-bounded quantifiers inspect at most this many elements when no exact decision applies.
  std::size_t p_depth = 10;
  /// Unrestricted quantifiers over a body that still mentions P range over [-r, r].
  std::optional<Integer> integer_range;
};

struct EvalResult {
  Truth value = Truth::Unknown;
  std::vector<std::string> notes;
};

/// Three-valued evaluation. Atoms are exact; integer quantifiers are eliminated
/// exactly when their bodies do not mention P; a P-quantifier whose body
/// reduces to a quantifier-free predicate of its own variable is decided
/// exactly through residue periodicity; everything else is checked over the
/// first p_depth elements and reported unknown when it could still flip.
EvalResult evaluate(const GroupFormula& f, const Assignment& assignment, const SparseSet& p,
                    const EvalOptions& options = {});

struct SetDecision {
  bool holds = false;
  /// First element (in set order) where the predicate fails.
  std::optional<Integer> counterexample;
  std::size_t inspected = 0;
  Integer largest_inspected;
};

/// Exact decision of "for every a in P, body(a)" for quantifier-free `body`
/// whose only free variable is `var`. nullopt when the set has no residue model.
std::optional<SetDecision> decide_forall_in_set(const GroupFormula& body, const std::string& var,
                                                const SparseSet& p);

}  // namespace zsparse
