// The induced structure on exponents: (N>=1, s, s^-1, 1, {Q[k,n]}), where the
// exponent m stands for the power q^m.
#pragma once

#include "zsparse/equation_solver.hpp"
#include "zsparse/integer.hpp"
#include "zsparse/logic.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace zsparse {

/// s^shift(var), or s^shift(1) when var is empty. Negative shifts apply the
/// predecessor, which is floored at 1.
struct NTerm {
  std::optional<std::string> var;
  std::int64_t shift = 0;

  static NTerm variable(std::string name, std::int64_t shift = 0) { return NTerm{std::move(name), shift}; }
  /// The numeral d >= 1, written s^(d-1)(1).
  static NTerm numeral(std::uint64_t d);

  bool is_constant() const { return !var.has_value(); }
  std::string to_string() const;
  friend bool operator==(const NTerm&, const NTerm&) = default;
};

enum class NAtomKind { TermEq, TermNeq, Q, NotQ };

struct NAtom {
  NAtomKind kind = NAtomKind::TermEq;
  NTerm lhs;
  NTerm rhs;  // unused for Q / NotQ
  std::uint64_t k = 0;
  std::uint64_t n = 0;

  static NAtom eq(NTerm a, NTerm b);
  static NAtom neq(NTerm a, NTerm b);
  /// Throws DomainError unless n >= 2; k is reduced mod n.
  static NAtom q(std::uint64_t k, std::uint64_t n, NTerm t);
  static NAtom not_q(std::uint64_t k, std::uint64_t n, NTerm t);

  std::set<std::string> variables() const;
  std::string to_string() const;
  friend bool operator==(const NAtom&, const NAtom&) = default;
};

using NFormula = Formula<NAtom>;
using NAssignment = std::map<std::string, std::uint64_t>;

/// Grammar: atoms Q[k,n](t), t = t, t != t; terms x, 1, s(t), s^m(t) with m
/// possibly negative; connectives NOT/AND/OR, quantifiers EXISTS x. / ALL x.
NFormula parse_nformula(const std::string& text);
std::string print(const NFormula& f);

std::uint64_t term_value(const NTerm& t, const NAssignment& asg);
bool atom_holds(const NAtom& a, const NAssignment& asg);

/// Exact truth of a quantifier-free formula; throws DomainError on unassigned variables.
bool n_holds(const NFormula& f, const NAssignment& asg);

/// Truth with quantifiers at nesting depth d ranging over [1, d*bound + p],
/// p the lcm of the Q moduli in f. Exact for quantifier-free formulas.
bool n_holds_bounded(const NFormula& f, const NAssignment& asg, std::uint64_t bound);

/// Exact for quantifier-free f. Otherwise compares the bounded truth at bound
/// and 2*bound and reports Unknown when they differ. The bound is raised to
/// exceed every assigned value plus the formula's total shift.
Truth n_evaluate(const NFormula& f, const NAssignment& asg, std::uint64_t domain_bound);

/// Equivalent quantifier-free formula over the same free variables. Output
/// terms use nonnegative shifts only.
NFormula qe(const NFormula& f);

/// The equation restricted to powers of q, in exponent variables named after
/// eq.names. False when solve_powers finds no family.
NFormula translate_equation(const EquationSpec& eq, std::uint64_t q);

/// The exponents m >= 1 with c*q^m + d = 0 mod l, as a formula in `var`.
NFormula translate_congruence(const Integer& c, const Integer& d, std::uint64_t l, std::uint64_t q,
                              const std::string& var = "x");

/// Number of maximal consistent choices of one residue class per modulus.
std::uint64_t count_types(const std::vector<std::uint64_t>& moduli);

}  // namespace zsparse
