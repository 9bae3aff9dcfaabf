#include "zsparse/errors.hpp"
#include "zsparse/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace zsparse {
namespace {

using Clause = std::vector<Atom>;
using Clauses = std::vector<Clause>;

// Appends `a` unless it is a true ground atom; returns false when the clause
// became unsatisfiable.
bool add_atom(Clause& clause, const Atom& a) {
  if (auto g = a.ground_value()) return *g;
  if (std::find(clause.begin(), clause.end(), a) == clause.end()) clause.push_back(a);
  return true;
}

Clauses product(const Clauses& a, const Clauses& b) {
  Clauses out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Clause c = x;
      bool ok = true;
      for (const auto& atom : y) {
        if (!add_atom(c, atom)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(std::move(c));
    }
  }
  return out;
}

Clauses single(const Atom& a) {
  Clause c;
  if (!add_atom(c, a)) return {};
  return {c};
}

Clauses dnf_of(const GroupFormula& f, bool negate) {
  switch (f.kind()) {
    case NodeKind::True:
      return negate ? Clauses{} : Clauses{Clause{}};
    case NodeKind::False:
      return negate ? Clauses{Clause{}} : Clauses{};
    case NodeKind::Atom: {
      const Atom& a = f.atom();
      if (!negate) return single(a);
      switch (a.kind) {
        case AtomKind::Eq0:
          return single(Atom::neq0(a.term));
        case AtomKind::Neq0:
          return single(Atom::eq0(a.term));
        case AtomKind::CongruenceZero: {
          // t is not 0 mod n  iff  t - j = 0 mod n for some j in 1..n-1
          Clauses out;
          for (std::uint64_t j = 1; j < a.modulus; ++j) {
            auto c = single(Atom::congruence(a.term - LinearTerm(from_u64(j)), a.modulus));
            out.insert(out.end(), c.begin(), c.end());
          }
          return out;
        }
      }
      return {};
    }
    case NodeKind::Not:
      return dnf_of(f.child(), !negate);
    case NodeKind::And:
    case NodeKind::Or: {
      bool conj = (f.kind() == NodeKind::And) != negate;
      if (conj) {
        Clauses acc{Clause{}};
        for (const auto& c : f.children()) {
          acc = product(acc, dnf_of(c, negate));
          if (acc.empty()) break;
        }
        return acc;
      }
      Clauses acc;
      for (const auto& c : f.children()) {
        auto part = dnf_of(c, negate);
        acc.insert(acc.end(), part.begin(), part.end());
      }
      return acc;
    }
    case NodeKind::Quantified:
      throw DomainError("to_dnf: formula must be quantifier-free");
  }
  return {};
}

DNFClause to_clause(const Clause& atoms) {
  DNFClause c;
  for (const auto& a : atoms) {
    switch (a.kind) {
      case AtomKind::Eq0:
        c.equalities.push_back(a);
        break;
      case AtomKind::Neq0:
        c.disequalities.push_back(a);
        break;
      case AtomKind::CongruenceZero:
        c.congruences.push_back(a);
        break;
    }
  }
  return c;
}

// ---- integer quantifier elimination ----

// Canonical clause: sorted, deduplicated, ground atoms folded. nullopt if false.
std::optional<Clause> normalise(const Clause& in) {
  std::set<Atom> seen;
  for (const auto& raw : in) {
    Atom a = raw.canonical();
    if (auto g = a.ground_value()) {
      if (!*g) return std::nullopt;
      continue;
    }
    seen.insert(a);
  }
  return Clause(seen.begin(), seen.end());
}

Clauses eliminate_exists(const std::string& y, const Clause& clause) {
  // Pick the equality with the smallest nonzero |coefficient| of y.
  const Atom* pivot = nullptr;
  for (const auto& a : clause) {
    if (a.kind != AtomKind::Eq0) continue;
    Integer c = a.term.coefficient(y);
    if (c == 0) continue;
    if (pivot == nullptr || abs(c) < abs(pivot->term.coefficient(y))) pivot = &a;
  }

  if (pivot != nullptr) {
    // a*y + s = 0: y = -s/a requires s = 0 (mod |a|); every other atom
    // b*y + r is multiplied through by a and rewritten with a*y = -s.
    const Integer a = pivot->term.coefficient(y);
    const LinearTerm s = pivot->term.without(y);
    Clause out;
    if (abs(a) > 1) out.push_back(Atom::congruence(s, to_u64(abs(a))));
    for (const auto& atom : clause) {
      if (&atom == pivot) continue;
      Integer b = atom.term.coefficient(y);
      if (b == 0) {
        out.push_back(atom);
        continue;
      }
      LinearTerm r = atom.term.without(y);
      LinearTerm rewritten = r * a - s * b;
      if (atom.kind == AtomKind::CongruenceZero) {
        out.push_back(Atom::congruence(rewritten, to_u64(from_u64(atom.modulus) * abs(a))));
      } else {
        out.push_back(Atom{atom.kind, rewritten, 0});
      }
    }
    auto n = normalise(out);
    return n ? Clauses{*n} : Clauses{};
  }

  // No equality on y: disequalities exclude finitely many values, so only the
  // congruence system on y matters. Enumerate y mod lcm.
  Clause rest;
  std::vector<Atom> congs;
  for (const auto& atom : clause) {
    if (atom.term.coefficient(y) == 0) {
      rest.push_back(atom);
    } else if (atom.kind == AtomKind::CongruenceZero) {
      congs.push_back(atom);
    }
  }
  if (congs.empty()) return {rest};
  std::uint64_t l = 1;
  for (const auto& c : congs) l = lcm_u64(l, c.modulus);
  std::set<Clause> produced;
  std::set<std::vector<std::uint64_t>> seen_shapes;
  for (std::uint64_t r = 0; r < l; ++r) {
    std::vector<std::uint64_t> shape;
    for (const auto& c : congs) shape.push_back(floor_mod(c.term.coefficient(y) * from_u64(r), c.modulus));
    if (!seen_shapes.insert(shape).second) continue;
    Clause out = rest;
    for (const auto& c : congs) {
      out.push_back(c.substitute(y, LinearTerm(from_u64(r))));
    }
    if (auto n = normalise(out)) produced.insert(*n);
  }
  return Clauses(produced.begin(), produced.end());
}

Clauses clauses_of(const GroupFormula& f) {
  Clauses out;
  for (const auto& c : to_dnf(f)) {
    if (auto n = normalise(c.atoms())) out.push_back(*n);
  }
  return out;
}

GroupFormula from_clauses(const Clauses& cs) {
  std::set<Clause> uniq;
  for (const auto& c : cs) {
    if (c.empty()) return GroupFormula::truth();
    uniq.insert(c);
  }
  std::vector<GroupFormula> disj;
  for (const auto& c : uniq) {
    std::vector<GroupFormula> conj;
    for (const auto& a : c) conj.push_back(GroupFormula::atom(a));
    disj.push_back(GroupFormula::conjunction(std::move(conj)));
  }
  return GroupFormula::disjunction(std::move(disj));
}

GroupFormula qe(const GroupFormula& f) {
  switch (f.kind()) {
    case NodeKind::True:
    case NodeKind::False:
    case NodeKind::Atom:
      return f;
    case NodeKind::Not:
      return GroupFormula::negation(qe(f.child()));
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<GroupFormula> parts;
      for (const auto& c : f.children()) parts.push_back(qe(c));
      return f.kind() == NodeKind::And ? GroupFormula::conjunction(std::move(parts))
                                       : GroupFormula::disjunction(std::move(parts));
    }
    case NodeKind::Quantified: {
      if (f.bounded()) throw DomainError("integer quantifier elimination cannot remove P-bounded quantifiers");
      GroupFormula body = qe(f.body());
      bool forall = f.quantifier() == Quantifier::Forall;
      if (forall) body = GroupFormula::negation(body);
      Clauses out;
      for (const auto& c : clauses_of(body)) {
        auto part = eliminate_exists(f.variable(), c);
        out.insert(out.end(), part.begin(), part.end());
      }
      GroupFormula res = from_clauses(out);
      return forall ? from_clauses(clauses_of(GroupFormula::negation(res))) : res;
    }
  }
  return f;
}

}  // namespace

DNF to_dnf(const GroupFormula& f) {
  DNF out;
  for (const auto& c : dnf_of(f, false)) out.push_back(to_clause(c));
  return out;
}

GroupFormula from_dnf(const DNF& clauses) {
  std::vector<GroupFormula> parts;
  for (const auto& c : clauses) parts.push_back(c.to_formula());
  return GroupFormula::disjunction(std::move(parts));
}

GroupFormula substitute(const GroupFormula& f, const std::string& name, const Integer& value) {
  switch (f.kind()) {
    case NodeKind::True:
    case NodeKind::False:
      return f;
    case NodeKind::Atom:
      return GroupFormula::atom(f.atom().substitute(name, LinearTerm(value)), f.span());
    case NodeKind::Not:
      return GroupFormula::negation(substitute(f.child(), name, value), f.span());
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<GroupFormula> parts;
      for (const auto& c : f.children()) parts.push_back(substitute(c, name, value));
      return f.kind() == NodeKind::And ? GroupFormula::conjunction(std::move(parts), f.span())
                                       : GroupFormula::disjunction(std::move(parts), f.span());
    }
    case NodeKind::Quantified:
      if (f.variable() == name) return f;
      return GroupFormula::quantified(f.quantifier(), f.variable(), f.bounded(), substitute(f.body(), name, value),
                                      f.span());
  }
  return f;
}

bool has_bounded_quantifier(const GroupFormula& f) {
  if (f.kind() == NodeKind::Quantified && f.bounded()) return true;
  return std::any_of(f.children().begin(), f.children().end(), [](const auto& c) { return has_bounded_quantifier(c); });
}

GroupFormula eliminate_integer_quantifiers(const GroupFormula& f) { return qe(f); }

}  // namespace zsparse
