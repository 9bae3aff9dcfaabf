// Quantifier elimination for the successor structure. Formulas are first
// rewritten into exact literals over x + c (no floored predecessor), then
// quantifiers are removed innermost first on disjunctive normal forms.
#include "zsparse/errors.hpp"
#include "zsparse/induced_theory.hpp"

#include <algorithm>
#include <tuple>

namespace zsparse {
namespace {

// Eq/Neq: x = y + c, or x = c when y is empty (then c >= 1).
// Cong/NCong: x = c (mod n), 0 <= c < n.
struct Lit {
  enum Kind { Eq, Neq, Cong, NCong } kind = Eq;
  std::string x;
  std::optional<std::string> y;
  std::int64_t c = 0;
  std::uint64_t n = 0;

  std::set<std::string> variables() const {
    std::set<std::string> v{x};
    if (y) v.insert(*y);
    return v;
  }
  bool mentions(const std::string& v) const { return x == v || (y && *y == v); }
  Lit negated() const {
    Lit l = *this;
    l.kind = kind == Eq ? Neq : kind == Neq ? Eq : kind == Cong ? NCong : Cong;
    return l;
  }
  auto key() const { return std::tie(kind, x, y, c, n); }
  friend bool operator==(const Lit& a, const Lit& b) { return a.key() == b.key(); }
  friend bool operator<(const Lit& a, const Lit& b) { return a.key() < b.key(); }
};

using IForm = Formula<Lit>;
using Clause = std::vector<Lit>;  // sorted, unique
using Dnf = std::vector<Clause>;

constexpr std::size_t kClauseLimit = 200'000;

// value = var + off, or the constant off when var is empty
struct Lin {
  std::optional<std::string> var;
  std::int64_t off = 0;
};

std::uint64_t mod_u(std::int64_t v, std::uint64_t n) {
  const std::int64_t m = static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(((v % m) + m) % m);
}

IForm lit_form(Lit l) { return IForm::atom(std::move(l)); }

IForm make_eq(const Lin& a, const Lin& b, bool equal) {
  auto ground = [&](bool v) { return IForm::constant(v == equal); };
  if (!a.var && !b.var) return ground(a.off == b.off);
  if (a.var && b.var && *a.var == *b.var) return ground(a.off == b.off);
  Lit l;
  l.kind = equal ? Lit::Eq : Lit::Neq;
  if (!a.var || !b.var) {
    const Lin& v = a.var ? a : b;
    const Lin& k = a.var ? b : a;
    const std::int64_t d = k.off - v.off;
    if (d < 1) return ground(false);
    l.x = *v.var;
    l.c = d;
    return lit_form(l);
  }
  // a.var + a.off = b.var + b.off, ordered by name
  const Lin& lo = *a.var < *b.var ? a : b;
  const Lin& hi = *a.var < *b.var ? b : a;
  l.x = *lo.var;
  l.y = *hi.var;
  l.c = hi.off - lo.off;
  return lit_form(l);
}

IForm make_cong(const Lin& a, std::uint64_t k, std::uint64_t n, bool positive) {
  if (!a.var) return IForm::constant((mod_u(a.off, n) == k % n) == positive);
  Lit l;
  l.kind = positive ? Lit::Cong : Lit::NCong;
  l.x = *a.var;
  l.n = n;
  l.c = static_cast<std::int64_t>(mod_u(static_cast<std::int64_t>(k % n) - a.off, n));
  return lit_form(l);
}

// Rebuild a literal after replacing variable v by the value `by`.
IForm substitute(const Lit& l, const std::string& v, const Lin& by) {
  auto lin_of = [&](const std::string& name, std::int64_t off) {
    if (name == v) return Lin{by.var, by.off + off};
    return Lin{name, off};
  };
  switch (l.kind) {
    case Lit::Eq:
    case Lit::Neq: {
      Lin lhs = lin_of(l.x, 0);
      Lin rhs = l.y ? lin_of(*l.y, l.c) : Lin{std::nullopt, l.c};
      return make_eq(lhs, rhs, l.kind == Lit::Eq);
    }
    default:
      return make_cong(lin_of(l.x, 0), static_cast<std::uint64_t>(l.c), l.n, l.kind == Lit::Cong);
  }
}

// ---- from the surface language ----

struct TermCase {
  std::vector<IForm> guard;
  Lin value;
};

std::vector<TermCase> term_cases(const NTerm& t) {
  if (!t.var) return {TermCase{{}, Lin{std::nullopt, std::max<std::int64_t>(1, 1 + t.shift)}}};
  if (t.shift >= 0) return {TermCase{{}, Lin{t.var, t.shift}}};
  // s^-m(x) is 1 for x <= m and x - m above
  const std::int64_t m = -t.shift;
  std::vector<TermCase> out;
  std::vector<IForm> above;
  for (std::int64_t j = 1; j <= m; ++j) {
    out.push_back(TermCase{{make_eq(Lin{t.var, 0}, Lin{std::nullopt, j}, true)}, Lin{std::nullopt, 1}});
    above.push_back(make_eq(Lin{t.var, 0}, Lin{std::nullopt, j}, false));
  }
  out.push_back(TermCase{std::move(above), Lin{t.var, t.shift}});
  return out;
}

IForm from_atom(const NAtom& a) {
  std::vector<IForm> cases;
  if (a.kind == NAtomKind::Q || a.kind == NAtomKind::NotQ) {
    for (auto& tc : term_cases(a.lhs)) {
      tc.guard.push_back(make_cong(tc.value, a.k, a.n, a.kind == NAtomKind::Q));
      cases.push_back(IForm::conjunction(std::move(tc.guard)));
    }
  } else {
    for (const auto& l : term_cases(a.lhs)) {
      for (const auto& r : term_cases(a.rhs)) {
        std::vector<IForm> parts = l.guard;
        parts.insert(parts.end(), r.guard.begin(), r.guard.end());
        parts.push_back(make_eq(l.value, r.value, a.kind == NAtomKind::TermEq));
        cases.push_back(IForm::conjunction(std::move(parts)));
      }
    }
  }
  return IForm::disjunction(std::move(cases));
}

IForm from_surface(const NFormula& f) {
  switch (f.kind()) {
    case NodeKind::True:
      return IForm::truth();
    case NodeKind::False:
      return IForm::falsity();
    case NodeKind::Atom:
      return from_atom(f.atom());
    case NodeKind::Not:
      return IForm::negation(from_surface(f.child()));
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<IForm> cs;
      for (const auto& c : f.children()) cs.push_back(from_surface(c));
      return f.kind() == NodeKind::And ? IForm::conjunction(std::move(cs)) : IForm::disjunction(std::move(cs));
    }
    case NodeKind::Quantified:
      return IForm::quantified(f.quantifier(), f.variable(), false, from_surface(f.body()));
  }
  return IForm::truth();
}

NFormula to_surface_lit(const Lit& l) {
  switch (l.kind) {
    case Lit::Eq:
    case Lit::Neq: {
      NTerm lhs = NTerm::variable(l.x), rhs;
      if (!l.y) {
        rhs = NTerm::numeral(static_cast<std::uint64_t>(l.c));
      } else if (l.c >= 0) {
        rhs = NTerm::variable(*l.y, l.c);
      } else {
        lhs = NTerm::variable(l.x, -l.c);
        rhs = NTerm::variable(*l.y);
      }
      return NFormula::atom(l.kind == Lit::Eq ? NAtom::eq(lhs, rhs) : NAtom::neq(lhs, rhs));
    }
    case Lit::Cong:
      return NFormula::atom(NAtom::q(static_cast<std::uint64_t>(l.c), l.n, NTerm::variable(l.x)));
    case Lit::NCong:
      return NFormula::atom(NAtom::not_q(static_cast<std::uint64_t>(l.c), l.n, NTerm::variable(l.x)));
  }
  return NFormula::truth();
}

// ---- normal forms ----

bool clause_consistent(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const Lit& a = c[i];
      const Lit& b = c[j];
      if (a.x != b.x) continue;
      if (a.negated() == b) return false;
      if (a.kind == Lit::Eq && b.kind == Lit::Eq && !a.y && !b.y && a.c != b.c) return false;
      if (a.kind == Lit::Cong && b.kind == Lit::Cong &&
          !crt_merge(Congruence{static_cast<std::uint64_t>(a.c), a.n}, Congruence{static_cast<std::uint64_t>(b.c), b.n})) {
        return false;
      }
    }
  }
  return true;
}

Dnf normalise(Dnf in) {
  Dnf out;
  for (auto& c : in) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (clause_consistent(c)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Clause& a, const Clause& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // drop clauses implied by a shorter one
  Dnf kept;
  for (auto& c : out) {
    bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const Clause& k) {
      return std::includes(c.begin(), c.end(), k.begin(), k.end());
    });
    if (!subsumed) kept.push_back(std::move(c));
  }
  return kept;
}

Dnf dnf_of(const IForm& f, bool negate) {
  switch (f.kind()) {
    case NodeKind::True:
      return negate ? Dnf{} : Dnf{Clause{}};
    case NodeKind::False:
      return negate ? Dnf{Clause{}} : Dnf{};
    case NodeKind::Atom:
      return Dnf{Clause{negate ? f.atom().negated() : f.atom()}};
    case NodeKind::Not:
      return dnf_of(f.child(), !negate);
    case NodeKind::And:
    case NodeKind::Or: {
      const bool conj = (f.kind() == NodeKind::And) != negate;
      if (!conj) {
        Dnf out;
        for (const auto& c : f.children()) {
          Dnf d = dnf_of(c, negate);
          out.insert(out.end(), d.begin(), d.end());
        }
        return normalise(std::move(out));
      }
      Dnf acc{Clause{}};
      for (const auto& c : f.children()) {
        Dnf d = dnf_of(c, negate);
        Dnf next;
        for (const auto& a : acc) {
          for (const auto& b : d) {
            Clause m = a;
            m.insert(m.end(), b.begin(), b.end());
            next.push_back(std::move(m));
            if (next.size() > kClauseLimit) throw DomainError("qe: normal form exceeds the clause limit");
          }
        }
        acc = normalise(std::move(next));
      }
      return acc;
    }
    case NodeKind::Quantified:
      break;
  }
  throw DomainError("qe: internal error, quantifier inside a matrix");
}

IForm form_of(const Dnf& d) {
  std::vector<IForm> clauses;
  for (const auto& c : d) {
    std::vector<IForm> lits;
    for (const auto& l : c) lits.push_back(lit_form(l));
    clauses.push_back(IForm::conjunction(std::move(lits)));
  }
  return IForm::disjunction(std::move(clauses));
}

// ---- elimination ----

// Exists y. (conjunction of literals), as a formula without y.
IForm project(const std::string& y, const Clause& clause) {
  std::vector<IForm> rest;
  std::vector<Lit> ys;
  for (const auto& l : clause) {
    if (l.mentions(y)) {
      ys.push_back(l);
    } else {
      rest.push_back(lit_form(l));
    }
  }
  // y pinned by an equality: substitute
  for (const auto& l : ys) {
    if (l.kind != Lit::Eq) continue;
    Lin value;
    if (!l.y) {
      value = Lin{std::nullopt, l.c};
    } else if (l.x == y) {
      value = Lin{l.y, l.c};
    } else {
      value = Lin{l.x, -l.c};
    }
    if (value.var && value.off < 0) {
      for (std::int64_t j = 1; j <= -value.off; ++j) {
        rest.push_back(make_eq(Lin{value.var, 0}, Lin{std::nullopt, j}, false));
      }
    }
    for (const auto& other : ys) rest.push_back(substitute(other, y, value));
    return IForm::conjunction(std::move(rest));
  }
  // Only congruences and disequations remain on y. The congruences carve out a
  // union of residue classes, each infinite, so finitely many disequations
  // cannot exclude every y.
  Congruence merged{0, 1};
  std::vector<Lit> ncong;
  for (const auto& l : ys) {
    if (l.kind == Lit::Cong) {
      auto m = crt_merge(merged, Congruence{static_cast<std::uint64_t>(l.c), l.n});
      if (!m) return IForm::falsity();
      merged = *m;
    } else if (l.kind == Lit::NCong) {
      ncong.push_back(l);
    }
  }
  if (!ncong.empty()) {
    std::uint64_t period = merged.modulus;
    for (const auto& l : ncong) period = lcm_u64(period, l.n);
    if (period / merged.modulus > 10'000'000) throw DomainError("qe: congruence period too large");
    bool found = false;
    for (std::uint64_t v = merged.residue; v < period && !found; v += merged.modulus) {
      found = std::all_of(ncong.begin(), ncong.end(),
                          [&](const Lit& l) { return v % l.n != static_cast<std::uint64_t>(l.c); });
    }
    if (!found) return IForm::falsity();
  }
  return IForm::conjunction(std::move(rest));
}

IForm eliminate_exists(const std::string& y, const IForm& matrix) {
  std::vector<IForm> out;
  for (const auto& c : dnf_of(matrix, false)) out.push_back(project(y, c));
  return form_of(normalise(dnf_of(IForm::disjunction(std::move(out)), false)));
}

IForm eliminate(const IForm& f) {
  switch (f.kind()) {
    case NodeKind::Quantified: {
      IForm body = eliminate(f.body());
      if (f.quantifier() == Quantifier::Exists) return eliminate_exists(f.variable(), body);
      return IForm::negation(eliminate_exists(f.variable(), IForm::negation(body)));
    }
    case NodeKind::Not:
      return IForm::negation(eliminate(f.child()));
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<IForm> cs;
      for (const auto& c : f.children()) cs.push_back(eliminate(c));
      return f.kind() == NodeKind::And ? IForm::conjunction(std::move(cs)) : IForm::disjunction(std::move(cs));
    }
    default:
      return f;
  }
}

}  // namespace

NFormula qe(const NFormula& f) {
  const Dnf d = normalise(dnf_of(eliminate(from_surface(f)), false));
  std::vector<NFormula> clauses;
  for (const auto& c : d) {
    std::vector<NFormula> lits;
    for (const auto& l : c) lits.push_back(to_surface_lit(l));
    clauses.push_back(NFormula::conjunction(std::move(lits)));
  }
  return NFormula::disjunction(std::move(clauses));
}

}  // namespace zsparse
