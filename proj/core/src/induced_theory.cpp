#include "zsparse/induced_theory.hpp"

#include "lexer.hpp"
#include "zsparse/errors.hpp"
#include "zsparse/exponent_arith.hpp"

#include <algorithm>
#include <functional>

namespace zsparse {

NTerm NTerm::numeral(std::uint64_t d) {
  if (d < 1) throw DomainError("numerals of the successor structure start at 1");
  return NTerm{std::nullopt, static_cast<std::int64_t>(d - 1)};
}

std::string NTerm::to_string() const {
  const std::string base = var ? *var : "1";
  if (shift == 0) return base;
  if (shift == 1) return "s(" + base + ")";
  return "s^" + std::to_string(shift) + "(" + base + ")";
}

NAtom NAtom::eq(NTerm a, NTerm b) { return NAtom{NAtomKind::TermEq, std::move(a), std::move(b), 0, 0}; }
NAtom NAtom::neq(NTerm a, NTerm b) { return NAtom{NAtomKind::TermNeq, std::move(a), std::move(b), 0, 0}; }

NAtom NAtom::q(std::uint64_t k, std::uint64_t n, NTerm t) {
  if (n < 2) throw DomainError("modulus must be >= 2");
  return NAtom{NAtomKind::Q, std::move(t), NTerm{}, k % n, n};
}

NAtom NAtom::not_q(std::uint64_t k, std::uint64_t n, NTerm t) {
  NAtom a = q(k, n, std::move(t));
  a.kind = NAtomKind::NotQ;
  return a;
}

std::set<std::string> NAtom::variables() const {
  std::set<std::string> out;
  if (lhs.var) out.insert(*lhs.var);
  if ((kind == NAtomKind::TermEq || kind == NAtomKind::TermNeq) && rhs.var) out.insert(*rhs.var);
  return out;
}

std::string NAtom::to_string() const {
  switch (kind) {
    case NAtomKind::TermEq:
      return lhs.to_string() + " = " + rhs.to_string();
    case NAtomKind::TermNeq:
      return lhs.to_string() + " != " + rhs.to_string();
    case NAtomKind::Q:
      return "Q[" + std::to_string(k) + "," + std::to_string(n) + "](" + lhs.to_string() + ")";
    case NAtomKind::NotQ:
      return "NOT Q[" + std::to_string(k) + "," + std::to_string(n) + "](" + lhs.to_string() + ")";
  }
  return {};
}

// ---- parsing ----

namespace {

using detail::Tok;
using detail::TokenStream;

class NParser {
 public:
  explicit NParser(const std::string& text) : ts_(detail::tokenize(text)) {}

  NFormula parse() {
    NFormula f = parse_or();
    if (!ts_.at(Tok::End)) ts_.fail("unexpected trailing input");
    return f;
  }

 private:
  NFormula parse_or() {
    std::size_t b = ts_.peek().begin;
    std::vector<NFormula> parts{parse_and()};
    while (ts_.accept_word("OR")) parts.push_back(parse_and());
    if (parts.size() == 1) return parts.front();
    return NFormula::disjunction(std::move(parts), {b, ts_.last_end()});
  }

  NFormula parse_and() {
    std::size_t b = ts_.peek().begin;
    std::vector<NFormula> parts{parse_unary()};
    while (ts_.accept_word("AND")) parts.push_back(parse_unary());
    if (parts.size() == 1) return parts.front();
    return NFormula::conjunction(std::move(parts), {b, ts_.last_end()});
  }

  NFormula parse_unary() {
    std::size_t b = ts_.peek().begin;
    if (ts_.accept_word("NOT")) return NFormula::negation(parse_unary(), {b, ts_.last_end()});
    if (ts_.at_word("ALL") || ts_.at_word("EXISTS")) {
      Quantifier q = ts_.next().text == "ALL" ? Quantifier::Forall : Quantifier::Exists;
      const auto& v = ts_.expect(Tok::Ident, "a variable after the quantifier");
      check_variable(v);
      if (bound_.count(v.text)) throw ParseError(v.begin, "variable '" + v.text + "' is already bound in this scope");
      std::string var = v.text;
      ts_.expect(Tok::Dot, "'.' after the quantified variable");
      bound_.insert(var);
      NFormula body = parse_or();
      bound_.erase(var);
      return NFormula::quantified(q, var, false, body, {b, ts_.last_end()});
    }
    if (ts_.accept_word("TRUE")) return NFormula::truth({b, ts_.last_end()});
    if (ts_.accept_word("FALSE")) return NFormula::falsity({b, ts_.last_end()});
    if (ts_.accept(Tok::LParen)) {
      NFormula f = parse_or();
      ts_.expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  NFormula parse_atom() {
    std::size_t b = ts_.peek().begin;
    if (ts_.at_word("Q") && ts_.peek(1).kind == Tok::LBracket) {
      ts_.next();
      ts_.next();
      std::uint64_t k = parse_u64("the residue k");
      ts_.expect(Tok::Comma, "','");
      std::size_t mod_pos = ts_.peek().begin;
      std::uint64_t n = parse_u64("the modulus n");
      ts_.expect(Tok::RBracket, "']'");
      if (n < 2) throw ParseError(mod_pos, "modulus must be >= 2");
      if (k >= n) throw ParseError(mod_pos, "residue must satisfy 0 <= k < n");
      ts_.expect(Tok::LParen, "'(' after Q[k,n]");
      NTerm t = parse_term();
      ts_.expect(Tok::RParen, "')'");
      return NFormula::atom(NAtom::q(k, n, t), {b, ts_.last_end()});
    }
    NTerm lhs = parse_term();
    bool equal;
    if (ts_.accept(Tok::Eq)) {
      equal = true;
    } else if (ts_.accept(Tok::Neq)) {
      equal = false;
    } else {
      ts_.fail("expected '=' or '!='");
    }
    NTerm rhs = parse_term();
    return NFormula::atom(equal ? NAtom::eq(lhs, rhs) : NAtom::neq(lhs, rhs), {b, ts_.last_end()});
  }

  NTerm parse_term() {
    if (ts_.at(Tok::Int)) {
      const auto& t = ts_.next();
      if (t.text != "1") throw ParseError(t.begin, "the only numeral is 1; write s^m(1) for larger values");
      return NTerm::numeral(1);
    }
    if (ts_.at_word("s") && (ts_.peek(1).kind == Tok::LParen || ts_.peek(1).kind == Tok::Caret)) {
      ts_.next();
      std::int64_t m = 1;
      if (ts_.accept(Tok::Caret)) {
        bool neg = ts_.accept(Tok::Minus);
        std::uint64_t mag = parse_u64("a shift exponent");
        if (mag > static_cast<std::uint64_t>(INT32_MAX)) ts_.fail("shift exponent too large");
        m = neg ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
      }
      std::size_t inner_pos = ts_.peek().begin;
      ts_.expect(Tok::LParen, "'(' after s");
      NTerm inner = parse_term();
      ts_.expect(Tok::RParen, "')'");
      return compose(m, inner, inner_pos);
    }
    const auto& v = ts_.expect(Tok::Ident, "a term");
    check_variable(v);
    return NTerm::variable(v.text);
  }

  // s^m applied to an already canonical term.
  static NTerm compose(std::int64_t m, NTerm inner, std::size_t pos) {
    if (inner.is_constant()) {
      std::int64_t value = std::max<std::int64_t>(1, 1 + inner.shift + m);
      return NTerm::numeral(static_cast<std::uint64_t>(value));
    }
    if (inner.shift < 0 && m > 0) {
      throw ParseError(pos, "successor applied after a predecessor has no single-shift form");
    }
    inner.shift += m;
    return inner;
  }

  std::uint64_t parse_u64(const char* what) {
    const auto& t = ts_.expect(Tok::Int, what);
    Integer v = parse_integer(t.text);
    if (!fits_u64(v)) throw ParseError(t.begin, std::string(what) + " is too large");
    return to_u64(v);
  }

  void check_variable(const detail::Token& t) {
    if (detail::is_keyword(t.text) || t.text == "s" || t.text == "Q") {
      throw ParseError(t.begin, "'" + t.text + "' is reserved and cannot be a variable");
    }
  }

  TokenStream ts_;
  std::set<std::string> bound_;
};

bool needs_parens(NodeKind parent, NodeKind child) {
  switch (parent) {
    case NodeKind::Not:
      return child == NodeKind::And || child == NodeKind::Or || child == NodeKind::Quantified;
    case NodeKind::And:
      return child == NodeKind::Or || child == NodeKind::Quantified || child == NodeKind::And;
    case NodeKind::Or:
      return child == NodeKind::Or || child == NodeKind::Quantified;
    default:
      return false;
  }
}

std::string print_node(const NFormula& f) {
  auto wrapped = [&](const NFormula& c) {
    std::string s = print_node(c);
    return needs_parens(f.kind(), c.kind()) ? "(" + s + ")" : s;
  };
  switch (f.kind()) {
    case NodeKind::True:
      return "TRUE";
    case NodeKind::False:
      return "FALSE";
    case NodeKind::Atom:
      return f.atom().to_string();
    case NodeKind::Not:
      return "NOT " + wrapped(f.child());
    case NodeKind::And:
    case NodeKind::Or: {
      std::string out;
      const char* sep = f.kind() == NodeKind::And ? " AND " : " OR ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        out += wrapped(f.children()[i]);
      }
      return out;
    }
    case NodeKind::Quantified:
      return std::string(f.quantifier() == Quantifier::Exists ? "EXISTS " : "ALL ") + f.variable() + ". " +
             print_node(f.body());
  }
  return {};
}

}  // namespace

NFormula parse_nformula(const std::string& text) { return NParser(text).parse(); }

std::string print(const NFormula& f) { return print_node(f); }

// ---- evaluation ----

std::uint64_t term_value(const NTerm& t, const NAssignment& asg) {
  std::int64_t base = 1;
  if (t.var) {
    auto it = asg.find(*t.var);
    if (it == asg.end()) throw DomainError("unassigned variable: " + *t.var);
    if (it->second < 1) throw DomainError("variable " + *t.var + " must be >= 1");
    base = static_cast<std::int64_t>(it->second);
  }
  return static_cast<std::uint64_t>(std::max<std::int64_t>(1, base + t.shift));
}

bool atom_holds(const NAtom& a, const NAssignment& asg) {
  switch (a.kind) {
    case NAtomKind::TermEq:
      return term_value(a.lhs, asg) == term_value(a.rhs, asg);
    case NAtomKind::TermNeq:
      return term_value(a.lhs, asg) != term_value(a.rhs, asg);
    case NAtomKind::Q:
      return term_value(a.lhs, asg) % a.n == a.k;
    case NAtomKind::NotQ:
      return term_value(a.lhs, asg) % a.n != a.k;
  }
  return false;
}

namespace {

// Formula compiled against variable slots for fast bounded model checking.
struct Compiled {
  struct Term {
    int slot = -1;  // -1: the constant 1
    std::int64_t shift = 0;
  };
  struct Node {
    NodeKind kind = NodeKind::True;
    NAtomKind atom_kind = NAtomKind::TermEq;
    Term lhs, rhs;
    std::uint64_t k = 0, n = 0;
    std::vector<int> children;
    Quantifier quantifier = Quantifier::Exists;
    int slot = -1;
    std::uint64_t range = 0;
  };
  std::vector<Node> nodes;
  std::vector<std::int64_t> values;

  std::int64_t term(const Term& t) const {
    std::int64_t b = t.slot < 0 ? 1 : values[static_cast<std::size_t>(t.slot)];
    return std::max<std::int64_t>(1, b + t.shift);
  }

  bool eval(int id) {
    const Node& nd = nodes[static_cast<std::size_t>(id)];
    switch (nd.kind) {
      case NodeKind::True:
        return true;
      case NodeKind::False:
        return false;
      case NodeKind::Atom:
        switch (nd.atom_kind) {
          case NAtomKind::TermEq:
            return term(nd.lhs) == term(nd.rhs);
          case NAtomKind::TermNeq:
            return term(nd.lhs) != term(nd.rhs);
          case NAtomKind::Q:
            return static_cast<std::uint64_t>(term(nd.lhs)) % nd.n == nd.k;
          case NAtomKind::NotQ:
            return static_cast<std::uint64_t>(term(nd.lhs)) % nd.n != nd.k;
        }
        return false;
      case NodeKind::Not:
        return !eval(nd.children[0]);
      case NodeKind::And:
        for (int c : nd.children) {
          if (!eval(c)) return false;
        }
        return true;
      case NodeKind::Or:
        for (int c : nd.children) {
          if (eval(c)) return true;
        }
        return false;
      case NodeKind::Quantified: {
        const bool want = nd.quantifier == Quantifier::Exists;
        auto& slot = values[static_cast<std::size_t>(nd.slot)];
        const std::int64_t saved = slot;
        bool result = !want;
        for (std::uint64_t v = 1; v <= nd.range; ++v) {
          slot = static_cast<std::int64_t>(v);
          if (eval(nd.children[0]) == want) {
            result = want;
            break;
          }
        }
        slot = saved;
        return result;
      }
    }
    return false;
  }
};

std::uint64_t q_period(const NFormula& f) {
  std::uint64_t p = 1;
  std::function<void(const NFormula&)> walk = [&](const NFormula& g) {
    if (g.kind() == NodeKind::Atom && (g.atom().kind == NAtomKind::Q || g.atom().kind == NAtomKind::NotQ)) {
      p = std::min<std::uint64_t>(lcm_u64(p, g.atom().n), 1'000'000);
    }
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return p;
}

std::uint64_t shift_mass(const NFormula& f) {
  std::uint64_t m = 0;
  std::function<void(const NFormula&)> walk = [&](const NFormula& g) {
    if (g.kind() == NodeKind::Atom) {
      const auto& a = g.atom();
      m += static_cast<std::uint64_t>(a.lhs.shift < 0 ? -a.lhs.shift : a.lhs.shift);
      if (a.kind == NAtomKind::TermEq || a.kind == NAtomKind::TermNeq) {
        m += static_cast<std::uint64_t>(a.rhs.shift < 0 ? -a.rhs.shift : a.rhs.shift);
      }
    }
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return m;
}

Compiled compile(const NFormula& f, const NAssignment& asg, std::uint64_t bound) {
  Compiled c;
  std::map<std::string, int> slots;
  std::vector<std::pair<std::string, int>> scope;
  for (const auto& [name, value] : asg) {
    slots[name] = static_cast<int>(c.values.size());
    c.values.push_back(static_cast<std::int64_t>(value));
  }
  const std::uint64_t period = q_period(f);
  std::function<int(const NFormula&, std::map<std::string, int>&, std::uint64_t)> build =
      [&](const NFormula& g, std::map<std::string, int>& env, std::uint64_t depth) -> int {
    Compiled::Node nd;
    nd.kind = g.kind();
    auto term = [&](const NTerm& t) {
      Compiled::Term out{-1, t.shift};
      if (t.var) {
        auto it = env.find(*t.var);
        if (it == env.end()) throw DomainError("unassigned variable: " + *t.var);
        out.slot = it->second;
      }
      return out;
    };
    switch (g.kind()) {
      case NodeKind::Atom:
        nd.atom_kind = g.atom().kind;
        nd.lhs = term(g.atom().lhs);
        if (nd.atom_kind == NAtomKind::TermEq || nd.atom_kind == NAtomKind::TermNeq) nd.rhs = term(g.atom().rhs);
        nd.k = g.atom().k;
        nd.n = g.atom().n;
        break;
      case NodeKind::Quantified: {
        nd.quantifier = g.quantifier();
        nd.slot = static_cast<int>(c.values.size());
        c.values.push_back(1);
        nd.range = (depth + 1) * bound + period;
        auto inner = env;
        inner[g.variable()] = nd.slot;
        nd.children.push_back(build(g.body(), inner, depth + 1));
        break;
      }
      default:
        for (const auto& ch : g.children()) nd.children.push_back(build(ch, env, depth));
    }
    c.nodes.push_back(std::move(nd));
    return static_cast<int>(c.nodes.size()) - 1;
  };
  for (const auto& [name, value] : asg) {
    if (value < 1) throw DomainError("variable " + name + " must be >= 1");
  }
  build(f, slots, 0);
  return c;
}

}  // namespace

bool n_holds_bounded(const NFormula& f, const NAssignment& asg, std::uint64_t bound) {
  Compiled c = compile(f, asg, bound);
  return c.eval(static_cast<int>(c.nodes.size()) - 1);
}

bool n_holds(const NFormula& f, const NAssignment& asg) {
  if (!f.is_quantifier_free()) throw DomainError("n_holds needs a quantifier-free formula; use n_evaluate");
  return n_holds_bounded(f, asg, 1);
}

Truth n_evaluate(const NFormula& f, const NAssignment& asg, std::uint64_t domain_bound) {
  if (f.is_quantifier_free()) return truth_of(n_holds(f, asg));
  if (domain_bound < 1) throw DomainError("domain bound must be >= 1");
  // every assigned value and every term offset must sit below the bound
  std::uint64_t floor_bound = shift_mass(f) + 1;
  for (const auto& [name, value] : asg) floor_bound = std::max(floor_bound, value + shift_mass(f) + 1);
  domain_bound = std::max(domain_bound, floor_bound);
  const bool a = n_holds_bounded(f, asg, domain_bound);
  const bool b = n_holds_bounded(f, asg, 2 * domain_bound);
  return a == b ? truth_of(a) : Truth::Unknown;
}

// ---- translation ----

NFormula translate_equation(const EquationSpec& eq, std::uint64_t q) {
  std::vector<NFormula> disjuncts;
  for (const auto& fam : solve_powers(eq, q)) {
    std::vector<NFormula> parts;
    for (const auto& block : fam.blocks) {
      const std::size_t a = block.front();
      const auto& anchor = eq.names[a];
      for (std::size_t i : block) {
        if (i == a) continue;
        const std::int64_t d = static_cast<std::int64_t>(fam.base_exponents[i]) -
                               static_cast<std::int64_t>(fam.base_exponents[a]);
        parts.push_back(NFormula::atom(NAtom::eq(NTerm::variable(eq.names[i]), NTerm::variable(anchor, d))));
      }
      // the anchor never drops below its base exponent, keeping s^-1 exact
      for (std::uint64_t j = 1; j < fam.base_exponents[a]; ++j) {
        parts.push_back(NFormula::atom(NAtom::neq(NTerm::variable(anchor), NTerm::numeral(j))));
      }
    }
    disjuncts.push_back(NFormula::conjunction(std::move(parts)));
  }
  return NFormula::disjunction(std::move(disjuncts));
}

NFormula translate_congruence(const Integer& c, const Integer& d, std::uint64_t l, std::uint64_t q,
                              const std::string& var) {
  if (q < 2) throw DomainError("powers: base must be >= 2");
  if (l < 1) throw DomainError("modulus must be >= 1");
  std::vector<std::uint64_t> residues;
  const std::uint64_t cm = floor_mod(c, l), dm = floor_mod(d, l);
  for (std::uint64_t k = 0; k < l; ++k) {
    if ((static_cast<unsigned __int128>(cm) * k + dm) % l == 0) residues.push_back(k);
  }
  if (residues.empty()) return NFormula::falsity();
  const ExponentClassSet cls = power_residue_union(q, residues, l);
  const NTerm x = NTerm::variable(var);
  std::vector<NFormula> disjuncts;
  for (auto m : cls.exceptional) disjuncts.push_back(NFormula::atom(NAtom::eq(x, NTerm::numeral(m))));
  for (const auto& p : cls.progressions) {
    std::vector<NFormula> parts;
    if (p.step >= 2) parts.push_back(NFormula::atom(NAtom::q(p.start % p.step, p.step, x)));
    for (std::uint64_t j = 1; j < p.start; ++j) {
      if (j % p.step == p.start % p.step) parts.push_back(NFormula::atom(NAtom::neq(x, NTerm::numeral(j))));
    }
    disjuncts.push_back(NFormula::conjunction(std::move(parts)));
  }
  return NFormula::disjunction(std::move(disjuncts));
}

// ---- types ----

std::uint64_t count_types(const std::vector<std::uint64_t>& moduli) {
  std::vector<std::uint64_t> ms;
  for (auto m : moduli) {
    if (m < 1) throw DomainError("moduli must be >= 1");
    ms.push_back(m);
  }
  std::uint64_t count = 0;
  constexpr std::uint64_t kLimit = 100'000'000;
  // Depth-first over one residue per modulus, pruning CRT-inconsistent prefixes.
  std::function<void(std::size_t, Congruence)> rec = [&](std::size_t i, Congruence acc) {
    if (i == ms.size()) {
      if (++count > kLimit) throw DomainError("type count exceeds " + std::to_string(kLimit));
      return;
    }
    const std::uint64_t m = ms[i];
    const std::uint64_t g = gcd_u64(acc.modulus, m);
    // residues r mod m compatible with acc are exactly those = acc.residue (mod g)
    for (std::uint64_t r = acc.residue % g; r < m; r += g) {
      auto merged = crt_merge(acc, Congruence{r, m});
      if (merged) rec(i + 1, *merged);
    }
  };
  rec(0, Congruence{0, 1});
  return count;
}

}  // namespace zsparse
