#include "lexer.hpp"
#include "zsparse/errors.hpp"
#include "zsparse/formula.hpp"

#include <set>

namespace zsparse {
namespace {

using detail::Tok;
using detail::TokenStream;

class Parser {
 public:
  explicit Parser(const std::string& text) : ts_(detail::tokenize(text)) {}

  GroupFormula parse() {
    GroupFormula f = parse_or();
    if (!ts_.at(Tok::End)) ts_.fail("unexpected trailing input");
    return f;
  }

 private:
  GroupFormula parse_or() {
    std::size_t b = ts_.peek().begin;
    std::vector<GroupFormula> parts{parse_and()};
    while (ts_.accept_word("OR")) parts.push_back(parse_and());
    if (parts.size() == 1) return parts.front();
    return GroupFormula::disjunction(std::move(parts), {b, ts_.last_end()});
  }

  GroupFormula parse_and() {
    std::size_t b = ts_.peek().begin;
    std::vector<GroupFormula> parts{parse_unary()};
    while (ts_.accept_word("AND")) parts.push_back(parse_unary());
    if (parts.size() == 1) return parts.front();
    return GroupFormula::conjunction(std::move(parts), {b, ts_.last_end()});
  }

  GroupFormula parse_unary() {
    std::size_t b = ts_.peek().begin;
    if (ts_.accept_word("NOT")) {
      GroupFormula inner = parse_unary();
      return GroupFormula::negation(inner, {b, ts_.last_end()});
    }
    if (ts_.at_word("ALL") || ts_.at_word("EXISTS")) return parse_quantifier();
    return parse_primary();
  }

  GroupFormula parse_quantifier() {
    std::size_t b = ts_.peek().begin;
    Quantifier q = ts_.next().text == "ALL" ? Quantifier::Forall : Quantifier::Exists;
    const auto& var_tok = ts_.expect(Tok::Ident, "a variable after the quantifier");
    std::string var = var_tok.text;
    if (detail::is_keyword(var)) throw ParseError(var_tok.begin, "keyword '" + var + "' cannot be a variable");
    if (bound_.count(var)) throw ParseError(var_tok.begin, "variable '" + var + "' is already bound in this scope");
    bool bounded = false;
    if (ts_.accept_word("IN")) {
      const auto& pred = ts_.expect(Tok::Ident, "the predicate name P");
      if (pred.text != "P") throw ParseError(pred.begin, "unknown symbol '" + pred.text + "' (only P is a predicate)");
      bounded = true;
    }
    ts_.expect(Tok::Dot, "'.' after the quantified variable");
    bound_.insert(var);
    GroupFormula body = parse_or();
    bound_.erase(var);
    return GroupFormula::quantified(q, var, bounded, body, {b, ts_.last_end()});
  }

  GroupFormula parse_primary() {
    std::size_t b = ts_.peek().begin;
    if (ts_.accept_word("TRUE")) return GroupFormula::truth({b, ts_.last_end()});
    if (ts_.accept_word("FALSE")) return GroupFormula::falsity({b, ts_.last_end()});
    if (ts_.accept(Tok::LParen)) {
      GroupFormula f = parse_or();
      ts_.expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  GroupFormula parse_atom() {
    std::size_t b = ts_.peek().begin;
    LinearTerm lhs = parse_term();
    const auto& op = ts_.peek();
    Atom atom;
    if (ts_.accept(Tok::Eq)) {
      atom = Atom::eq0(lhs - parse_term());
    } else if (ts_.accept(Tok::Neq)) {
      atom = Atom::neq0(lhs - parse_term());
    } else if (ts_.at(Tok::Cong) || ts_.at(Tok::EqMod)) {
      std::size_t mod_pos = op.begin;
      std::string digits;
      if (ts_.accept(Tok::EqMod)) {
        const auto& m = ts_.expect(Tok::Int, "a modulus after '=mod'");
        digits = m.text;
        mod_pos = m.begin;
      } else {
        digits = ts_.next().text;
      }
      Integer n = parse_integer(digits);
      if (n < 2 || !fits_u64(n)) throw ParseError(mod_pos, "modulus must be >= 2");
      atom = Atom::congruence(lhs - parse_term(), to_u64(n));
    } else {
      ts_.fail("expected a relation (=, !=, =mod n)");
    }
    return GroupFormula::atom(std::move(atom), {b, ts_.last_end()});
  }

  LinearTerm parse_term() {
    LinearTerm t;
    bool first = true;
    for (;;) {
      bool negative = false;
      if (ts_.accept(Tok::Minus)) {
        negative = true;
      } else if (ts_.accept(Tok::Plus)) {
      } else if (!first) {
        break;
      }
      LinearTerm s = parse_summand();
      t = negative ? t - s : t + s;
      first = false;
    }
    return t;
  }

  LinearTerm parse_summand() {
    if (ts_.at(Tok::Int)) {
      Integer k = parse_integer(ts_.next().text);
      ts_.accept(Tok::Star);
      if (ts_.at(Tok::Ident) && !detail::is_keyword(ts_.peek().text)) {
        return LinearTerm::variable(ts_.next().text, k);
      }
      return LinearTerm(k);
    }
    if (ts_.at(Tok::Ident) && !detail::is_keyword(ts_.peek().text)) {
      return LinearTerm::variable(ts_.next().text);
    }
    ts_.fail("expected a variable or an integer");
  }

  TokenStream ts_;
  std::set<std::string> bound_;
};

std::string print_node(const GroupFormula& f);

std::string wrapped(const GroupFormula& f, bool wrap) { return wrap ? "(" + print_node(f) + ")" : print_node(f); }

std::string print_node(const GroupFormula& f) {
  switch (f.kind()) {
    case NodeKind::True:
      return "TRUE";
    case NodeKind::False:
      return "FALSE";
    case NodeKind::Atom:
      return f.atom().to_string();
    case NodeKind::Not: {
      auto k = f.child().kind();
      return "NOT " + wrapped(f.child(), k == NodeKind::And || k == NodeKind::Or || k == NodeKind::Quantified);
    }
    case NodeKind::And:
    case NodeKind::Or: {
      bool is_and = f.kind() == NodeKind::And;
      std::string out;
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        const auto& c = f.children()[i];
        if (i) out += is_and ? " AND " : " OR ";
        bool wrap = c.kind() == NodeKind::Or || c.kind() == NodeKind::Quantified || (is_and && c.kind() == NodeKind::And);
        out += wrapped(c, wrap);
      }
      return out;
    }
    case NodeKind::Quantified:
      return std::string(f.quantifier() == Quantifier::Forall ? "ALL " : "EXISTS ") + f.variable() +
             (f.bounded() ? " IN P. " : ". ") + print_node(f.body());
  }
  return {};
}

}  // namespace

GroupFormula parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string print(const GroupFormula& f) { return print_node(f); }

}  // namespace zsparse
