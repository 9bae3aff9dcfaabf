// Immutable boolean formula trees with quantifiers, parameterised by the atom type.
#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zsparse {

enum class Quantifier { Exists, Forall };

/// Half-open byte range in the source text a node was parsed from.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class NodeKind { True, False, Atom, Not, And, Or, Quantified };

/// Atom types supply `std::set<std::string> variables() const` and operator==.
template <class AtomT>
class Formula {
 public:
  Formula() : Formula(make(NodeKind::True)) {}

  static Formula truth(SourceSpan span = {}) { return Formula(make(NodeKind::True, span)); }
  static Formula falsity(SourceSpan span = {}) { return Formula(make(NodeKind::False, span)); }
  static Formula constant(bool value) { return value ? truth() : falsity(); }

  static Formula atom(AtomT a, SourceSpan span = {}) {
    auto n = make(NodeKind::Atom, span);
    n->atom = std::make_shared<const AtomT>(std::move(a));
    return Formula(std::move(n));
  }

  static Formula negation(Formula f, SourceSpan span = {}) {
    auto n = make(NodeKind::Not, span);
    n->children.push_back(std::move(f));
    return Formula(std::move(n));
  }

  static Formula conjunction(std::vector<Formula> fs, SourceSpan span = {}) {
    if (fs.empty()) return truth(span);
    if (fs.size() == 1) return fs.front();
    auto n = make(NodeKind::And, span);
    n->children = std::move(fs);
    return Formula(std::move(n));
  }

  static Formula disjunction(std::vector<Formula> fs, SourceSpan span = {}) {
    if (fs.empty()) return falsity(span);
    if (fs.size() == 1) return fs.front();
    auto n = make(NodeKind::Or, span);
    n->children = std::move(fs);
    return Formula(std::move(n));
  }

  /// `bounded` marks a quantifier relativised to the predicate P.
  static Formula quantified(Quantifier q, std::string var, bool bounded, Formula body, SourceSpan span = {}) {
    if (var.empty()) throw std::invalid_argument("quantified variable name must be nonempty");
    auto n = make(NodeKind::Quantified, span);
    n->quantifier = q;
    n->variable = std::move(var);
    n->bounded = bounded;
    n->children.push_back(std::move(body));
    return Formula(std::move(n));
  }

  NodeKind kind() const noexcept { return node_->kind; }
  const AtomT& atom() const { return *node_->atom; }
  const std::vector<Formula>& children() const noexcept { return node_->children; }
  const Formula& child() const { return node_->children.front(); }
  Quantifier quantifier() const noexcept { return node_->quantifier; }
  const std::string& variable() const noexcept { return node_->variable; }
  bool bounded() const noexcept { return node_->bounded; }
  const Formula& body() const { return node_->children.front(); }
  SourceSpan span() const noexcept { return node_->span; }

  bool is_quantifier_free() const {
    if (kind() == NodeKind::Quantified) return false;
    for (const auto& c : children()) {
      if (!c.is_quantifier_free()) return false;
    }
    return true;
  }

  std::set<std::string> free_variables() const {
    std::set<std::string> out;
    collect_free(*this, {}, out);
    return out;
  }

  /// Structural equality; source spans are ignored.
  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case NodeKind::True:
      case NodeKind::False:
        return true;
      case NodeKind::Atom:
        return a.atom() == b.atom();
      case NodeKind::Quantified:
        if (a.quantifier() != b.quantifier() || a.variable() != b.variable() || a.bounded() != b.bounded()) {
          return false;
        }
        break;
      default:
        break;
    }
    return a.children() == b.children();
  }

 private:
  struct Node {
    NodeKind kind = NodeKind::True;
    std::shared_ptr<const AtomT> atom;
    std::vector<Formula> children;
    Quantifier quantifier = Quantifier::Exists;
    std::string variable;
    bool bounded = false;
    SourceSpan span;
  };

  static std::shared_ptr<Node> make(NodeKind k, SourceSpan span = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->span = span;
    return n;
  }

  static void collect_free(const Formula& f, std::set<std::string> bound, std::set<std::string>& out) {
    switch (f.kind()) {
      case NodeKind::Atom:
        for (const auto& v : f.atom().variables()) {
          if (!bound.count(v)) out.insert(v);
        }
        return;
      case NodeKind::Quantified:
        bound.insert(f.variable());
        collect_free(f.body(), std::move(bound), out);
        return;
      default:
        for (const auto& c : f.children()) collect_free(c, bound, out);
    }
  }

  explicit Formula(std::shared_ptr<Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Kleene three-valued truth.
enum class Truth { False, True, Unknown };

inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }
inline Truth kleene_not(Truth t) {
  return t == Truth::Unknown ? t : (t == Truth::True ? Truth::False : Truth::True);
}
inline Truth kleene_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::True;
}
inline Truth kleene_or(Truth a, Truth b) { return kleene_not(kleene_and(kleene_not(a), kleene_not(b))); }

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::True:
      return "true";
    case Truth::False:
      return "false";
    default:
      return "unknown";
  }
}

}  // namespace zsparse
