#include "zsparse/errors.hpp"
#include "zsparse/exponent_arith.hpp"
#include "zsparse/formula.hpp"

#include <algorithm>
#include <set>

namespace zsparse {
namespace {

void collect_atoms(const GroupFormula& f, std::vector<Atom>& out) {
  if (f.kind() == NodeKind::Atom) {
    out.push_back(f.atom());
    return;
  }
  for (const auto& c : f.children()) collect_atoms(c, out);
}

bool eval_qf(const GroupFormula& f, const Assignment& env) {
  switch (f.kind()) {
    case NodeKind::True:
      return true;
    case NodeKind::False:
      return false;
    case NodeKind::Atom:
      return f.atom().holds(env);
    case NodeKind::Not:
      return !eval_qf(f.child(), env);
    case NodeKind::And:
      return std::all_of(f.children().begin(), f.children().end(), [&](const auto& c) { return eval_qf(c, env); });
    case NodeKind::Or:
      return std::any_of(f.children().begin(), f.children().end(), [&](const auto& c) { return eval_qf(c, env); });
    case NodeKind::Quantified:
      throw DomainError("expected a quantifier-free formula");
  }
  return false;
}

GroupFormula close_over(GroupFormula f, const Assignment& env) {
  for (const auto& v : f.free_variables()) {
    auto it = env.find(v);
    if (it != env.end()) f = substitute(f, v, it->second);
  }
  return f;
}

class Evaluator {
 public:
  Evaluator(const SparseSet& p, const EvalOptions& opt) : p_(p), opt_(opt) {}

  Truth eval(const GroupFormula& f, Assignment& env) {
    switch (f.kind()) {
      case NodeKind::True:
        return Truth::True;
      case NodeKind::False:
        return Truth::False;
      case NodeKind::Atom:
        return truth_of(f.atom().holds(env));
      case NodeKind::Not:
        return kleene_not(eval(f.child(), env));
      case NodeKind::And: {
        Truth acc = Truth::True;
        for (const auto& c : f.children()) {
          acc = kleene_and(acc, eval(c, env));
          if (acc == Truth::False) break;
        }
        return acc;
      }
      case NodeKind::Or: {
        Truth acc = Truth::False;
        for (const auto& c : f.children()) {
          acc = kleene_or(acc, eval(c, env));
          if (acc == Truth::True) break;
        }
        return acc;
      }
      case NodeKind::Quantified:
        return f.bounded() ? eval_bounded(f, env) : eval_integer(f, env);
    }
    return Truth::Unknown;
  }

  std::vector<std::string> notes() const { return {notes_.begin(), notes_.end()}; }

 private:
  Truth eval_integer(const GroupFormula& f, Assignment& env) {
    if (!has_bounded_quantifier(f.body())) {
      GroupFormula closed = close_over(f, env);
      GroupFormula reduced = eliminate_integer_quantifiers(closed);
      notes_.insert("integer quantifier on " + f.variable() + " eliminated exactly");
      return truth_of(eval_qf(reduced, {}));
    }
    if (!opt_.integer_range) {
      throw DomainError("quantifier on " + f.variable() +
                        " ranges over Z and its body mentions P; an explicit integer range is required");
    }
    const Integer r = abs(*opt_.integer_range);
    const bool exists = f.quantifier() == Quantifier::Exists;
    const Truth decisive = exists ? Truth::True : Truth::False;
    auto saved = env.find(f.variable()) == env.end() ? std::nullopt : std::optional<Integer>(env[f.variable()]);
    Truth result = Truth::Unknown;
    for (Integer z = 0; z <= r && result != decisive; ++z) {
      for (int sign : {1, -1}) {
        if (sign < 0 && z == 0) continue;
        env[f.variable()] = z * sign;
        if (eval(f.body(), env) == decisive) {
          result = decisive;
          break;
        }
      }
    }
    restore(env, f.variable(), saved);
    notes_.insert("integer quantifier on " + f.variable() + " checked on [-" + to_string(r) + ", " + to_string(r) +
                  "] only");
    return result;
  }

  Truth eval_bounded(const GroupFormula& f, Assignment& env) {
    const std::string& x = f.variable();
    const bool exists = f.quantifier() == Quantifier::Exists;
    GroupFormula body = f.body();
    {
      Assignment outer = env;
      outer.erase(x);
      GroupFormula closed = close_over(body, outer);
      if (!has_bounded_quantifier(closed)) {
        GroupFormula reduced = eliminate_integer_quantifiers(closed);
        auto fv = reduced.free_variables();
        if (fv.empty() || (fv.size() == 1 && *fv.begin() == x)) {
          GroupFormula pred = exists ? GroupFormula::negation(reduced) : reduced;
          if (auto d = decide_forall_in_set(pred, x, p_)) {
            notes_.insert("P-quantifier on " + x + " decided exactly on " + std::to_string(d->inspected) +
                          (d->inspected == 1 ? " element of " : " elements of ") + p_.describe() + " (residues periodic beyond " +
                          to_string(d->largest_inspected) + ")");
            return truth_of(exists ? !d->holds : d->holds);
          }
        }
      }
    }
    const Truth decisive = exists ? Truth::True : Truth::False;
    auto saved = env.find(x) == env.end() ? std::nullopt : std::optional<Integer>(env[x]);
    auto elems = p_.prefix(opt_.p_depth);
    bool complete = p_.size() && elems.size() == *p_.size();
    Truth result = complete ? kleene_not(decisive) : Truth::Unknown;
    bool saw_unknown = false;
    for (const auto& e : elems) {
      env[x] = e;
      Truth t = eval(body, env);
      if (t == decisive) {
        result = decisive;
        saw_unknown = false;
        break;
      }
      if (t == Truth::Unknown) saw_unknown = true;
    }
    if (saw_unknown) result = Truth::Unknown;
    restore(env, x, saved);
    if (result != decisive) {
      notes_.insert("P-quantifier on " + x + " inspected " + std::to_string(elems.size()) +
                    (elems.size() == 1 ? " element" : " elements") +
                    (complete ? " (the whole set)" : "; undecided beyond depth"));
    }
    return result;
  }

  static void restore(Assignment& env, const std::string& x, const std::optional<Integer>& saved) {
    if (saved) {
      env[x] = *saved;
    } else {
      env.erase(x);
    }
  }

  const SparseSet& p_;
  const EvalOptions& opt_;
  std::set<std::string> notes_;
};

}  // namespace

std::optional<SetDecision> decide_forall_in_set(const GroupFormula& body, const std::string& var,
                                                const SparseSet& p) {
  if (!body.is_quantifier_free()) throw DomainError("decide_forall_in_set: body must be quantifier-free");
  for (const auto& v : body.free_variables()) {
    if (v != var) throw DomainError("decide_forall_in_set: unexpected free variable " + v);
  }
  std::vector<Atom> atoms;
  collect_atoms(body, atoms);
  std::uint64_t modulus = 1;
  Integer cutoff = 0;
  for (const auto& a : atoms) {
    if (a.kind == AtomKind::CongruenceZero) {
      modulus = lcm_u64(modulus, a.modulus);
    } else if (a.term.coefficient(var) != 0) {
      Integer d = abs(a.term.constant());
      if (d > cutoff) cutoff = d;
    }
  }
  auto sample = decisive_sample(p, modulus, cutoff);
  if (!sample) return std::nullopt;
  SetDecision out;
  out.holds = true;
  Assignment env;
  for (const auto& e : sample->elements) {
    env[var] = e;
    ++out.inspected;
    out.largest_inspected = e;
    if (!eval_qf(body, env)) {
      out.holds = false;
      out.counterexample = e;
      break;
    }
  }
  return out;
}

EvalResult evaluate(const GroupFormula& f, const Assignment& assignment, const SparseSet& p,
                    const EvalOptions& options) {
  for (const auto& v : f.free_variables()) {
    if (!assignment.count(v)) throw DomainError("unassigned free variable: " + v);
  }
  Evaluator ev(p, options);
  Assignment env = assignment;
  EvalResult out;
  out.value = ev.eval(f, env);
  out.notes = ev.notes();
  return out;
}

}  // namespace zsparse
