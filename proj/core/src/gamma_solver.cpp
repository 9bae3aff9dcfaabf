#include "zsparse/gamma_solver.hpp"

#include "zsparse/errors.hpp"
#include "zsparse/exponent_arith.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace zsparse {

// ---- affine families ----

AffineFamily AffineFamily::parse(const std::string& text) {
  GroupFormula f = parse_formula(text + " = 0");
  if (f.kind() != NodeKind::Atom) throw DomainError("malformed family '" + text + "'");
  const LinearTerm& t = f.atom().term;
  for (const auto& v : t.variables()) {
    if (v != "a") throw DomainError("family '" + text + "' may only mention the set element a");
  }
  AffineFamily fam{t.constant(), t.coefficient("a")};
  if (fam.slope == 0) throw DomainError("family '" + text + "' needs a nonzero slope");
  return fam;
}

std::string AffineFamily::to_string() const {
  return LinearTerm::variable("a", slope).operator+(LinearTerm(offset)).to_string();
}

bool AffineFamily::contains(const Integer& z, const SparseSet& p) const {
  Integer diff = z - offset;
  if (diff % slope != 0) return false;
  return p.contains(diff / slope);
}

namespace {

// Integers in scan order: 0, 1, -1, 2, -2, ...
Integer scan_value(std::uint64_t i) {
  Integer k = from_u64((i + 1) / 2);
  return i % 2 == 1 ? k : Integer(-k);
}

// Index in a sparse set beyond which consecutive gaps never shrink.
std::size_t gap_monotone_from(const SparseSet& p) {
  return std::holds_alternative<Factorials>(p.kind()) ? 1 : 0;
}

// Bound on |offset + slope*a| below which the family can be dense relative to `gap`.
Integer thin_beyond(const AffineFamily& f, const SparseSet& p, const Integer& gap) {
  Integer top;
  if (auto n = p.size()) {
    top = *n == 0 ? Integer(0) : p.nth_element(*n - 1);
  } else {
    const Integer slope = abs(f.slope);
    std::size_t j = gap_monotone_from(p);
    Integer cur = p.nth_element(j);
    for (;;) {
      Integer next = p.nth_element(j + 1);
      if (slope * (next - cur) > gap) break;
      cur = std::move(next);
      ++j;
    }
    top = cur;
  }
  return abs(f.offset) + abs(f.slope) * top;
}

}  // namespace

CoverReport covers_coset(const std::vector<AffineFamily>& families, const Coset& coset, const SparseSet& p,
                         const ScanOptions& options) {
  if (coset.modulus < 1) throw DomainError("coset modulus must be >= 1");
  for (const auto& f : families) {
    if (f.slope == 0) throw DomainError("family slopes must be nonzero");
  }
  CoverReport rep;
  const Integer n = from_u64(coset.modulus);
  const std::uint64_t fams = families.size();
  const Integer gap = n * from_u64(fams + 1);
  rep.threshold = 0;
  for (const auto& f : families) rep.threshold = std::max(rep.threshold, thin_beyond(f, p, gap));
  Integer within = rep.threshold / n + 1;
  rep.scan_bound = fits_u64(within) ? 2 * to_u64(within) + 2 * (fams + 1) : UINT64_MAX;

  // coset members in scan order
  Integer up = floor_mod(coset.residue, coset.modulus) == 0 ? Integer(0) : from_u64(floor_mod(coset.residue, coset.modulus));
  Integer down = up - n;
  for (std::uint64_t i = 0; i < options.max_candidates; ++i) {
    Integer z;
    if (abs(up) <= abs(down)) {
      z = up;
      up += n;
    } else {
      z = down;
      down -= n;
    }
    ++rep.inspected;
    bool hit = std::any_of(families.begin(), families.end(), [&](const AffineFamily& f) { return f.contains(z, p); });
    if (hit) continue;
    rep.witness = z;
    for (const auto& f : families) {
      Integer diff = z - f.offset;
      if (diff % f.slope != 0) {
        rep.certificates.push_back(f.to_string() + ": (" + to_string(z) + " - " + to_string(f.offset) + ")/" +
                                   to_string(f.slope) + " is not an integer");
      } else {
        rep.certificates.push_back(f.to_string() + ": a = " + to_string(diff / f.slope) + " is not in " + p.describe());
      }
    }
    return rep;
  }
  throw DomainError("covers_coset: no witness among " + std::to_string(options.max_candidates) +
                    " coset elements; the set does not behave sparsely");
}

// ---- gamma ----

namespace {

struct LinAtom {
  AtomKind kind;
  Integer cy, ca, d;
  std::uint64_t n = 0;
};

void collect(const GroupFormula& f, std::vector<Atom>& out) {
  if (f.kind() == NodeKind::Atom) out.push_back(f.atom());
  for (const auto& c : f.children()) collect(c, out);
}

bool eval_with(const GroupFormula& f, const std::function<bool(const Atom&)>& atom) {
  switch (f.kind()) {
    case NodeKind::True:
      return true;
    case NodeKind::False:
      return false;
    case NodeKind::Atom:
      return atom(f.atom());
    case NodeKind::Not:
      return !eval_with(f.child(), atom);
    case NodeKind::And:
      for (const auto& c : f.children()) {
        if (!eval_with(c, atom)) return false;
      }
      return true;
    case NodeKind::Or:
      for (const auto& c : f.children()) {
        if (eval_with(c, atom)) return true;
      }
      return false;
    case NodeKind::Quantified:
      break;
  }
  throw DomainError("gamma: template must be quantifier-free");
}

struct Prepared {
  GroupFormula phi;  // parameters substituted
  std::string y, a;
  std::vector<Atom> atoms;
  std::uint64_t modulus = 1;
  ResidueStructure rs;

  LinAtom lin(const Atom& at) const {
    return LinAtom{at.kind, at.term.coefficient(y), at.term.coefficient(a), at.term.constant(), at.modulus};
  }

  bool holds(const Integer& yv, const Integer& av) const {
    Assignment asg{{y, yv}, {a, av}};
    return eval_with(phi, [&](const Atom& at) { return at.holds(asg); });
  }

  // Equality atoms involving a generic side are false (disequalities true);
  // everything else is evaluated at the given values.
  bool holds_generic(const Integer& yv, const Integer& av, bool y_generic, bool alpha_generic) const {
    return eval_with(phi, [&](const Atom& at) {
      const LinAtom l = lin(at);
      const Integer value = l.cy * yv + l.ca * av + l.d;
      if (l.kind == AtomKind::CongruenceZero) return floor_mod(value, l.n) == 0;
      if ((y_generic && l.cy != 0) || (alpha_generic && l.ca != 0)) return l.kind == AtomKind::Neq0;
      return (l.kind == AtomKind::Eq0) == (value == 0);
    });
  }
};

Prepared prepare(const GammaInstance& g) {
  if (std::holds_alternative<IteratedPowers>(g.set.kind())) {
    throw DomainError("gamma: iterated power towers have no residue model");
  }
  if (!g.clause.is_quantifier_free()) throw DomainError("gamma: template outside the supported fragment (quantifiers)");
  Prepared p;
  p.y = g.y;
  p.a = g.alpha;
  p.phi = g.clause;
  for (const auto& [name, value] : g.params) p.phi = substitute(p.phi, name, value);
  for (const auto& v : p.phi.free_variables()) {
    if (v != g.y && v != g.alpha) {
      throw DomainError("gamma: template outside the supported fragment (unassigned parameter " + v + ")");
    }
  }
  collect(p.phi, p.atoms);
  for (const auto& at : p.atoms) {
    if (at.kind == AtomKind::CongruenceZero) p.modulus = lcm_u64(p.modulus, at.modulus);
  }
  p.rs = *residue_structure(g.set, p.modulus);
  return p;
}

std::optional<Integer> exact_div(const Integer& num, const Integer& den) {
  if (den == 0 || num % den != 0) return std::nullopt;
  return Integer(num / den);
}

// Exact decision for one candidate, returning a failing instance if any.
std::optional<Integer> counterexample(const Prepared& p, const SparseSet& set, const Integer& yv) {
  auto d = decide_forall_in_set(substitute(p.phi, p.y, yv), p.a, set);
  if (!d) throw DomainError("gamma: set has no residue model");
  return d->holds ? std::nullopt : d->counterexample;
}

// Instances a_1..a_k with no common y, grown from counterexamples.
std::vector<Integer> inconsistent_subsystem(const Prepared& p, const SparseSet& set, const std::vector<Integer>& seeds) {
  std::vector<Integer> inst;
  for (const auto& s : seeds) {
    if (std::find(inst.begin(), inst.end(), s) == inst.end()) inst.push_back(s);
  }
  for (int round = 0; round < 256; ++round) {
    // A finite conjunction in y is decided by its tight points plus one period
    // of generic values beyond them.
    std::set<Integer> cands;
    Integer bound = 0;
    for (const auto& at : p.atoms) {
      const LinAtom l = p.lin(at);
      if (l.kind == AtomKind::CongruenceZero || l.cy == 0) continue;
      std::vector<Integer> nums{-l.d};
      if (l.ca != 0) {
        nums.clear();
        for (const auto& av : inst) nums.push_back(-(l.ca * av + l.d));
      }
      for (const auto& num : nums) {
        if (auto y0 = exact_div(num, l.cy)) {
          cands.insert(*y0);
          if (abs(*y0) > bound) bound = abs(*y0);
        }
      }
    }
    for (std::uint64_t k = 1; k <= p.modulus; ++k) cands.insert(bound + from_u64(k));
    std::optional<Integer> found;
    for (const auto& yv : cands) {
      if (std::all_of(inst.begin(), inst.end(), [&](const Integer& av) { return p.holds(yv, av); })) {
        found = yv;
        break;
      }
    }
    if (!found) return inst;
    auto ce = counterexample(p, set, *found);
    if (!ce) return {};
    inst.push_back(*ce);
  }
  return {};
}

bool subsystem_is_inconsistent(const Prepared& p, const std::vector<Integer>& inst) {
  std::vector<GroupFormula> parts;
  for (const auto& av : inst) parts.push_back(substitute(p.phi, p.a, av));
  GroupFormula sys = GroupFormula::quantified(Quantifier::Exists, p.y, false, GroupFormula::conjunction(parts));
  GroupFormula ground = eliminate_integer_quantifiers(sys);
  return !eval_with(ground, [](const Atom& at) { return at.holds({}); });
}

}  // namespace

VerificationTrace verify_gamma_witness(const GammaInstance& g, const Integer& c, std::size_t direct) {
  const Prepared p = prepare(g);
  VerificationTrace tr;
  tr.passed = true;
  for (const auto& av : g.set.prefix(direct)) {
    ++tr.direct_instances;
    if (!p.holds(c, av)) {
      tr.passed = false;
      tr.certificates.push_back("direct: fails at a = " + to_string(av));
      return tr;
    }
  }
  tr.certificates.push_back("direct: holds on the first " + std::to_string(tr.direct_instances) + " elements");
  // Elements where some equality atom can be tight for y = c, checked by membership.
  std::set<Integer> special(p.rs.transient.begin(), p.rs.transient.end());
  for (const auto& at : p.atoms) {
    const LinAtom l = p.lin(at);
    if (l.kind == AtomKind::CongruenceZero || l.ca == 0) continue;
    auto a0 = exact_div(-(l.cy * c + l.d), l.ca);
    if (a0 && g.set.contains(*a0)) special.insert(*a0);
  }
  for (const auto& av : special) {
    if (!p.holds(c, av)) {
      tr.passed = false;
      tr.certificates.push_back("special instance a = " + to_string(av) + " fails");
      return tr;
    }
  }
  tr.certificates.push_back(std::to_string(special.size()) + " special instances hold");
  // Every other element has a recurrent residue and only generic equality atoms.
  for (auto s : p.rs.recurrent) {
    if (!p.holds_generic(c, from_u64(s), false, true)) {
      tr.passed = false;
      tr.certificates.push_back("generic instances with a = " + std::to_string(s) + " (mod " +
                                std::to_string(p.modulus) + ") fail");
      return tr;
    }
  }
  tr.certificates.push_back("generic instances hold for all " + std::to_string(p.rs.recurrent.size()) +
                            " recurrent residues mod " + std::to_string(p.modulus));
  return tr;
}

GammaReport gamma_sat(const GammaInstance& g, const ScanOptions& options) {
  const Prepared p = prepare(g);
  const std::uint64_t L = p.modulus;

  // Fixed instances: transient elements and elements pinned by a-only equalities.
  std::set<Integer> fixed(p.rs.transient.begin(), p.rs.transient.end());
  for (const auto& at : p.atoms) {
    const LinAtom l = p.lin(at);
    if (l.kind != AtomKind::CongruenceZero && l.cy == 0 && l.ca != 0) {
      auto a0 = exact_div(-l.d, l.ca);
      if (a0 && g.set.contains(*a0)) fixed.insert(*a0);
    }
  }
  // Values of y where an equality atom is tight against a fixed instance.
  std::set<Integer> points;
  for (const auto& at : p.atoms) {
    const LinAtom l = p.lin(at);
    if (l.kind == AtomKind::CongruenceZero || l.cy == 0) continue;
    if (l.ca == 0) {
      if (auto y0 = exact_div(-l.d, l.cy)) points.insert(*y0);
    } else {
      for (const auto& t : fixed) {
        if (auto y0 = exact_div(-(l.ca * t + l.d), l.cy)) points.insert(*y0);
      }
    }
  }
  // Residues r for which a generic y = r (mod L) satisfies every instance.
  std::vector<bool> good(L, false);
  bool any_good = false;
  for (std::uint64_t r = 0; r < L; ++r) {
    const Integer yr = from_u64(r);
    bool ok = std::all_of(p.rs.recurrent.begin(), p.rs.recurrent.end(),
                          [&](std::uint64_t s) { return p.holds_generic(yr, from_u64(s), true, true); });
    ok = ok && std::all_of(fixed.begin(), fixed.end(), [&](const Integer& t) { return p.holds_generic(yr, t, true, false); });
    good[r] = ok;
    any_good = any_good || ok;
  }

  GammaReport rep;
  auto accept = [&](const Integer& c) {
    rep.status = GammaReport::Status::Witness;
    rep.witness = c;
    rep.verification = verify_gamma_witness(g, c);
    if (!rep.verification.passed) throw DomainError("gamma: witness " + to_string(c) + " failed verification");
    return rep;
  };

  if (any_good) {
    for (std::uint64_t i = 0; rep.candidates_checked < options.max_candidates; ++i) {
      Integer c = scan_value(i);
      if (!good[floor_mod(c, L)] && !points.count(c)) continue;
      ++rep.candidates_checked;
      if (!counterexample(p, g.set, c)) return accept(c);
    }
    throw DomainError("gamma: scan cap of " + std::to_string(options.max_candidates) + " candidates exceeded");
  }

  // Only the finitely many tight points can work.
  std::vector<Integer> ordered(points.begin(), points.end());
  std::sort(ordered.begin(), ordered.end(), [](const Integer& x, const Integer& y) {
    if (abs(x) != abs(y)) return abs(x) < abs(y);
    return x > y;
  });
  std::vector<Integer> seeds;
  for (const auto& c : ordered) {
    ++rep.candidates_checked;
    auto ce = counterexample(p, g.set, c);
    if (!ce) return accept(c);
    seeds.push_back(*ce);
  }
  rep.status = GammaReport::Status::Unsat;
  rep.reason = "no residue class mod " + std::to_string(L) + " is generically consistent and none of the " +
               std::to_string(ordered.size()) + " candidate points satisfies every instance";
  rep.inconsistent_instances = inconsistent_subsystem(p, g.set, seeds);
  rep.subsystem_verified = !rep.inconsistent_instances.empty() && subsystem_is_inconsistent(p, rep.inconsistent_instances);
  if (rep.subsystem_verified) {
    // drop instances the contradiction does not need
    auto& core = rep.inconsistent_instances;
    for (std::size_t i = core.size(); i-- > 0 && core.size() > 1;) {
      std::vector<Integer> fewer = core;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (subsystem_is_inconsistent(p, fewer)) core = std::move(fewer);
    }
  }
  return rep;
}

GammaInstance make_gamma_instance(const std::string& clause, const std::string& params, const SparseSet& set) {
  GammaInstance g;
  g.clause = parse_formula(clause);
  g.set = set;
  std::istringstream in(params);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("parameter '" + item + "' is not of the form name=value");
    g.params[item.substr(0, eq)] = parse_integer(item.substr(eq + 1));
  }
  return g;
}

SentenceResult eval_bounded_sentence(const GroupFormula& sentence, const Assignment& assignment, const SparseSet& p,
                                     std::size_t depth) {
  SentenceResult out;
  const GroupFormula& f = sentence;
  auto gamma_shape = [&](Quantifier outer, Quantifier inner) {
    return f.kind() == NodeKind::Quantified && !f.bounded() && f.quantifier() == outer &&
           f.body().kind() == NodeKind::Quantified && f.body().bounded() && f.body().quantifier() == inner &&
           f.body().body().is_quantifier_free() && !std::holds_alternative<IteratedPowers>(p.kind());
  };
  const bool direct = gamma_shape(Quantifier::Exists, Quantifier::Forall);
  const bool dual = gamma_shape(Quantifier::Forall, Quantifier::Exists);
  if (direct || dual) {
    GammaInstance g;
    g.y = f.variable();
    g.alpha = f.body().variable();
    g.clause = direct ? f.body().body() : GroupFormula::negation(f.body().body());
    g.set = p;
    for (const auto& v : g.clause.free_variables()) {
      if (v == g.y || v == g.alpha) continue;
      auto it = assignment.find(v);
      if (it == assignment.end()) throw DomainError("unassigned free variable: " + v);
      g.params[v] = it->second;
    }
    GammaReport rep = gamma_sat(g);
    const bool sat = rep.status == GammaReport::Status::Witness;
    out.method = "gamma";
    out.result.value = truth_of(direct ? sat : !sat);
    out.result.notes.push_back(sat ? "gamma_sat witness y = " + to_string(*rep.witness)
                                   : "gamma_sat: " + rep.reason);
    out.gamma = std::move(rep);
    return out;
  }
  EvalOptions opt;
  opt.p_depth = depth;
  out.method = "evaluate";
  out.result = evaluate(sentence, assignment, p, opt);
  return out;
}

}  // namespace zsparse
