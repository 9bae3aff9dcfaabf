#include "commands.hpp"

#include "CLI11.hpp"
#include "json_io.hpp"
#include "zsparse/errors.hpp"
#include "zsparse/induced_theory.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <sstream>

namespace zsparse::cli {

std::pair<std::uint64_t, Integer> parse_integer_pair(const std::string& text);

namespace {

const CLI::Validator kNonEmpty(
    [](std::string& s) { return s.find_first_not_of(" \t") == std::string::npos ? std::string("must not be empty") : std::string(); },
    "NONEMPTY");

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    Integer v = parse_integer(item);
    if (!fits_u64(v)) throw DomainError("'" + item + "' is not a nonnegative 64-bit integer");
    out.push_back(to_u64(v));
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

Assignment parse_assignment(const std::string& text) {
  Assignment asg;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("assignment '" + item + "' is not of the form name=value");
    asg[item.substr(0, eq)] = parse_integer(item.substr(eq + 1));
  }
  return asg;
}

std::uint64_t powers_base(const SparseSet& s, const char* what) {
  if (const auto* p = std::get_if<Powers>(&s.kind())) return p->base;
  throw DomainError(std::string(what) + " needs a powers:q set");
}

// ---- solve ----

struct SolveOpts {
  std::string set, eq;
  std::size_t bound = 12;
};

std::vector<std::vector<Integer>> sorted(std::vector<std::vector<Integer>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Outcome do_solve(const SolveOpts& o, const Globals& g) {
  Outcome out;
  const SparseSet set = SparseSet::parse(o.set);
  const EquationSpec eq = EquationSpec::parse(o.eq);
  out.inputs = {{"set", set.describe()}, {"equation", eq.to_string()}};
  BruteForceOptions bf;
  bf.jobs = g.jobs;
  if (const auto* p = std::get_if<Powers>(&set.kind())) {
    const auto fams = solve_powers(eq, p->base);
    json list = json::array();
    for (const auto& f : fams) list.push_back(to_json(f));
    out.result = {{"method", "scale_orbit_families"},
                  {"families", list},
                  {"empty", fams.empty()},
                  {"spread_bound", std::to_string(exponent_spread_bound(eq, p->base))}};
    if (g.verify) {
      std::set<std::vector<Integer>> described;
      const Integer q = from_u64(p->base);
      for (const auto& f : fams) {
        for (const auto& e : f.members(o.bound)) {
          std::vector<Integer> t;
          for (auto x : e) t.push_back(pow(q, static_cast<unsigned long>(x)));
          described.insert(t);
        }
      }
      const auto brute = brute_force_solutions(eq, set, o.bound, bf);
      const bool match = std::set<std::vector<Integer>>(brute.begin(), brute.end()) == described;
      out.verify = {{"oracle", "brute_force"}, {"element_bound", o.bound}, {"solutions", brute.size()}, {"match", match}};
    }
  } else if (std::holds_alternative<Factorials>(set.kind())) {
    const auto d = solve_factorials(eq);
    out.result = to_json(d);
    out.result["method"] = "factorial_partitions";
    if (g.verify) {
      const std::size_t max_index = std::min<std::size_t>(o.bound, 8);
      const auto brute = sorted(brute_force_solutions(eq, set, max_index + 1, bf));
      const bool match = brute == d.materialize(max_index);
      out.verify = {{"oracle", "brute_force"}, {"max_index", max_index}, {"solutions", brute.size()}, {"match", match}};
    }
  } else {
    json sols = json::array();
    for (const auto& t : brute_force_solutions(eq, set, o.bound, bf)) sols.push_back(to_json(t));
    out.result = {{"method", "brute_force"}, {"element_bound", o.bound}, {"solutions", sols}};
  }
  return out;
}

// ---- intersect / fac-class ----

json fac_scan(std::uint64_t k, std::uint64_t n, const FacClassResult& r) {
  // every listed element is classified correctly and the tail from the threshold is all in class
  const auto fac = SparseSet::factorials();
  const auto elems = fac.prefix(40);
  const bool cofinite = r.classification == FacClassResult::Classification::Cofinite;
  bool ok = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const bool in = floor_mod(elems[i], n) == k;
    const bool listed = std::find(r.elements.begin(), r.elements.end(), elems[i]) != r.elements.end();
    ok = ok && (cofinite ? in != listed : in == listed);
  }
  return {{"oracle", "direct_scan"}, {"elements", elems.size()}, {"match", ok}};
}

Outcome do_intersect(const std::string& set_text, std::uint64_t k, std::uint64_t n, const Globals& g) {
  Outcome out;
  const SparseSet set = SparseSet::parse(set_text);
  out.inputs = {{"set", set.describe()}, {"residue", std::to_string(k)}, {"modulus", std::to_string(n)}};
  if (const auto* p = std::get_if<Powers>(&set.kind())) {
    const auto cls = power_residue_class(p->base, k, n);
    out.result = to_json(cls);
    if (g.verify) {
      bool ok = true;
      for (std::uint64_t m = 1; m <= 500; ++m) ok = ok && (cls.contains(m) == (pow_mod(p->base, m, n) == k));
      out.verify = {{"oracle", "direct_scan"}, {"exponents", 500}, {"match", ok}};
    }
  } else if (std::holds_alternative<Factorials>(set.kind())) {
    const auto r = fac_residue_class(k, n);
    out.result = to_json(r);
    if (g.verify) out.verify = fac_scan(k, n, r);
  } else {
    throw DomainError("intersect supports powers:q and factorials");
  }
  return out;
}

Outcome do_fac_class(std::uint64_t k, std::uint64_t n, const Globals& g) {
  Outcome out;
  out.inputs = {{"residue", std::to_string(k)}, {"modulus", std::to_string(n)}};
  const auto r = fac_residue_class(k, n);
  out.result = to_json(r);
  if (g.verify) out.verify = fac_scan(k, n, r);
  return out;
}

// ---- induced structure ----

Outcome do_qe(const std::string& text, const Globals& g) {
  Outcome out;
  const NFormula f = parse_nformula(text);
  const NFormula r = qe(f);
  out.inputs = {{"formula", print(f)}};
  json fv = json::array();
  for (const auto& v : f.free_variables()) fv.push_back(v);
  out.result = {{"formula", print(r)}, {"quantifier_free", r.is_quantifier_free()}, {"free_variables", fv}};
  if (g.verify) {
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, 200);
    std::size_t agree = 0, unknown = 0, mismatch = 0;
    for (int i = 0; i < 50; ++i) {
      NAssignment asg;
      for (const auto& v : f.free_variables()) asg[v] = dist(rng);
      Truth t = n_evaluate(f, asg, 200);
      if (t == Truth::Unknown) {
        ++unknown;
      } else if ((t == Truth::True) == n_holds(r, asg)) {
        ++agree;
      } else {
        ++mismatch;
      }
    }
    out.verify = {{"oracle", "bounded_model_check"}, {"assignments", 50}, {"agree", agree},
                  {"unknown", unknown}, {"mismatch", mismatch}, {"match", mismatch == 0}};
  }
  return out;
}

struct TranslateOpts {
  std::string set, eq, congruence;
};

Outcome do_translate(const TranslateOpts& o, const Globals& g) {
  Outcome out;
  const SparseSet set = SparseSet::parse(o.set);
  const std::uint64_t q = powers_base(set, "translate");
  if (o.eq.empty() == o.congruence.empty()) throw DomainError("translate needs exactly one of --eq and --congruence");
  out.inputs = {{"set", set.describe()}};
  if (!o.eq.empty()) {
    const EquationSpec eq = EquationSpec::parse(o.eq);
    out.inputs["equation"] = eq.to_string();
    const NFormula f = translate_equation(eq, q);
    out.result = {{"formula", print(f)}};
    if (g.verify) {
      // every exponent tuple in [1,12]^n: formula truth equals equation truth
      const std::size_t n = eq.arity();
      std::vector<std::uint64_t> e(n, 1);
      bool ok = true;
      std::size_t checked = 0;
      for (;;) {
        NAssignment asg;
        std::vector<Integer> xs;
        for (std::size_t i = 0; i < n; ++i) {
          asg[eq.names[i]] = e[i];
          xs.push_back(pow(from_u64(q), static_cast<unsigned long>(e[i])));
        }
        ok = ok && n_holds(f, asg) == eq.satisfied_by(xs);
        ++checked;
        std::size_t i = 0;
        while (i < n && e[i] == 12) e[i++] = 1;
        if (i == n) break;
        ++e[i];
      }
      out.verify = {{"oracle", "exponent_grid"}, {"max_exponent", 12}, {"tuples", checked}, {"match", ok}};
    }
  } else {
    std::istringstream in(o.congruence);
    std::string c, d, l;
    if (!std::getline(in, c, ',') || !std::getline(in, d, ',') || !std::getline(in, l)) {
      throw DomainError("--congruence expects \"c,d,l\" for c*x + d = 0 (mod l)");
    }
    const Integer ci = parse_integer(c), di = parse_integer(d);
    const std::uint64_t li = parse_u64_list(l).front();
    out.inputs["congruence"] = {{"c", to_json(ci)}, {"d", to_json(di)}, {"l", std::to_string(li)}};
    const NFormula f = translate_congruence(ci, di, li, q);
    out.result = {{"formula", print(f)}};
    if (g.verify) {
      bool ok = true;
      for (std::uint64_t m = 1; m <= 500; ++m) {
        const bool direct = floor_mod(ci * pow(from_u64(q), static_cast<unsigned long>(m)) + di, li) == 0;
        ok = ok && n_holds(f, {{"x", m}}) == direct;
      }
      out.verify = {{"oracle", "direct_scan"}, {"exponents", 500}, {"match", ok}};
    }
  }
  return out;
}

Outcome do_types(const std::string& moduli, const Globals& g) {
  Outcome out;
  const auto ms = parse_u64_list(moduli);
  out.inputs = {{"moduli", u64s(ms)}};
  const std::uint64_t count = count_types(ms);
  out.result = {{"count", std::to_string(count)}};
  if (g.verify) {
    std::uint64_t l = 1;
    for (auto m : ms) l = lcm_u64(l, m);
    std::set<std::vector<std::uint64_t>> signatures;
    for (std::uint64_t r = 0; r < l && l <= 10'000'000; ++r) {
      std::vector<std::uint64_t> sig;
      for (auto m : ms) sig.push_back(r % m);
      signatures.insert(std::move(sig));
    }
    out.verify = {{"oracle", "residue_signatures"}, {"period", std::to_string(l)}, {"match", signatures.size() == count}};
  }
  return out;
}

// ---- gamma machinery ----

struct CoversOpts {
  std::string set = "powers:2", families, coset;
};

Outcome do_covers(const CoversOpts& o, const Globals& g) {
  Outcome out;
  const SparseSet set = SparseSet::parse(o.set);
  std::vector<AffineFamily> fams;
  std::istringstream in(o.families);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.find_first_not_of(" \t") != std::string::npos) fams.push_back(AffineFamily::parse(item));
  }
  const auto nm = parse_integer_pair(o.coset);
  Coset coset{nm.first, nm.second};
  json fj = json::array();
  for (const auto& f : fams) fj.push_back(f.to_string());
  out.inputs = {{"set", set.describe()}, {"families", fj},
                {"coset", {{"modulus", std::to_string(coset.modulus)}, {"residue", to_json(coset.residue)}}}};
  const CoverReport rep = covers_coset(fams, coset, set);
  out.result = to_json(rep);
  if (g.verify) {
    // membership re-derived from an explicit prefix of the set
    bool ok = floor_mod(rep.witness - coset.residue, coset.modulus) == 0;
    for (const auto& f : fams) {
      Integer diff = rep.witness - f.offset;
      if (diff % f.slope != 0) continue;
      const Integer a = diff / f.slope;
      for (std::size_t i = 0;; ++i) {
        if (set.size() && i >= *set.size()) break;
        Integer e = set.nth_element(i);
        if (e == a) ok = false;
        if (e > a) break;
      }
    }
    out.verify = {{"oracle", "prefix_membership"}, {"match", ok}, {"within_scan_bound", rep.inspected <= rep.scan_bound}};
  }
  return out;
}

struct GammaOpts {
  std::string set = "powers:2", clause, params;
};

Outcome do_gamma(const GammaOpts& o, const Globals& g) {
  Outcome out;
  const SparseSet set = SparseSet::parse(o.set);
  const GammaInstance inst = make_gamma_instance(o.clause, o.params, set);
  json pj = json::object();
  for (const auto& [k, v] : inst.params) pj[k] = to_json(v);
  out.inputs = {{"set", set.describe()}, {"clause", print(inst.clause)}, {"params", pj}};
  const GammaReport rep = gamma_sat(inst);
  out.result = to_json(rep);
  if (g.verify) {
    if (rep.status == GammaReport::Status::Witness) {
      const auto tr = verify_gamma_witness(inst, *rep.witness, 50);
      out.verify = {{"oracle", "independent_verifier"}, {"match", tr.passed}, {"direct_instances", tr.direct_instances}};
    } else {
      out.verify = {{"oracle", "integer_qe_on_subsystem"}, {"match", rep.subsystem_verified}};
    }
  }
  return out;
}

struct EvalOpts {
  std::string sentence, set = "powers:2", assign;
  std::string range;
};

Outcome do_eval(const EvalOpts& o, const Globals& g) {
  Outcome out;
  const SparseSet set = SparseSet::parse(o.set);
  const GroupFormula f = parse_formula(o.sentence);
  const Assignment asg = parse_assignment(o.assign);
  out.inputs = {{"sentence", print(f)}, {"set", set.describe()}, {"depth", g.depth}};
  SentenceResult r;
  if (!o.range.empty()) {
    EvalOptions opt;
    opt.p_depth = g.depth;
    opt.integer_range = parse_integer(o.range);
    r.method = "evaluate";
    r.result = evaluate(f, asg, set, opt);
  } else {
    r = eval_bounded_sentence(f, asg, set, g.depth);
  }
  out.result = {{"value", to_string(r.result.value)}, {"method", r.method}, {"notes", r.result.notes}};
  if (r.gamma) out.result["gamma"] = to_json(*r.gamma);
  if (g.verify && r.gamma) {
    const GammaReport& gr = *r.gamma;
    const bool ok = gr.status == GammaReport::Status::Witness ? gr.verification.passed : gr.subsystem_verified;
    out.verify = {{"oracle", gr.status == GammaReport::Status::Witness ? "independent_verifier" : "inconsistent_subsystem"},
                  {"match", ok}};
  } else if (g.verify) {
    // a definite answer must survive a deeper bounded check
    EvalOptions deeper;
    deeper.p_depth = 2 * g.depth;
    if (!o.range.empty()) deeper.integer_range = parse_integer(o.range);
    Truth t = evaluate(f, asg, set, deeper).value;
    const bool ok = t == Truth::Unknown || r.result.value == Truth::Unknown || t == r.result.value;
    out.verify = {{"oracle", "deeper_bounded_evaluation"}, {"depth", deeper.p_depth}, {"value", to_string(t)}, {"match", ok}};
  }
  return out;
}

// ---- lattices ----

struct LatticeOpts {
  std::size_t rank = 2;
  std::string gens;
};

Outcome do_smith(const LatticeOpts& o, const Globals& g) {
  Outcome out;
  const IntegerLattice l = IntegerLattice::parse(o.rank, o.gens);
  out.inputs = {{"rank", o.rank}, {"generators", o.gens}};
  const AdaptedBasis b = smith_basis(l);
  out.result = to_json(b);
  const auto idx = lattice_index(l);
  out.result["index"] = idx ? to_json(*idx) : json("infinite");
  if (g.verify) {
    IntMatrix z(o.rank, IntVector(o.rank));
    for (std::size_t i = 0; i < o.rank; ++i) {
      for (std::size_t r = 0; r < o.rank; ++r) z[r][i] = b.basis[i][r];
    }
    const Integer det = determinant(z);
    bool chain = true;
    for (std::size_t i = 0; i + 1 < b.divisors.size(); ++i) chain = chain && b.divisors[i + 1] % b.divisors[i] == 0;
    IntegerLattice regen{o.rank, {}};
    for (std::size_t i = 0; i < b.divisors.size(); ++i) {
      IntVector v = b.basis[i];
      for (auto& x : v) x *= b.divisors[i];
      regen.generators.push_back(v);
    }
    bool same = std::all_of(l.generators.begin(), l.generators.end(), [&](const IntVector& v) { return membership(regen, v); }) &&
                std::all_of(regen.generators.begin(), regen.generators.end(), [&](const IntVector& v) { return membership(l, v); });
    out.verify = {{"oracle", "unimodularity_and_regeneration"}, {"determinant", to_json(det)},
                  {"divisibility_chain", chain}, {"regenerates", same}, {"match", abs(det) == 1 && chain && same}};
  }
  return out;
}

Outcome do_charcheck(const LatticeOpts& o, const Globals& g) {
  Outcome out;
  const IntegerLattice l = IntegerLattice::parse(o.rank, o.gens);
  out.inputs = {{"rank", o.rank}, {"generators", o.gens}};
  const auto rep = is_characteristic(l);
  out.result = to_json(rep);
  if (g.verify) {
    bool ok = true;
    if (!rep.invariant) ok = mat_vec(rep.matrix, rep.generator) == rep.image && abs(determinant(rep.matrix)) == 1;
    out.verify = {{"oracle", "matrix_recheck"}, {"match", ok}};
  }
  return out;
}

Outcome do_sparse_check(const std::string& set_text, std::size_t prefix, const Globals& g) {
  Outcome out;
  const SparseSet set = SparseSet::parse(set_text);
  out.inputs = {{"set", set.describe()}, {"prefix", prefix}};
  const GapProfile gp = sparseness_check(set, prefix);
  out.result = to_json(gp);
  if (g.verify) {
    const auto elems = set.prefix(prefix);
    bool ok = gp.gaps.size() + 1 == elems.size();
    for (std::size_t i = 0; ok && i < gp.gaps.size(); ++i) ok = gp.gaps[i] == elems[i + 1] - elems[i];
    out.verify = {{"oracle", "prefix_differences"}, {"match", ok}};
  }
  return out;
}

}  // namespace

void register_commands(CLI::App& app, const Globals& g, Action& action) {
  {
    auto o = std::make_shared<SolveOpts>();
    auto* sub = app.add_subcommand("solve", "Solve k1*x1 + ... + kn*xn = 0 over a sparse set");
    sub->add_option("--set", o->set, "powers:q, factorials, iter:a,b or explicit:v1,v2,...")->required()->check(kNonEmpty);
    sub->add_option("--eq", o->eq, "Comma-separated nonzero coefficients")->required()->check(kNonEmpty);
    sub->add_option("--bound", o->bound, "Oracle grid bound (set elements per coordinate)")->capture_default_str();
    sub->callback([&, o] { action = [&g, o] { return do_solve(*o, g); }; });
  }
  {
    auto set = std::make_shared<std::string>();
    auto k = std::make_shared<std::uint64_t>(0);
    auto n = std::make_shared<std::uint64_t>(2);
    auto* sub = app.add_subcommand("intersect", "Residue class of a sparse set");
    sub->add_option("set", *set, "powers:q or factorials")->required()->check(kNonEmpty);
    sub->add_option("--residue", *k, "Residue k")->required();
    sub->add_option("--mod", *n, "Modulus n >= 2")->required();
    sub->callback([&, set, k, n] { action = [&g, set, k, n] { return do_intersect(*set, *k, *n, g); }; });
  }
  {
    auto k = std::make_shared<std::uint64_t>(0);
    auto n = std::make_shared<std::uint64_t>(2);
    auto* sub = app.add_subcommand("fac-class", "Factorial values in a residue class");
    sub->add_option("--residue", *k, "Residue k")->required();
    sub->add_option("--mod", *n, "Modulus n >= 2")->required();
    sub->callback([&, k, n] { action = [&g, k, n] { return do_fac_class(*k, *n, g); }; });
  }
  {
    auto f = std::make_shared<std::string>();
    auto* sub = app.add_subcommand("qe", "Eliminate quantifiers in the successor structure");
    sub->add_option("formula", *f, "Formula over Q[k,n](t), t = t, t != t")->required()->check(kNonEmpty);
    sub->callback([&, f] { action = [&g, f] { return do_qe(*f, g); }; });
  }
  {
    auto o = std::make_shared<TranslateOpts>();
    auto* sub = app.add_subcommand("translate", "Translate a predicate on powers into the successor structure");
    sub->add_option("--set", o->set, "powers:q")->required()->check(kNonEmpty);
    sub->add_option("--eq", o->eq, "Equation coefficients")->check(kNonEmpty);
    sub->add_option("--congruence", o->congruence, "c,d,l for c*x + d = 0 (mod l)")->check(kNonEmpty);
    sub->callback([&, o] { action = [&g, o] { return do_translate(*o, g); }; });
  }
  {
    auto m = std::make_shared<std::string>();
    auto* sub = app.add_subcommand("types", "Count complete residue types");
    sub->add_option("--moduli", *m, "Comma-separated moduli")->required()->check(kNonEmpty);
    sub->callback([&, m] { action = [&g, m] { return do_types(*m, g); }; });
  }
  {
    auto o = std::make_shared<CoversOpts>();
    auto* sub = app.add_subcommand("covers", "Find a coset element outside finitely many affine families");
    sub->add_option("--set", o->set, "Sparse set")->capture_default_str()->check(kNonEmpty);
    sub->add_option("--families", o->families, "Families k+la separated by ';'");
    sub->add_option("--coset", o->coset, "n,m for nZ + m")->required()->check(kNonEmpty);
    sub->callback([&, o] { action = [&g, o] { return do_covers(*o, g); }; });
  }
  {
    auto o = std::make_shared<GammaOpts>();
    auto* sub = app.add_subcommand("gamma", "Decide whether some y satisfies phi(b, y, a) for every a in the set");
    sub->add_option("--set", o->set, "Sparse set")->capture_default_str()->check(kNonEmpty);
    sub->add_option("--clause", o->clause, "Quantifier-free formula in the parameters, y and a")->required()->check(kNonEmpty);
    sub->add_option("--params", o->params, "Parameter values, e.g. b=3,c=-1");
    sub->callback([&, o] { action = [&g, o] { return do_gamma(*o, g); }; });
  }
  {
    auto o = std::make_shared<EvalOpts>();
    auto* sub = app.add_subcommand("eval", "Evaluate a sentence with P interpreted as a sparse set");
    sub->add_option("sentence", o->sentence, "Formula text")->required()->check(kNonEmpty);
    sub->add_option("--set", o->set, "Interpretation of P")->capture_default_str()->check(kNonEmpty);
    sub->add_option("--assign", o->assign, "Free variable values, e.g. x=3,y=6");
    sub->add_option("--range", o->range, "Search radius for integer quantifiers over bodies mentioning P");
    sub->callback([&, o] { action = [&g, o] { return do_eval(*o, g); }; });
  }
  for (const char* name : {"smith", "charcheck"}) {
    auto o = std::make_shared<LatticeOpts>();
    const bool smith = std::string(name) == "smith";
    auto* sub = app.add_subcommand(name, smith ? "Smith-adapted basis of a subgroup of Z^n"
                                               : "Check invariance of a subgroup of Z^n under its automorphisms");
    sub->add_option("--rank", o->rank, "Ambient dimension n")->required()->check(CLI::PositiveNumber);
    sub->add_option("--gens", o->gens, "Generators, e.g. \"3,0;0,2\"")->required();
    sub->callback([&, o, smith] {
      action = [&g, o, smith] { return smith ? do_smith(*o, g) : do_charcheck(*o, g); };
    });
  }
  {
    auto set = std::make_shared<std::string>();
    auto prefix = std::make_shared<std::size_t>(20);
    auto* sub = app.add_subcommand("sparse-check", "Gap profile of a prefix of a set");
    sub->add_option("set", *set, "Sparse set")->required()->check(kNonEmpty);
    sub->add_option("--prefix", *prefix, "Number of elements (>= 3)")->capture_default_str();
    sub->callback([&, set, prefix] { action = [&g, set, prefix] { return do_sparse_check(*set, *prefix, g); }; });
  }
  {
    auto path = std::make_shared<std::string>();
    auto* sub = app.add_subcommand("corpus", "Run a regression corpus");
    sub->add_option("path", *path, "Corpus file")->required()->check(kNonEmpty);
    sub->callback([&, path] { action = [&g, path] { return run_corpus(*path, g); }; });
  }
}

std::pair<std::uint64_t, Integer> parse_integer_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw DomainError("expected \"n,m\", got '" + text + "'");
  Integer n = parse_integer(text.substr(0, comma));
  if (n < 1 || !fits_u64(n)) throw DomainError("coset modulus must be a positive 64-bit integer");
  return {to_u64(n), parse_integer(text.substr(comma + 1))};
}

}  // namespace zsparse::cli
