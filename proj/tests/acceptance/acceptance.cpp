// Acceptance run: one line per criterion, nonzero exit when any fails.

#include "oracles.hpp"
#include "generators.hpp"

#include "zsparse/abelian.hpp"
#include "zsparse/equation_solver.hpp"
#include "zsparse/errors.hpp"
#include "zsparse/exponent_arith.hpp"
#include "zsparse/formula.hpp"
#include "zsparse/gamma_solver.hpp"
#include "zsparse/induced_theory.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace zsparse;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string vec_str(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::vector<std::vector<Integer>> coefficient_vectors(std::size_t max_n, int max_k) {
  std::vector<std::vector<Integer>> out;
  std::function<void(std::vector<Integer>&)> rec = [&](std::vector<Integer>& cur) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_n) return;
    for (int k = -max_k; k <= max_k; ++k) {
      if (k == 0) continue;
      cur.push_back(k);
      rec(cur);
      cur.pop_back();
    }
  };
  std::vector<Integer> cur;
  rec(cur);
  return out;
}

Outcome residue_oracle() {
  std::size_t cases = 0, bad = 0;
  std::string first;
  for (std::uint64_t q : {2, 3, 10}) {
    for (std::uint64_t n = 2; n <= 50; ++n) {
      for (std::uint64_t k = 0; k < n; ++k) {
        ++cases;
        if (power_residue_class(q, k, n).materialize(500) != oracle::residue_scan(q, k, n, 500)) {
          if (bad++ == 0) {
            first = " first (q,k,n)=(" + std::to_string(q) + "," + std::to_string(k) + "," + std::to_string(n) + ")";
          }
        }
      }
    }
  }
  return {bad == 0, std::to_string(cases) + " classes, " + std::to_string(bad) + " mismatches" + first};
}

Outcome order_regression() {
  const auto cls = power_residue_class(2, 1, 7);
  const auto m = cls.materialize(30);
  const bool six = cls.contains(6) && std::find(m.begin(), m.end(), 6) != m.end();
  const bool oracle_six = oracle::power_mod_naive(2, 6, 7) == 1;
  return {six && oracle_six, std::string("6 ") + (six ? "in" : "not in") + " {m : 2^m = 1 mod 7}"};
}

Outcome equation_completeness() {
  std::size_t cases = 0, bad = 0, solutions = 0;
  std::string first;
  for (std::uint64_t q : {2, 3, 5}) {
    for (const auto& ks : coefficient_vectors(3, 5)) {
      ++cases;
      const auto eq = EquationSpec::from_coefficients(ks);
      std::set<std::vector<Integer>> from_families;
      for (const auto& fam : solve_powers(eq, q)) {
        for (const auto& e : fam.members(12)) {
          std::vector<Integer> t;
          for (auto x : e) t.push_back(oracle::ipow(q, x));
          from_families.insert(t);
        }
      }
      const auto bf = brute_force_solutions(eq, SparseSet::powers(q), 12);
      const std::set<std::vector<Integer>> from_bf(bf.begin(), bf.end());
      std::set<std::vector<Integer>> from_oracle;
      for (const auto& e : oracle::exponent_solutions(ks, q, 12)) {
        std::vector<Integer> t;
        for (auto x : e) t.push_back(oracle::ipow(q, x));
        from_oracle.insert(t);
      }
      solutions += from_oracle.size();
      if (from_families != from_bf || from_bf != from_oracle) {
        if (bad++ == 0) first = ", first q=" + std::to_string(q) + " k=" + vec_str(ks);
      }
    }
  }
  const auto eq = EquationSpec::parse("1,1,-1");
  const bool regress = eq.satisfied_by({2, 2, 4}) && !eq.satisfied_by({4, 4, 16}) && eq.satisfied_by({4, 4, 8}) &&
                       Integer(2 + 2 - 4) == 0 && Integer(4 + 4 - 16) != 0 && Integer(4 + 4 - 8) == 0;
  return {bad == 0 && regress, std::to_string(cases) + " (q, k) pairs, " + std::to_string(solutions) +
                                   " grid solutions, " + std::to_string(bad) + " mismatches" + first +
                                   "; orbit regression " + (regress ? "ok" : "FAILED")};
}

// Solutions with x_i = x_j exactly when i and j share a block of `part`.
std::vector<std::set<Integer>> block_projections(const std::set<std::vector<Integer>>& sols, const Partition& part) {
  std::vector<std::set<Integer>> proj(part.size());
  for (const auto& s : sols) {
    bool ok = true;
    for (std::size_t b = 0; b < part.size() && ok; ++b) {
      for (auto i : part[b]) ok = ok && s[i] == s[part[b][0]];
      for (std::size_t c = b + 1; c < part.size() && ok; ++c) ok = s[part[b][0]] != s[part[c][0]];
    }
    if (!ok) continue;
    for (std::size_t b = 0; b < part.size(); ++b) proj[b].insert(s[part[b][0]]);
  }
  return proj;
}

Outcome factorial_oracle() {
  std::size_t cases = 0, bad = 0, blocks = 0, block_bad = 0;
  std::string first;
  const auto small = oracle::factorial_values(6);
  const auto large = oracle::factorial_values(8);
  for (const auto& ks : coefficient_vectors(3, 4)) {
    ++cases;
    const auto eq = EquationSpec::from_coefficients(ks);
    const auto desc = solve_factorials(eq);
    const auto mat = desc.materialize(large.size() - 1);
    const std::set<std::vector<Integer>> got(mat.begin(), mat.end());
    const auto want = oracle::value_solutions(ks, large);
    const auto bf = brute_force_solutions(eq, SparseSet::factorials(), large.size());
    if (got != want || std::set<std::vector<Integer>>(bf.begin(), bf.end()) != want) {
      if (bad++ == 0) first = ", first k=" + vec_str(ks);
    }
    const auto want_small = oracle::value_solutions(ks, small);
    for (const auto& part : set_partitions(ks.size())) {
      const auto kinds = block_sum_classify(eq, part);
      const auto p6 = block_projections(want_small, part);
      const auto p8 = block_projections(want, part);
      if (p6[0].empty()) continue;  // the pattern has no solutions at this scale
      for (std::size_t b = 0; b < part.size(); ++b) {
        ++blocks;
        const bool grows = p8[b].size() > p6[b].size();
        if (grows != (kinds[b] == ProjectionKind::Infinite)) {
          if (block_bad++ == 0 && first.empty()) first = ", block mismatch k=" + vec_str(ks);
        }
      }
    }
  }
  return {bad == 0 && block_bad == 0, std::to_string(cases) + " equations, " + std::to_string(bad) +
                                          " solution mismatches; " + std::to_string(blocks) + " blocks, " +
                                          std::to_string(block_bad) + " projection mismatches" + first};
}

Outcome qe_equivalence() {
  gen::Rng rng(20240617);
  std::size_t formulas = 0, checks = 0, unknown = 0, bad = 0, not_qf = 0;
  std::string first;
  const std::vector<std::string> free{"x", "z", "w"};
  for (int i = 0; i < 1000; ++i) {
    int fresh = 0;
    const auto f = gen::nformula(rng, free, static_cast<int>(gen::uniform(rng, 1, 2)), 3, fresh);
    ++formulas;
    const auto g = qe(f);
    if (!g.is_quantifier_free()) {
      if (not_qf++ == 0) first = ", not quantifier-free: " + print(f);
      continue;
    }
    std::vector<NAssignment> samples{{{"x", 1}, {"z", 1}, {"w", 1}},
                                     {{"x", 200}, {"z", 200}, {"w", 200}},
                                     {{"x", 1}, {"z", 200}, {"w", 2}}};
    auto draw = [&] { return static_cast<std::uint64_t>(gen::uniform(rng, 1, 200)); };
    for (int s = 0; s < 5; ++s) samples.push_back({{"x", draw()}, {"z", draw()}, {"w", draw()}});
    for (const auto& asg : samples) {
      ++checks;
      const Truth expected = n_evaluate(f, asg, 200);
      if (expected == Truth::Unknown) {
        ++unknown;
        continue;
      }
      if (truth_of(n_holds(g, asg)) != expected) {
        if (bad++ == 0) first = ", first: " + print(f) + " vs " + print(g);
      }
    }
  }
  return {bad == 0 && not_qf == 0, std::to_string(formulas) + " formulas, " + std::to_string(checks) +
                                       " assignments, " + std::to_string(unknown) + " unknown, " +
                                       std::to_string(bad) + " counterexamples" + first};
}

Outcome type_doubling() {
  std::string detail;
  bool pass = true;
  std::vector<std::uint64_t> moduli;
  for (unsigned d = 1; d <= 10; ++d) {
    moduli.push_back(std::uint64_t{1} << d);
    const auto c = count_types(moduli);
    if (c != (std::uint64_t{1} << d)) {
      pass = false;
      detail += " d=" + std::to_string(d) + " gave " + std::to_string(c);
    }
  }
  return {pass, pass ? "2^d types for d = 1..10" : "mismatch:" + detail};
}

bool witness_avoids(const CoverReport& r, const std::vector<AffineFamily>& fams, const Coset& c, const SparseSet& p) {
  if (oracle::floor_mod_check(r.witness - c.residue, c.modulus) != 0) return false;
  for (const auto& f : fams) {
    const Integer diff = r.witness - f.offset;
    if (diff % f.slope != 0) continue;
    const Integer alpha = diff / f.slope;
    // the elements of P are positive and increasing; scan until alpha is passed
    for (std::size_t i = 0;; ++i) {
      const Integer e = p.nth_element(i);
      if (e == alpha) return false;
      if (e > alpha) break;
    }
  }
  return true;
}

Outcome covering_and_gamma() {
  gen::Rng rng(7031);
  std::size_t covers = 0, covered = 0, gammas = 0, witnesses = 0, unsat = 0, bad = 0;
  std::uint64_t max_inspected = 0, max_core = 0, coupled_large = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    const auto p = SparseSet::powers(i % 2 ? 3 : 2);
    std::vector<AffineFamily> fams;
    const int count = static_cast<int>(gen::uniform(rng, 1, 5));
    for (int j = 0; j < count; ++j) {
      std::int64_t l = 0;
      while (l == 0) l = gen::uniform(rng, -20, 20);
      fams.push_back(AffineFamily{gen::uniform(rng, -20, 20), l});
    }
    const Coset coset{static_cast<std::uint64_t>(gen::uniform(rng, 1, 20)), gen::uniform(rng, -20, 20)};
    ++covers;
    try {
      const auto r = covers_coset(fams, coset, p);
      if (!witness_avoids(r, fams, coset, p)) {
        if (bad++ == 0) first = ", bad cover witness " + r.witness.get_str();
      }
      max_inspected = std::max(max_inspected, r.inspected);
      if (r.inspected > r.scan_bound && bad++ == 0) first = ", scan exceeded its bound";
    } catch (const DomainError& e) {
      if (covered++ == 0) first = std::string(", no witness: ") + e.what();
    }
  }
  for (int i = 0; i < 200; ++i) {
    GammaInstance g;
    g.set = SparseSet::powers(i % 2 ? 3 : 2);
    g.clause = gen::group_formula(rng, {"y", "a"}, 3);
    ++gammas;
    const auto r = gamma_sat(g);
    if (r.status == GammaReport::Status::Unsat) {
      ++unsat;
      bool ok = r.subsystem_verified && !r.inconsistent_instances.empty();
      max_core = std::max<std::uint64_t>(max_core, r.inconsistent_instances.size());
      // Size bound for cores when no congruence ties y to a: one instance per
      // equality candidate plus one. Coupled congruences can need more, which is
      // tallied separately.
      std::size_t equalities = 0;
      bool coupled = false;
      for (const auto& c : to_dnf(g.clause)) {
        equalities += c.equalities.size();
        for (const auto& cg : c.congruences) {
          const bool y_term = cg.term.coefficient("y") % cg.modulus != 0;
          coupled = coupled || (y_term && cg.term.coefficient("a") % cg.modulus != 0);
        }
      }
      if (r.inconsistent_instances.size() > equalities + 1) {
        if (coupled) {
          ++coupled_large;
        } else {
          ok = false;
        }
      }
      for (std::int64_t y = -2000; y <= 2000 && ok; ++y) {
        bool all = true;
        for (const auto& a : r.inconsistent_instances) all = all && oracle::holds_naive(g.clause, {{"y", y}, {"a", a}});
        ok = !all;
      }
      if (!ok && bad++ == 0) first = ", unsat core not inconsistent for " + print(g.clause);
      continue;
    }
    ++witnesses;
    bool ok = verify_gamma_witness(g, *r.witness).passed;
    for (std::size_t k = 0; k < 50 && ok; ++k) {
      ok = oracle::holds_naive(g.clause, {{"y", *r.witness}, {"a", g.set.nth_element(k)}});
    }
    if (!ok && bad++ == 0) first = ", witness " + r.witness->get_str() + " fails for " + print(g.clause);
  }
  return {covered == 0 && bad == 0,
          std::to_string(covers) + " coset instances, " + std::to_string(covered) + " covered, longest scan " +
              std::to_string(max_inspected) + "; " +
              std::to_string(gammas) + " schemes, " + std::to_string(witnesses) + " witnesses, " +
              std::to_string(unsat) + " unsat (largest core " + std::to_string(max_core) + ", " +
              std::to_string(coupled_large) + " beyond the equality bound via coupled congruences), " +
              std::to_string(bad) + " failed checks" + first};
}

Outcome smith_correctness() {
  gen::Rng rng(99);
  std::size_t lattices = 0, bad = 0;
  std::string first;
  auto fail = [&](const std::string& why) {
    if (bad++ == 0) first = ", first: " + why;
  };
  for (int t = 0; t < 100; ++t) {
    IntegerLattice l;
    l.rank = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const auto gens = gen::uniform(rng, 1, 4);
    for (int g = 0; g < gens; ++g) {
      IntVector v;
      for (std::size_t i = 0; i < l.rank; ++i) v.push_back(gen::uniform(rng, -6, 6));
      l.generators.push_back(v);
    }
    ++lattices;
    const auto b = smith_basis(l);
    const std::size_t n = l.rank, k = b.divisors.size();
    // divisor chain, and each partial product is the gcd of the minors of that size
    Integer prod = 1;
    bool ok = k == oracle::rank_of(l.generators);
    for (std::size_t i = 0; i < k && ok; ++i) {
      ok = b.divisors[i] > 0 && (i == 0 || b.divisors[i] % b.divisors[i - 1] == 0);
      prod *= b.divisors[i];
      ok = ok && oracle::minors_gcd(l.generators, n, i + 1) == prod;
    }
    if (!ok) {
      fail("divisor chain");
      continue;
    }
    // the basis is unimodular with inverse `coordinates`
    IntMatrix z(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < n; ++r) z[r][i] = b.basis[i][r];
    }
    const auto id = matmul(b.coordinates, z);
    for (std::size_t r = 0; r < n && ok; ++r) {
      for (std::size_t c = 0; c < n && ok; ++c) ok = id[r][c] == (r == c ? 1 : 0);
    }
    if (!ok || abs(oracle::det_laplace(z)) != 1) {
      fail("basis not unimodular");
      continue;
    }
    // every generator lies in the span of d_i z_i; equal minor gcds make the spans equal
    for (const auto& g : l.generators) {
      const auto w = mat_vec(b.coordinates, g);
      for (std::size_t i = 0; i < n && ok; ++i) ok = i < k ? w[i] % b.divisors[i] == 0 : w[i] == 0;
    }
    if (!ok) {
      fail("regeneration");
      continue;
    }
    const auto idx = lattice_index(l);
    if (k == n) {
      const auto counted = oracle::index_by_counting(l.generators, n, to_u64(prod));
      if (!idx || *idx != prod || counted != to_u64(prod)) fail("index");
    } else if (idx) {
      fail("finite index for a rank-deficient lattice");
    }
  }
  // 3Z + 2Z is moved by a transvection
  const auto mixed = IntegerLattice::parse(2, "3,0;0,2");
  const auto rep = is_characteristic(mixed);
  const bool refuted = !rep.invariant && rep.move.find("+=") != std::string::npos && rep.image.size() == 2 &&
                       !(rep.image[0] % 3 == 0 && rep.image[1] % 2 == 0);
  std::size_t uniform_ok = 0, uniform_total = 0;
  for (int m = 1; m <= 5; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      IntegerLattice l;
      l.rank = n;
      for (std::size_t i = 0; i < n; ++i) {
        IntVector v(n, 0);
        v[i] = m;
        l.generators.push_back(v);
      }
      ++uniform_total;
      uniform_ok += is_characteristic(l).invariant ? 1 : 0;
    }
  }
  return {bad == 0 && refuted && uniform_ok == uniform_total,
          std::to_string(lattices) + " lattices, " + std::to_string(bad) + " failures" + first +
              "; 3Z+2Z " + (refuted ? "refuted by '" + rep.move + "'" : std::string("NOT refuted")) + "; mZ^n " +
              std::to_string(uniform_ok) + "/" + std::to_string(uniform_total) + " characteristic"};
}

Outcome dnf_equivalence() {
  gen::Rng rng(4242);
  std::size_t formulas = 0, points = 0, bad = 0;
  std::string first;
  const std::vector<std::string> all{"x", "y", "z"};
  for (int i = 0; i < 1000; ++i) {
    const std::vector<std::string> vars(all.begin(), all.begin() + gen::uniform(rng, 1, 3));
    const auto f = gen::group_formula(rng, vars, 3);
    const auto d = to_dnf(f);
    ++formulas;
    std::vector<std::int64_t> v(vars.size(), -6);
    for (;;) {
      Assignment asg;
      for (std::size_t j = 0; j < vars.size(); ++j) asg[vars[j]] = v[j];
      ++points;
      if (oracle::holds_naive(f, asg) != oracle::dnf_holds_naive(d, asg)) {
        if (bad++ == 0) first = ", first: " + print(f);
        break;
      }
      std::size_t j = 0;
      while (j < v.size() && v[j] == 6) v[j++] = -6;
      if (j == v.size()) break;
      ++v[j];
    }
  }
  return {bad == 0, std::to_string(formulas) + " formulas, " + std::to_string(points) + " assignments, " +
                        std::to_string(bad) + " disagreements" + first};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"residue oracle", residue_oracle},
      {"order regression", order_regression},
      {"equation solver completeness", equation_completeness},
      {"factorial solver oracle", factorial_oracle},
      {"QE equivalence", qe_equivalence},
      {"type doubling", type_doubling},
      {"covering impossibility", covering_and_gamma},
      {"Smith correctness", smith_correctness},
      {"DNF equivalence", dnf_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
