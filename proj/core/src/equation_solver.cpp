#include "zsparse/equation_solver.hpp"

#include "zsparse/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace zsparse {

EquationSpec EquationSpec::from_coefficients(std::vector<Integer> coefficients) {
  if (coefficients.empty()) throw DomainError("equation needs at least one coefficient");
  EquationSpec eq;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 0) throw DomainError("equation coefficients must be nonzero");
    eq.names.push_back("x" + std::to_string(i + 1));
  }
  eq.coefficients = std::move(coefficients);
  return eq;
}

EquationSpec EquationSpec::parse(const std::string& csv) {
  std::vector<Integer> ks;
  std::string part;
  std::istringstream in(csv);
  while (std::getline(in, part, ',')) {
    auto b = part.find_first_not_of(" \t");
    auto e = part.find_last_not_of(" \t");
    if (b == std::string::npos) throw DomainError("empty coefficient in '" + csv + "'");
    ks.push_back(parse_integer(part.substr(b, e - b + 1)));
  }
  return from_coefficients(std::move(ks));
}

bool EquationSpec::satisfied_by(const std::vector<Integer>& xs) const {
  if (xs.size() != coefficients.size()) throw DomainError("tuple arity does not match the equation");
  Integer sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sum += coefficients[i] * xs[i];
  return sum == rhs;
}

std::string EquationSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const Integer& k = coefficients[i];
    if (i == 0) {
      if (k < 0) out += "-";
    } else {
      out += k < 0 ? " - " : " + ";
    }
    if (abs(k) != 1) out += zsparse::to_string(abs(k)) + "*";
    out += names[i];
  }
  return out + " = " + zsparse::to_string(rhs);
}

std::vector<Partition> set_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n == 0) return {Partition{}};
  std::vector<std::size_t> rgs(n, 0);  // restricted growth string
  for (;;) {
    std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    Partition p(blocks);
    for (std::size_t i = 0; i < n; ++i) p[rgs[i]].push_back(i);
    out.push_back(std::move(p));
    // advance
    std::size_t i = n - 1;
    for (;; --i) {
      if (i == 0) return out;
      std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + static_cast<std::ptrdiff_t>(i));
      if (rgs[i] <= prefix_max) {
        ++rgs[i];
        std::fill(rgs.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs.end(), 0);
        break;
      }
    }
  }
}

// ---- powers ----

std::vector<std::vector<std::uint64_t>> ScaleOrbitFamily::members(std::uint64_t max_exponent) const {
  // Each block can shift while its largest exponent stays within range.
  std::vector<std::uint64_t> room;
  for (const auto& b : blocks) {
    std::uint64_t hi = 0;
    for (auto i : b) hi = std::max(hi, base_exponents[i]);
    if (hi > max_exponent) return {};
    room.push_back(max_exponent - hi);
  }
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> shift(blocks.size(), 0);
  for (;;) {
    std::vector<std::uint64_t> e = base_exponents;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      for (auto i : blocks[j]) e[i] += shift[j];
    }
    out.push_back(std::move(e));
    std::size_t j = 0;
    while (j < blocks.size() && shift[j] == room[j]) shift[j++] = 0;
    if (j == blocks.size()) break;
    ++shift[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ScaleOrbitFamily::contains(const std::vector<std::uint64_t>& exponents) const {
  if (exponents.size() != base_exponents.size()) return false;
  for (const auto& b : blocks) {
    const auto i0 = b.front();
    if (exponents[i0] < base_exponents[i0]) return false;
    const std::uint64_t t = exponents[i0] - base_exponents[i0];
    for (auto i : b) {
      if (exponents[i] != base_exponents[i] + t) return false;
    }
  }
  return true;
}

namespace {

Integer abs_sum(const EquationSpec& eq, const std::vector<std::size_t>& idx) {
  Integer s = 0;
  for (auto i : idx) s += abs(eq.coefficients[i]);
  return s;
}

// Smallest g with q^g > k.
std::uint64_t split_gap(std::uint64_t q, const Integer& k) {
  std::uint64_t g = 0;
  Integer p = 1;
  const Integer qq = from_u64(q);
  while (p <= k) {
    p *= qq;
    ++g;
  }
  return g;
}

std::uint64_t block_spread(const EquationSpec& eq, const std::vector<std::size_t>& idx, std::uint64_t q) {
  return (idx.size() - 1) * (split_gap(q, abs_sum(eq, idx)) - 1) + 1;
}

// Zero-sum exponent tuples over the block `idx` with min exponent 1 and spread <= bound.
std::vector<std::vector<std::uint64_t>> block_bases(const EquationSpec& eq, const std::vector<std::size_t>& idx,
                                                    std::uint64_t q) {
  const std::uint64_t spread = block_spread(eq, idx, q);
  const std::size_t m = idx.size();
  const Integer qq = from_u64(q);
  std::vector<Integer> powers(spread + 2);
  powers[0] = 1;
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * qq;

  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> e(m, 1);
  for (;;) {
    if (*std::min_element(e.begin(), e.end()) == 1) {
      Integer sum = 0;
      for (std::size_t i = 0; i < m; ++i) sum += eq.coefficients[idx[i]] * powers[e[i]];
      if (sum == 0) out.push_back(e);
    }
    std::size_t i = 0;
    while (i < m && e[i] == spread + 1) e[i++] = 1;
    if (i == m) break;
    ++e[i];
  }
  return out;
}

ScaleOrbitFamily normalised_restriction(const ScaleOrbitFamily& f, const std::vector<std::size_t>& sub) {
  std::uint64_t lo = UINT64_MAX;
  for (auto i : sub) lo = std::min(lo, f.base_exponents[i]);
  ScaleOrbitFamily r;
  r.base_exponents = f.base_exponents;
  for (auto i : sub) r.base_exponents[i] = f.base_exponents[i] - lo + 1;
  return r;
}

// f is contained in g when g's blocks refine f's and every g-block base is the
// normalised restriction of f's base.
bool subsumed_by(const ScaleOrbitFamily& f, const ScaleOrbitFamily& g) {
  for (const auto& gb : g.blocks) {
    const std::vector<std::size_t>* host = nullptr;
    for (const auto& fb : f.blocks) {
      if (std::find(fb.begin(), fb.end(), gb.front()) != fb.end()) host = &fb;
    }
    for (auto i : gb) {
      if (std::find(host->begin(), host->end(), i) == host->end()) return false;
    }
    auto r = normalised_restriction(f, gb);
    for (auto i : gb) {
      if (r.base_exponents[i] != g.base_exponents[i]) return false;
    }
  }
  return true;
}

}  // namespace

std::uint64_t exponent_spread_bound(const EquationSpec& eq, std::uint64_t q) {
  if (q < 2) throw DomainError("powers: base must be >= 2");
  std::vector<std::size_t> all(eq.arity());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return block_spread(eq, all, q);
}

std::vector<ScaleOrbitFamily> solve_powers(const EquationSpec& eq, std::uint64_t q) {
  if (q < 2) throw DomainError("powers: base must be >= 2");
  if (!eq.homogeneous()) throw DomainError("solve_powers handles homogeneous equations only; use the brute-force oracle");
  const std::size_t n = eq.arity();
  std::map<std::vector<std::size_t>, std::vector<std::vector<std::uint64_t>>> memo;
  auto bases_for = [&](const std::vector<std::size_t>& block) -> const auto& {
    auto it = memo.find(block);
    if (it == memo.end()) it = memo.emplace(block, block_bases(eq, block, q)).first;
    return it->second;
  };

  std::vector<ScaleOrbitFamily> candidates;
  for (const auto& partition : set_partitions(n)) {
    bool viable = true;
    for (const auto& b : partition) {
      if (b.size() < 2 || bases_for(b).empty()) {
        viable = false;
        break;
      }
    }
    if (!viable) continue;
    // cartesian product of per-block bases
    std::vector<std::size_t> pick(partition.size(), 0);
    for (;;) {
      ScaleOrbitFamily f;
      f.base_exponents.assign(n, 0);
      f.blocks = partition;
      for (std::size_t j = 0; j < partition.size(); ++j) {
        const auto& base = bases_for(partition[j])[pick[j]];
        for (std::size_t t = 0; t < partition[j].size(); ++t) f.base_exponents[partition[j][t]] = base[t];
      }
      candidates.push_back(std::move(f));
      std::size_t j = 0;
      while (j < pick.size() && pick[j] + 1 == bases_for(partition[j]).size()) pick[j++] = 0;
      if (j == pick.size()) break;
      ++pick[j];
    }
  }

  std::vector<ScaleOrbitFamily> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < candidates.size() && !redundant; ++j) {
      if (i == j || !subsumed_by(candidates[i], candidates[j])) continue;
      // keep exactly one of two mutually containing families
      redundant = !subsumed_by(candidates[j], candidates[i]) || j < i;
    }
    if (!redundant) out.push_back(candidates[i]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
    if (a.blocks != b.blocks) return a.blocks < b.blocks;
    return a.base_exponents < b.base_exponents;
  });
  return out;
}

// ---- factorials ----

std::size_t FactorialFamily::free_parameters() const {
  return static_cast<std::size_t>(
      std::count_if(blocks.begin(), blocks.end(), [](const auto& b) { return !b.value.has_value(); }));
}

std::vector<std::vector<Integer>> FactorialSolutionDescription::materialize(std::size_t max_index) const {
  const auto values = SparseSet::factorials().prefix(max_index + 1);
  std::set<std::vector<Integer>> out;
  const Integer& top = values.back();
  for (const auto& s : sporadic) {
    if (std::all_of(s.begin(), s.end(), [&](const Integer& v) { return v <= top; })) out.insert(s);
  }
  for (const auto& fam : families) {
    std::size_t arity = 0;
    std::vector<std::size_t> free_blocks;
    std::set<Integer> fixed;
    for (std::size_t j = 0; j < fam.blocks.size(); ++j) {
      arity += fam.blocks[j].indices.size();
      if (fam.blocks[j].value) {
        fixed.insert(*fam.blocks[j].value);
      } else {
        free_blocks.push_back(j);
      }
    }
    if (std::any_of(fixed.begin(), fixed.end(), [&](const Integer& v) { return v > top; })) continue;
    std::vector<Integer> pool;
    for (const auto& v : values) {
      if (!fixed.count(v)) pool.push_back(v);
    }
    // injective assignments of pool values to free blocks
    std::vector<std::size_t> choice(free_blocks.size(), 0);
    std::function<void(std::size_t, std::vector<bool>&)> rec = [&](std::size_t depth, std::vector<bool>& used) {
      if (depth == free_blocks.size()) {
        std::vector<Integer> tuple(arity);
        for (std::size_t j = 0; j < fam.blocks.size(); ++j) {
          for (auto i : fam.blocks[j].indices) tuple[i] = fam.blocks[j].value ? *fam.blocks[j].value : Integer(0);
        }
        for (std::size_t d = 0; d < free_blocks.size(); ++d) {
          for (auto i : fam.blocks[free_blocks[d]].indices) tuple[i] = pool[choice[d]];
        }
        out.insert(std::move(tuple));
        return;
      }
      for (std::size_t v = 0; v < pool.size(); ++v) {
        if (used[v]) continue;
        used[v] = true;
        choice[depth] = v;
        rec(depth + 1, used);
        used[v] = false;
      }
    };
    std::vector<bool> used(pool.size(), false);
    rec(0, used);
  }
  return {out.begin(), out.end()};
}

FactorialSolutionDescription solve_factorials(const EquationSpec& eq) {
  if (!eq.homogeneous()) {
    throw DomainError("solve_factorials handles homogeneous equations only; use the brute-force oracle");
  }
  const auto fac = SparseSet::factorials();
  FactorialSolutionDescription out;
  for (const auto& partition : set_partitions(eq.arity())) {
    std::vector<Integer> sums;
    std::vector<std::size_t> fixed_blocks;
    Integer total = 0;
    for (std::size_t j = 0; j < partition.size(); ++j) {
      Integer s = 0;
      for (auto i : partition[j]) s += eq.coefficients[i];
      sums.push_back(s);
      if (s != 0) {
        fixed_blocks.push_back(j);
        total += abs(s);
      }
    }
    // A solution of sum c_j * v_j = 0 over distinct Fac values has its largest
    // factorial argument at most sum |c_j|.
    const std::size_t cap = std::max<std::size_t>(to_u64(total), 1);
    const auto values = fac.prefix(cap + 1);
    std::vector<std::size_t> pick(fixed_blocks.size(), 0);
    for (;;) {
      bool distinct = true;
      Integer sum = 0;
      for (std::size_t a = 0; a < pick.size() && distinct; ++a) {
        for (std::size_t b = a + 1; b < pick.size(); ++b) {
          if (pick[a] == pick[b]) distinct = false;
        }
        sum += sums[fixed_blocks[a]] * values[pick[a]];
      }
      if (distinct && sum == 0) {
        FactorialFamily fam;
        for (std::size_t j = 0; j < partition.size(); ++j) fam.blocks.push_back(FactorialBlock{partition[j], std::nullopt});
        for (std::size_t a = 0; a < pick.size(); ++a) fam.blocks[fixed_blocks[a]].value = values[pick[a]];
        if (fam.free_parameters() == 0) {
          std::vector<Integer> tuple(eq.arity());
          for (const auto& b : fam.blocks) {
            for (auto i : b.indices) tuple[i] = *b.value;
          }
          out.sporadic.push_back(std::move(tuple));
        } else {
          out.families.push_back(std::move(fam));
        }
      }
      std::size_t a = 0;
      while (a < pick.size() && pick[a] == cap) pick[a++] = 0;
      if (a == pick.size()) break;
      ++pick[a];
    }
  }
  std::sort(out.sporadic.begin(), out.sporadic.end());
  return out;
}

std::vector<ProjectionKind> block_sum_classify(const EquationSpec& eq, const Partition& partition) {
  std::vector<int> seen(eq.arity(), 0);
  for (const auto& b : partition) {
    if (b.empty()) throw DomainError("partition blocks must be nonempty");
    for (auto i : b) {
      if (i >= eq.arity()) throw DomainError("partition index " + std::to_string(i) + " out of range");
      if (seen[i]++) throw DomainError("partition index " + std::to_string(i) + " appears twice");
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw DomainError("partition does not cover index " + std::to_string(i));
  }
  std::vector<ProjectionKind> out;
  for (const auto& b : partition) {
    Integer s = 0;
    for (auto i : b) s += eq.coefficients[i];
    out.push_back(s == 0 ? ProjectionKind::Infinite : ProjectionKind::Finite);
  }
  return out;
}

// ---- oracle ----

std::vector<std::vector<Integer>> brute_force_solutions(const EquationSpec& eq, const SparseSet& set,
                                                        std::size_t element_bound, const BruteForceOptions& options) {
  const auto elems = set.prefix(element_bound);
  const std::size_t n = eq.arity();
  if (elems.empty()) return {};
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= elems.size();
    if (total > options.max_tuples) {
      throw DomainError("brute-force grid exceeds the cap of " + std::to_string(options.max_tuples) + " tuples");
    }
  }
  // One slice per first-coordinate index; merged in order.
  std::vector<std::vector<std::vector<Integer>>> slices(elems.size());
  auto run_slice = [&](std::size_t first) {
    std::vector<std::size_t> idx(n, 0);
    idx[0] = first;
    Integer partial0 = eq.coefficients[0] * elems[first];
    for (;;) {
      Integer sum = partial0;
      for (std::size_t i = 1; i < n; ++i) sum += eq.coefficients[i] * elems[idx[i]];
      if (sum == eq.rhs) {
        std::vector<Integer> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = elems[idx[i]];
        slices[first].push_back(std::move(t));
      }
      std::size_t i = n - 1;
      while (i >= 1 && idx[i] + 1 == elems.size()) idx[i--] = 0;
      if (i == 0) break;
      ++idx[i];
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    for (std::size_t f = 0; f < elems.size(); ++f) run_slice(f);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t f = w; f < elems.size(); f += jobs) run_slice(f);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<std::vector<Integer>> out;
  for (auto& s : slices) {
    for (auto& t : s) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace zsparse
