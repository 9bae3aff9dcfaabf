// Brute-force reference implementations used by the tests. They share no code
// paths with the library beyond Integer arithmetic.
#pragma once

#include "zsparse/abelian.hpp"
#include "zsparse/formula.hpp"
#include "zsparse/induced_theory.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using zsparse::Integer;

/// q^m mod n by repeated multiplication.
inline std::uint64_t power_mod_naive(std::uint64_t q, std::uint64_t m, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  for (std::uint64_t i = 0; i < m; ++i) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * q) % n);
  return r;
}

/// Exponents m in [1, limit] with q^m = k (mod n).
inline std::vector<std::uint64_t> residue_scan(std::uint64_t q, std::uint64_t k, std::uint64_t n, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  std::uint64_t r = 1 % n;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * q) % n);
    if (r == k) out.push_back(m);
  }
  return out;
}

inline Integer ipow(std::uint64_t q, std::uint64_t e) {
  Integer r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= q;
  return r;
}

/// Exponent tuples in [1, max_e]^n with sum k_i q^{e_i} = 0.
inline std::set<std::vector<std::uint64_t>> exponent_solutions(const std::vector<Integer>& ks, std::uint64_t q,
                                                               std::uint64_t max_e) {
  std::vector<Integer> pw(max_e + 1);
  for (std::uint64_t e = 1; e <= max_e; ++e) pw[e] = ipow(q, e);
  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> e(ks.size(), 1);
  for (;;) {
    Integer s = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) s += ks[i] * pw[e[i]];
    if (s == 0) out.insert(e);
    std::size_t i = 0;
    while (i < e.size() && e[i] == max_e) e[i++] = 1;
    if (i == e.size()) break;
    ++e[i];
  }
  return out;
}

/// {0, 1, 2, 6, ..., max_m!}: the factorial set without duplicates.
inline std::vector<Integer> factorial_values(std::uint64_t max_m) {
  std::vector<Integer> out{0, 1};
  Integer f = 1;
  for (std::uint64_t m = 2; m <= max_m; ++m) {
    f *= m;
    out.push_back(f);
  }
  return out;
}

/// Value tuples over `values` solving sum k_i x_i = 0.
inline std::set<std::vector<Integer>> value_solutions(const std::vector<Integer>& ks, const std::vector<Integer>& values) {
  std::set<std::vector<Integer>> out;
  std::vector<std::size_t> idx(ks.size(), 0);
  for (;;) {
    Integer s = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) s += ks[i] * values[idx[i]];
    if (s == 0) {
      std::vector<Integer> t;
      for (auto j : idx) t.push_back(values[j]);
      out.insert(t);
    }
    std::size_t i = 0;
    while (i < idx.size() && idx[i] + 1 == values.size()) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  return out;
}

// ---- group formulas ----

inline bool holds_naive(const zsparse::GroupFormula& f, const zsparse::Assignment& asg) {
  using zsparse::NodeKind;
  switch (f.kind()) {
    case NodeKind::True:
      return true;
    case NodeKind::False:
      return false;
    case NodeKind::Atom: {
      const auto& a = f.atom();
      Integer v = a.term.constant();
      for (const auto& [name, k] : a.term.coefficients()) v += k * asg.at(name);
      if (a.kind == zsparse::AtomKind::Eq0) return v == 0;
      if (a.kind == zsparse::AtomKind::Neq0) return v != 0;
      Integer r = v % a.modulus;
      return r == 0;
    }
    case NodeKind::Not:
      return !holds_naive(f.child(), asg);
    case NodeKind::And:
      for (const auto& c : f.children()) {
        if (!holds_naive(c, asg)) return false;
      }
      return true;
    case NodeKind::Or:
      for (const auto& c : f.children()) {
        if (holds_naive(c, asg)) return true;
      }
      return false;
    default:
      throw std::logic_error("holds_naive: quantifier");
  }
}

inline bool dnf_holds_naive(const zsparse::DNF& d, const zsparse::Assignment& asg) {
  for (const auto& c : d) {
    bool all = true;
    for (const auto& a : c.atoms()) all = all && holds_naive(zsparse::GroupFormula::atom(a), asg);
    if (all) return true;
  }
  return false;
}

// ---- successor structure ----

inline std::int64_t nterm(const zsparse::NTerm& t, const std::map<std::string, std::int64_t>& env) {
  std::int64_t v = (t.var ? env.at(*t.var) : 1) + t.shift;
  return v < 1 ? 1 : v;
}

/// Quantifiers range over [1, range]; no nesting adjustments.
inline bool nholds_naive(const zsparse::NFormula& f, std::map<std::string, std::int64_t>& env, std::int64_t range) {
  using zsparse::NAtomKind;
  using zsparse::NodeKind;
  switch (f.kind()) {
    case NodeKind::True:
      return true;
    case NodeKind::False:
      return false;
    case NodeKind::Atom: {
      const auto& a = f.atom();
      switch (a.kind) {
        case NAtomKind::TermEq:
          return nterm(a.lhs, env) == nterm(a.rhs, env);
        case NAtomKind::TermNeq:
          return nterm(a.lhs, env) != nterm(a.rhs, env);
        case NAtomKind::Q:
          return static_cast<std::uint64_t>(nterm(a.lhs, env)) % a.n == a.k;
        case NAtomKind::NotQ:
          return static_cast<std::uint64_t>(nterm(a.lhs, env)) % a.n != a.k;
      }
      return false;
    }
    case NodeKind::Not:
      return !nholds_naive(f.child(), env, range);
    case NodeKind::And:
      for (const auto& c : f.children()) {
        if (!nholds_naive(c, env, range)) return false;
      }
      return true;
    case NodeKind::Or:
      for (const auto& c : f.children()) {
        if (nholds_naive(c, env, range)) return true;
      }
      return false;
    case NodeKind::Quantified: {
      const bool ex = f.quantifier() == zsparse::Quantifier::Exists;
      const auto it = env.find(f.variable());
      const bool had = it != env.end();
      const std::int64_t saved = had ? it->second : 0;
      bool result = !ex;
      for (std::int64_t v = 1; v <= range; ++v) {
        env[f.variable()] = v;
        if (nholds_naive(f.body(), env, range) == ex) {
          result = ex;
          break;
        }
      }
      if (had) {
        env[f.variable()] = saved;
      } else {
        env.erase(f.variable());
      }
      return result;
    }
  }
  return false;
}

// ---- lattices ----

/// Rank of an integer matrix (rows = vectors) by fraction-free elimination.
inline std::size_t rank_of(std::vector<std::vector<Integer>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      Integer f = rows[i][c], g = rows[r][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] * g - rows[r][j] * f;
    }
    ++r;
  }
  return r;
}

/// |Z^n / L| for a full-rank L containing D*Z^n: D^n divided by the size of
/// the subgroup of (Z/D)^n generated by the generators.
inline std::uint64_t index_by_counting(const std::vector<std::vector<Integer>>& gens, std::size_t n, std::uint64_t D) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= D;
  std::vector<char> seen(total, 0);
  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t c = 0;
    for (auto x : v) c = c * D + x;
    return c;
  };
  std::vector<std::vector<std::uint64_t>> g;
  for (const auto& v : gens) {
    std::vector<std::uint64_t> r;
    for (const auto& x : v) r.push_back(zsparse::floor_mod(x, D));
    g.push_back(r);
  }
  std::vector<std::vector<std::uint64_t>> stack{std::vector<std::uint64_t>(n, 0)};
  seen[0] = 1;
  std::uint64_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& h : g) {
      std::vector<std::uint64_t> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = (v[i] + h[i]) % D;
      auto code = encode(w);
      if (!seen[code]) {
        seen[code] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return total / count;
}

}  // namespace oracle

namespace oracle {

/// Determinant by cofactor expansion along the first row.
inline Integer det_laplace(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[r][j]);
      }
      minor.push_back(row);
    }
    Integer term = m[0][c] * det_laplace(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// gcd of all i x i minors of the n x m matrix whose columns are `cols`.
inline Integer minors_gcd(const std::vector<std::vector<Integer>>& cols, std::size_t n, std::size_t i) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(n, i, 0, cur, rs);
  subsets(cols.size(), i, 0, cur, cs);
  Integer g = 0;
  for (const auto& r : rs) {
    for (const auto& c : cs) {
      std::vector<std::vector<Integer>> m(i, std::vector<Integer>(i));
      for (std::size_t a = 0; a < i; ++a) {
        for (std::size_t b = 0; b < i; ++b) m[a][b] = cols[c[b]][r[a]];
      }
      Integer d = det_laplace(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

}  // namespace oracle

namespace oracle {

inline Integer floor_mod_check(const Integer& v, std::uint64_t n) {
  Integer r = v % Integer(std::to_string(n));
  if (r < 0) r += Integer(std::to_string(n));
  return r;
}

}  // namespace oracle
