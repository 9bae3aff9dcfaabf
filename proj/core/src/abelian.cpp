#include "zsparse/abelian.hpp"

#include "zsparse/errors.hpp"

#include <sstream>

namespace zsparse {

IntegerLattice IntegerLattice::parse(std::size_t rank, const std::string& gens) {
  IntegerLattice l;
  l.rank = rank;
  std::istringstream vecs(gens);
  std::string vec;
  while (std::getline(vecs, vec, ';')) {
    if (vec.find_first_not_of(" \t") == std::string::npos) continue;
    IntVector v;
    std::istringstream entries(vec);
    std::string e;
    while (std::getline(entries, e, ',')) {
      auto b = e.find_first_not_of(" \t");
      auto en = e.find_last_not_of(" \t");
      if (b == std::string::npos) throw DomainError("empty entry in generator '" + vec + "'");
      v.push_back(parse_integer(e.substr(b, en - b + 1)));
    }
    l.generators.push_back(std::move(v));
  }
  l.validate();
  return l;
}

void IntegerLattice::validate() const {
  if (rank < 1) throw DomainError("lattice rank must be >= 1");
  for (const auto& g : generators) {
    if (g.size() != rank) {
      throw DomainError("generator of length " + std::to_string(g.size()) + " in a rank " + std::to_string(rank) +
                        " lattice");
    }
  }
}

namespace {

// Working state: A (n x m) reduced in place; U accumulates row operations and
// Uinv their inverses as column operations, so U * A_original * V = A.
struct Smith {
  IntMatrix a, u, uinv;
  std::size_t n = 0, m = 0;

  void row_add(std::size_t dst, std::size_t src, const Integer& k) {  // row dst += k * row src
    for (std::size_t c = 0; c < m; ++c) a[dst][c] += k * a[src][c];
    for (std::size_t c = 0; c < n; ++c) u[dst][c] += k * u[src][c];
    for (std::size_t r = 0; r < n; ++r) uinv[r][src] -= k * uinv[r][dst];
  }
  void row_swap(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(uinv[r][i], uinv[r][j]);
  }
  void row_negate(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
    for (std::size_t r = 0; r < n; ++r) uinv[r][i] = -uinv[r][i];
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t r = 0; r < n; ++r) a[r][dst] += k * a[r][src];
  }
  void col_swap(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
  }

  // Smallest nonzero |entry| in the trailing block; false if the block is zero.
  bool pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < n; ++r) {
      for (std::size_t c = t; c < m; ++c) {
        if (a[r][c] != 0 && (!found || abs(a[r][c]) < best)) {
          best = abs(a[r][c]);
          pr = r;
          pc = c;
          found = true;
        }
      }
    }
    return found;
  }

  std::size_t run() {
    std::size_t t = 0;
    for (; t < std::min(n, m); ++t) {
      std::size_t pr = 0, pc = 0;
      if (!pivot(t, pr, pc)) break;
      for (;;) {
        if (!pivot(t, pr, pc)) break;
        row_swap(t, pr);
        col_swap(t, pc);
        bool dirty = false;
        for (std::size_t r = t + 1; r < n; ++r) {
          if (a[r][t] == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
          row_add(r, t, -q);
          dirty = dirty || a[r][t] != 0;
        }
        for (std::size_t c = t + 1; c < m; ++c) {
          if (a[t][c] == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
          col_add(c, t, -q);
          dirty = dirty || a[t][c] != 0;
        }
        if (dirty) continue;  // a smaller remainder becomes the next pivot
        // the pivot must divide the whole trailing block
        bool fixed = false;
        for (std::size_t r = t + 1; r < n && !fixed; ++r) {
          for (std::size_t c = t + 1; c < m; ++c) {
            if (a[r][c] % a[t][t] != 0) {
              row_add(t, r, 1);
              fixed = true;
              break;
            }
          }
        }
        if (!fixed) break;
      }
      if (a[t][t] < 0) row_negate(t);
    }
    return t;
  }
};

Smith reduce(const IntegerLattice& l) {
  l.validate();
  Smith s;
  s.n = l.rank;
  s.m = l.generators.size();
  s.a.assign(s.n, IntVector(s.m));
  for (std::size_t c = 0; c < s.m; ++c) {
    for (std::size_t r = 0; r < s.n; ++r) s.a[r][c] = l.generators[c][r];
  }
  s.u.assign(s.n, IntVector(s.n, 0));
  s.uinv.assign(s.n, IntVector(s.n, 0));
  for (std::size_t i = 0; i < s.n; ++i) s.u[i][i] = s.uinv[i][i] = 1;
  return s;
}

}  // namespace

AdaptedBasis smith_basis(const IntegerLattice& lattice) {
  Smith s = reduce(lattice);
  const std::size_t k = s.run();
  AdaptedBasis out;
  for (std::size_t i = 0; i < s.n; ++i) {
    IntVector z(s.n);
    for (std::size_t r = 0; r < s.n; ++r) z[r] = s.uinv[r][i];
    out.basis.push_back(std::move(z));
  }
  for (std::size_t i = 0; i < k; ++i) out.divisors.push_back(s.a[i][i]);
  out.coordinates = s.u;
  return out;
}

bool membership(const IntegerLattice& lattice, const IntVector& v) {
  if (v.size() != lattice.rank) {
    throw DomainError("vector of length " + std::to_string(v.size()) + " for a rank " + std::to_string(lattice.rank) +
                      " lattice");
  }
  const AdaptedBasis b = smith_basis(lattice);
  const IntVector w = mat_vec(b.coordinates, v);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < b.divisors.size()) {
      if (w[i] % b.divisors[i] != 0) return false;
    } else if (w[i] != 0) {
      return false;
    }
  }
  return true;
}

std::optional<Integer> lattice_index(const IntegerLattice& lattice) {
  const AdaptedBasis b = smith_basis(lattice);
  if (b.divisors.size() < lattice.rank) return std::nullopt;
  Integer p = 1;
  for (const auto& d : b.divisors) p *= d;
  return p;
}

Integer determinant(IntMatrix m) {
  // Bareiss fraction-free elimination
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), inner = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

CharacteristicReport is_characteristic(const IntegerLattice& lattice) {
  lattice.validate();
  const std::size_t n = lattice.rank;
  auto identity = [&] {
    IntMatrix id(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  };
  std::vector<std::pair<std::string, IntMatrix>> moves;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      IntMatrix m = identity();
      m[i][j] = 1;
      moves.emplace_back("x" + std::to_string(i) + " += x" + std::to_string(j), std::move(m));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      IntMatrix m = identity();
      std::swap(m[i], m[j]);
      moves.emplace_back("swap x" + std::to_string(i) + ", x" + std::to_string(j), std::move(m));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix m = identity();
    m[i][i] = -1;
    moves.emplace_back("x" + std::to_string(i) + " := -x" + std::to_string(i), std::move(m));
  }
  CharacteristicReport rep;
  for (auto& [name, m] : moves) {
    for (const auto& g : lattice.generators) {
      IntVector img = mat_vec(m, g);
      if (!membership(lattice, img)) {
        rep.invariant = false;
        rep.move = name;
        rep.matrix = m;
        rep.generator = g;
        rep.image = std::move(img);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace zsparse
