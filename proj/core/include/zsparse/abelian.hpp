// Subgroups of Z^n: Smith-adapted bases, membership, index and invariance
// under the automorphisms of Z^n.
#pragma once

#include "zsparse/integer.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace zsparse {

using IntVector = std::vector<Integer>;
/// Row-major square or rectangular integer matrix.
using IntMatrix = std::vector<IntVector>;

struct IntegerLattice {
  std::size_t rank = 1;  // ambient dimension n
  std::vector<IntVector> generators;

  /// "3,0;0,2" with every vector of length `rank`.
  static IntegerLattice parse(std::size_t rank, const std::string& gens);
  void validate() const;
};

/// Columns z_1..z_n of a unimodular matrix and d_1 | d_2 | ... | d_k such that
/// d_1 z_1, ..., d_k z_k is a basis of the lattice.
struct AdaptedBasis {
  std::vector<IntVector> basis;
  std::vector<Integer> divisors;
  /// Inverse of the basis matrix; row i gives the i-th coordinate in the basis.
  IntMatrix coordinates;
};

AdaptedBasis smith_basis(const IntegerLattice& lattice);

/// Throws DomainError on a dimension mismatch.
bool membership(const IntegerLattice& lattice, const IntVector& v);

/// Product of the divisors for full-rank lattices; nullopt when the index is infinite.
std::optional<Integer> lattice_index(const IntegerLattice& lattice);

Integer determinant(IntMatrix m);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
IntVector mat_vec(const IntMatrix& m, const IntVector& v);

struct CharacteristicReport {
  bool invariant = true;
  /// When not invariant: the automorphism, a generator and its image outside the lattice.
  std::string move;
  IntMatrix matrix;
  IntVector generator;
  IntVector image;
};

/// Invariance under the transvections x_i += x_j, coordinate swaps and sign
/// flips, which generate GL_n(Z) as a monoid.
CharacteristicReport is_characteristic(const IntegerLattice& lattice);

}  // namespace zsparse
