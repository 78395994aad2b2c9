#pragma once

// Finite Boolean rings, their subrings, and the graded connected sum V_* ⊓ B_*
// of a dual algebra with a Boolean graded algebra.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "koszulhh/gf2.hpp"

namespace koszulhh {

/// A finite Boolean ring F_2^n, elements written in the atom basis.
/// Product is bitwise AND, sum is XOR.
class BooleanRing {
 public:
  explicit BooleanRing(std::size_t atoms);

  std::size_t atom_count() const noexcept { return atoms_; }

  BitVector zero() const { return BitVector(atoms_); }
  BitVector one() const;
  BitVector atom(std::size_t i) const { return BitVector::unit(atoms_, i); }
  BitVector element(const std::string& bits) const;

  BitVector multiply(const BitVector& a, const BitVector& b) const;
  BitVector add(const BitVector& a, const BitVector& b) const;

  bool contains(const BitVector& x) const noexcept { return x.size() == atoms_; }
  bool is_atom(const BitVector& x) const { return contains(x) && x.count() == 1; }
  /// The atoms e_i with e_i * x = e_i; x is their sum.
  std::vector<std::size_t> atoms_below(const BitVector& x) const { return x.support(); }

 private:
  std::size_t atoms_;
};

/// Rejects n = 0.
BooleanRing boolean_ring(std::size_t n);

/// z ∈ (x, y) iff (1 + x + y + xy) z = 0.
bool ideal_membership(const BooleanRing& r, const BitVector& z, const BitVector& x, const BitVector& y);

/// For xy = 0 and z ∈ (x, y): the unique z = z_x + z_y with z_x ∈ (x), z_y ∈ (y).
std::pair<BitVector, BitVector> ideal_decompose(const BooleanRing& r, const BitVector& z,
                                                const BitVector& x, const BitVector& y);

/// A subring of F_2^N given by a partition of the ambient atoms into blocks.
/// Its elements are the unions of blocks; its atoms are the block indicators.
/// Blocks are kept sorted internally and ordered by their smallest atom.
class Subring {
 public:
  Subring(std::size_t ambient_atoms, std::vector<std::vector<std::size_t>> blocks);

  /// The whole ring: every atom is its own block.
  static Subring full(std::size_t ambient_atoms);
  /// The two-element subring {0, 1}.
  static Subring trivial(std::size_t ambient_atoms);

  std::size_t ambient_atoms() const noexcept { return ambient_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t atom) const { return block_of_.at(atom); }

  /// Indicator of block b as an ambient element.
  BitVector block_element(std::size_t b) const;
  /// x lies in the subring iff it is constant on every block.
  bool contains(const BitVector& x) const;
  /// True when every block of `finer` lies inside a block of this subring.
  bool is_refined_by(const Subring& finer) const;

  bool operator==(const Subring& other) const { return ambient_ == other.ambient_ && blocks_ == other.blocks_; }

 private:
  std::size_t ambient_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// The subring generated by a and x: every block is cut by the support of x.
Subring adjoin(const Subring& a, const BitVector& x);

/// An element of one graded piece of a ConnectedSumAlgebra.
struct GradedElement {
  int degree = 0;
  BitVector coeffs;

  bool is_zero() const { return coeffs.none(); }
  bool operator==(const GradedElement& other) const = default;
};

/// V_* ⊓ B_* with dim V = m and B = F_2^n.
///
/// Basis of each piece:
///   degree 0      : {1}
///   degree 1      : v_1..v_m, then x_1..x_n
///   degree j >= 2 : x_1..x_n  (B_j identified with B)
/// 1 is a unit, every product involving a v in positive degree vanishes,
/// and x_i * x_j = δ_ij x_i with degrees adding.
class ConnectedSumAlgebra {
 public:
  ConnectedSumAlgebra(std::size_t v_dim, std::size_t atoms) : v_dim_(v_dim), atoms_(atoms) {}

  std::size_t v_dim() const noexcept { return v_dim_; }
  std::size_t atom_count() const noexcept { return atoms_; }
  /// Number of degree-1 generators, m + n.
  std::size_t generator_count() const noexcept { return v_dim_ + atoms_; }

  std::size_t graded_dim(int degree) const noexcept;

  GradedElement zero(int degree) const { return {degree, BitVector(graded_dim(degree))}; }
  GradedElement unit() const;
  GradedElement basis_element(int degree, std::size_t index) const;
  GradedElement v(std::size_t i) const;
  /// Atom x_i placed in the given positive degree.
  GradedElement x(std::size_t i, int degree = 1) const;

  /// Offset of the J block inside a piece of the given degree.
  std::size_t atom_offset(int degree) const noexcept { return degree == 1 ? v_dim_ : 0; }
  /// The J part of a positive-degree element as an element of B.
  BitVector boolean_part(const GradedElement& e) const;
  /// Embeds b ∈ B into the given positive degree.
  GradedElement from_boolean(const BitVector& b, int degree) const;

  std::string basis_label(int degree, std::size_t index) const;

  bool operator==(const ConnectedSumAlgebra& other) const = default;

 private:
  std::size_t v_dim_;
  std::size_t atoms_;
};

ConnectedSumAlgebra connected_sum_algebra(std::size_t v_dim, const BooleanRing& ring);

GradedElement graded_multiply(const ConnectedSumAlgebra& alg, const GradedElement& u, const GradedElement& w);

}  // namespace koszulhh
