#pragma once

// Finite dg-algebras over F_2, Massey products with defining systems, and
// lifting along acyclic fibrations (degreewise surjective quasi-isomorphisms).
//
// Everything is truncated at a top degree: products landing above it are
// dropped, which is a quotient by a dg ideal. Signs are trivial.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "koszulhh/algebra.hpp"
#include "koszulhh/caps.hpp"
#include "koszulhh/gf2.hpp"

namespace koszulhh {

class DgAlgebra {
 public:
  /// Zero differential and zero multiplication; the unit must be set separately.
  explicit DgAlgebra(std::vector<std::size_t> dims);

  int top_degree() const noexcept { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int degree) const noexcept;
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t total_dim() const noexcept;

  /// δ : degree d -> degree d + 1, a dim(d+1) x dim(d) matrix.
  const BitMatrix& differential(int degree) const;
  void set_differential(int degree, BitMatrix m);
  bool has_trivial_differential() const;

  /// Product of basis elements (d1, i) and (d2, j); a vector of length dim(d1 + d2).
  const BitVector& product(int d1, std::size_t i, int d2, std::size_t j) const;
  void set_product(int d1, std::size_t i, int d2, std::size_t j, BitVector value);

  const BitVector& unit() const noexcept { return unit_; }
  void set_unit(BitVector unit);

  GradedElement zero(int degree) const { return {degree, BitVector(dim(degree))}; }
  GradedElement basis_element(int degree, std::size_t i) const { return {degree, BitVector::unit(dim(degree), i)}; }
  GradedElement multiply(const GradedElement& a, const GradedElement& b) const;
  GradedElement d(const GradedElement& a) const;

  bool is_cocycle(const GradedElement& a) const { return d(a).is_zero(); }
  /// Some c with δc = a, if a is a coboundary.
  std::optional<GradedElement> primitive(const GradedElement& a) const;
  bool is_coboundary(const GradedElement& a) const { return primitive(a).has_value(); }

  std::vector<BitVector> cocycle_basis(int degree) const;
  std::size_t cohomology_dim(int degree) const;
  /// Reduced representative of a + im δ: equal classes give equal vectors.
  BitVector canonical(const GradedElement& a) const;

  /// First violated axiom (δδ = 0, Leibniz, associativity, unit), or empty.
  std::string validate() const;

 private:
  std::size_t flat(int degree, std::size_t i) const { return offsets_[static_cast<std::size_t>(degree)] + i; }
  void check(const GradedElement& a) const;

  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<BitMatrix> differential_;
  std::vector<BitVector> products_;  // flat(a) * total + flat(b)
  BitVector unit_;
  BitVector empty_;
};

/// V_* ⊓ B_* truncated at top_degree, with zero differential.
DgAlgebra dg_algebra_from_connected_sum(const ConnectedSumAlgebra& alg, int top_degree);

class DgMap {
 public:
  DgMap(std::shared_ptr<const DgAlgebra> source, std::shared_ptr<const DgAlgebra> target,
        std::vector<BitMatrix> matrices);

  static DgMap identity(std::shared_ptr<const DgAlgebra> a);

  const DgAlgebra& source() const noexcept { return *source_; }
  const DgAlgebra& target() const noexcept { return *target_; }
  const BitMatrix& matrix(int degree) const { return matrices_.at(static_cast<std::size_t>(degree)); }

  GradedElement apply(const GradedElement& a) const;

  /// First violated condition (chain map, multiplicative, unital), or empty.
  std::string validate() const;
  bool surjective() const noexcept { return surjective_; }
  bool quasi_isomorphism() const noexcept { return quasi_iso_; }
  bool acyclic_fibration() const noexcept { return surjective_ && quasi_iso_; }

 private:
  std::shared_ptr<const DgAlgebra> source_;
  std::shared_ptr<const DgAlgebra> target_;
  std::vector<BitMatrix> matrices_;
  bool surjective_ = false;
  bool quasi_iso_ = false;
};

struct CohomologyClass {
  GradedElement representative;
  int degree() const noexcept { return representative.degree; }
};

bool same_class(const DgAlgebra& a, const GradedElement& x, const GradedElement& y);
bool is_zero_class(const DgAlgebra& a, const GradedElement& x);

/// Entries a_{ij}, 1 <= i < j <= n + 1, (i, j) != (1, n + 1).
struct DefiningSystem {
  std::vector<int> degrees;  // d_1..d_n
  std::map<std::pair<int, int>, GradedElement> entries;

  int n() const noexcept { return static_cast<int>(degrees.size()); }
  /// d_ij = Σ_{s=i}^{j-1} d_s - (j - 1 - i).
  int entry_degree(int i, int j) const;
  /// Degree of the Massey product, Σ d_i - n + 2.
  int product_degree() const;
  const GradedElement& at(int i, int j) const { return entries.at({i, j}); }
};

/// First violated relation of a defining system, or empty.
std::string validate_defining_system(const DgAlgebra& a, const DefiningSystem& ds);

/// Σ_{k=2}^{n} a_{1k} a_{k,n+1}. Throws std::invalid_argument on an invalid system.
CohomologyClass massey_product(const DgAlgebra& a, const DefiningSystem& ds);

/// a_{i,i+1} = a_i and every other entry zero. Needs trivial differential and
/// a_i a_{i+1} = 0 as elements.
DefiningSystem trivial_defining_system(const DgAlgebra& h, const std::vector<GradedElement>& classes);

/// A random defining system for the given cocycles: adjacent entries move by
/// random coboundaries, interior entries are a primitive plus a random cocycle.
/// Empty when some partial system has no extension along the chosen path.
std::optional<DefiningSystem> random_defining_system(const DgAlgebra& a, const std::vector<GradedElement>& classes,
                                                     std::mt19937_64& rng);

/// Error raised when a lifting step has no solution.
class NotAnAcyclicFibration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A source cocycle a with q(a) = b.
GradedElement lift_cocycle(const DgMap& q, const GradedElement& b);
/// A source element e with q(e) = c and δe = d, given δc = q(d) and δd = 0.
GradedElement lift_coboundary(const DgMap& q, const GradedElement& d, const GradedElement& c);
/// A source defining system mapping entrywise onto ds.
DefiningSystem lift_defining_system(const DgMap& q, const std::vector<GradedElement>& classes,
                                    const DefiningSystem& ds);

/// Canonical representatives of every class in <a_1, ..., a_n>, found by
/// enumerating all defining systems. Throws CapExceeded when the search space
/// exceeds max_space.
std::vector<BitVector> massey_product_set(const DgAlgebra& a, const std::vector<GradedElement>& classes,
                                          std::size_t max_space = std::size_t{1} << 20);

struct MasseyCheckReport {
  std::size_t samples = 0;
  std::size_t zero_products = 0;
  std::size_t tuples_without_zero_entry = 0;
  std::vector<std::vector<GradedElement>> counterexamples;
  bool passed() const noexcept { return counterexamples.empty(); }
};

struct MasseySampling {
  std::size_t samples = 200;
  int max_n = 5;
  std::vector<int> class_degrees{1, 2};
  std::uint64_t seed = 1;
};

/// Samples tuples with vanishing neighbouring products and checks that the
/// trivial defining system gives the zero class.
MasseyCheckReport strong_massey_check(const DgAlgebra& h, const MasseySampling& options);

/// A random tuple of length n with a_i a_{i+1} = 0, each a_{i+1} drawn
/// uniformly from the annihilator of a_i in its degree.
std::vector<GradedElement> sample_annihilating_tuple(const DgAlgebra& h, const std::vector<int>& degrees,
                                                     std::mt19937_64& rng);

struct Fibration {
  std::shared_ptr<const DgAlgebra> source;
  std::shared_ptr<const DgAlgebra> target;
  DgMap map;
};

/// S = T ⊕ (acyclic pairs e -> δe) with cone_dims[d] pairs starting in degree d,
/// products involving the pairs zero except with the unit, q the projection.
/// With scramble set, S is transported along random basis changes. T must have
/// dim T_0 = 1 with the unit as its basis vector.
Fibration make_acyclic_fibration(std::shared_ptr<const DgAlgebra> target, const std::vector<std::size_t>& cone_dims,
                                 std::mt19937_64& rng, bool scramble = true);

}  // namespace koszulhh
