#pragma once

// Bigraded Hochschild cohomology HH^{k,s}(Q, M) for the coefficient pair
// Q = V_* ⊓ A_*, M = V_* ⊓ B_*, where A is a subring of the Boolean ring B.
//
// The reduced Koszul cochain complex has C^{k,s} = Hom(K^k_k(Q), M_{k+s}).
// A cochain is stored word-major: coordinate (w, e) sits at w * dim M_{k+s} + e.

#include <cstddef>
#include <memory>
#include <vector>

#include "koszulhh/algebra.hpp"
#include "koszulhh/caps.hpp"
#include "koszulhh/gf2.hpp"
#include "koszulhh/koszul.hpp"

namespace koszulhh {

class CoefficientPair {
 public:
  CoefficientPair(std::size_t v_dim, Subring subring);

  /// Q = M = V_* ⊓ B_*.
  static CoefficientPair same(const ConnectedSumAlgebra& alg);

  const ConnectedSumAlgebra& source() const noexcept { return source_; }
  const ConnectedSumAlgebra& module() const noexcept { return module_; }
  const Subring& subring() const noexcept { return subring_; }
  Alphabet alphabet() const { return Alphabet(source_); }
  std::size_t v_dim() const noexcept { return source_.v_dim(); }

  /// Image of a degree-1 generator of Q in M_1. A block acts as the sum of its atoms.
  GradedElement include(Letter t) const;

  /// Basis indices of t·e in M_{degree+1}, for e the index-th basis element of
  /// M_degree. Appends to out. Q is commutative, so left and right actions agree.
  void act_basis(Letter t, int degree, std::size_t index, std::vector<std::size_t>& out) const;

  /// t·e for an arbitrary element of M.
  GradedElement act(Letter t, const GradedElement& e) const;

 private:
  Subring subring_;
  ConnectedSumAlgebra source_;
  ConnectedSumAlgebra module_;
};

struct Cochain {
  int k = 0;
  int s = 0;
  std::shared_ptr<const KoszulBasis> basis;
  std::size_t value_dim = 0;  // dim M_{k+s}
  BitVector coords;

  int value_degree() const noexcept { return k + s; }
  std::size_t word_count() const { return basis->size(); }
  BitVector value(std::size_t word) const { return coords.slice(word * value_dim, value_dim); }
  void set_value(std::size_t word, const BitVector& v) { coords.assign(word * value_dim, v); }
  bool is_zero() const { return coords.none(); }
};

Cochain zero_cochain(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps = {});
/// Wraps a coordinate vector; throws when the length does not match.
Cochain make_cochain(const CoefficientPair& pair, int k, int s, BitVector coords, const ResourceCaps& caps = {});

/// Matrix of ∂ : C^{k,s} -> C^{k+1,s},
/// ∂f(t_1..t_{k+1}) = t_1·f(t_2..t_{k+1}) + f(t_1..t_k)·t_{k+1}.
SparseBitMatrix cochain_differential(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps = {});

/// ∂f evaluated directly from the formula, without assembling a matrix.
Cochain apply_differential(const CoefficientPair& pair, const Cochain& f, const ResourceCaps& caps = {});

struct HhReport {
  int k = 0;
  int s = 0;
  std::size_t cochains = 0;
  std::size_t cocycles = 0;
  std::size_t coboundaries = 0;
  std::size_t cohomology = 0;
};

HhReport hh_dim(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps = {});

struct KadeishviliReport {
  bool passed = true;
  std::vector<HhReport> cells;  // one per k = 3..max_k, with s = 2 - k
  std::vector<HhReport> failures;
};

/// HH^{k,2-k} = 0 for 3 <= k <= max_k.
KadeishviliReport kadeishvili_check(const CoefficientPair& pair, int max_k, const ResourceCaps& caps = {});

// ---------------------------------------------------------------- bar complex oracle
//
// The reduced bar cochains Hom(Q_+^{⊗q}, M) of internal shift s do not split
// by the internal degree d of the tensor argument: the outer terms of the
// Hochschild differential feed values on shorter tensors into longer ones.
// They are filtered by d instead. For each d we report X_d, the dimension of
// the image of H^k in the cohomology of the complex truncated to tensor degrees
// <= d. X_d is nondecreasing with limit dim HH^{k,s}; factor_d = X_d - X_{d-1}.
//
// Cocycles of the untruncated complex are approximated by cocycles of the
// complex truncated at D + lookahead. Too small a lookahead can only make X_d
// larger, never smaller.

inline constexpr int kDefaultBarLookahead = 1;

struct BarOracleReport {
  int k = 0;
  int s = 0;
  int max_degree = 0;
  int lookahead = 0;
  std::vector<std::size_t> cumulative;  // X_d, d = 0..max_degree
  std::vector<std::size_t> factors;     // factor_d
  std::size_t weight_blocks = 0;
  std::size_t cochains = 0;  // total size of C^k truncated at max_degree + lookahead

  std::size_t total() const { return cumulative.empty() ? 0 : cumulative.back(); }
  bool all_zero() const { return total() == 0; }
};

BarOracleReport hh_bar_oracle(const CoefficientPair& pair, int k, int s, int max_degree,
                              const ResourceCaps& caps = {}, int lookahead = kDefaultBarLookahead);

}  // namespace koszulhh
