#pragma once

// Koszul complexes of connected sums V_* ⊓ B_*.
//
// Degree-1 generators are numbered in canonical order: letters 0..m-1 are the
// basis v_1..v_m of V (tag I), letters m..m+n-1 are the atoms x_1..x_n (tag J).
// A word t_1..t_k is admissible when no two adjacent letters are the same atom.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "koszulhh/algebra.hpp"
#include "koszulhh/caps.hpp"
#include "koszulhh/gf2.hpp"

namespace koszulhh {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

/// The generator set I ∪ J of a connected sum.
struct Alphabet {
  std::size_t v_dim = 0;
  std::size_t atoms = 0;

  explicit Alphabet(const ConnectedSumAlgebra& alg) : v_dim(alg.v_dim()), atoms(alg.atom_count()) {}
  Alphabet(std::size_t v, std::size_t n) : v_dim(v), atoms(n) {}

  std::size_t size() const noexcept { return v_dim + atoms; }
  bool is_atom(Letter t) const noexcept { return t >= v_dim; }
  std::size_t atom_index(Letter t) const noexcept { return t - v_dim; }
  Letter atom_letter(std::size_t atom) const noexcept { return static_cast<Letter>(v_dim + atom); }

  bool is_admissible(const Word& w) const;
  /// First and last letters are the same atom.
  bool is_stable(const Word& w) const;

  std::string label(Letter t) const;
  std::string format(const Word& w) const;
  /// Parses "v1,x2,x1" (1-based indices); the empty string is the empty word.
  Word parse(const std::string& text) const;
};

/// Number of admissible words of length k, without enumerating them.
std::size_t admissible_count(const Alphabet& alphabet, int k);

/// The admissible words of one length in lexicographic order; this is the
/// monomial basis of K^k_k.
class KoszulBasis {
 public:
  KoszulBasis(Alphabet alphabet, int k, std::vector<Word> words);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int length() const noexcept { return k_; }
  std::size_t size() const noexcept { return words_.size(); }
  const Word& word(std::size_t i) const { return words_[i]; }
  const std::vector<Word>& words() const noexcept { return words_; }

  std::optional<std::size_t> find(const Word& w) const;
  /// Like find, but the word is given as a slice of a longer word.
  std::optional<std::size_t> find(const Letter* begin, std::size_t length) const;

 private:
  Alphabet alphabet_;
  int k_;
  std::vector<Word> words_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

KoszulBasis admissible_sequences(const ConnectedSumAlgebra& alg, int k, const ResourceCaps& caps = {});
KoszulBasis admissible_sequences(const Alphabet& alphabet, int k, const ResourceCaps& caps = {});

/// Mixed-radix position of a word inside the k-fold tensor power of the
/// degree-1 piece; the first letter is the most significant digit.
std::uint64_t tensor_index(const Alphabet& alphabet, const Letter* begin, std::size_t length);

/// K^k_k computed directly as an intersection of shifted copies of the
/// relation space R = ker(V ⊗ V -> A_2), inside V^{⊗k}.
struct GenericKoszulSpace {
  int k = 0;
  std::size_t ambient_dim = 0;  // (m + n)^k
  BitMatrix constraints;        // K^k_k is its kernel
  std::vector<BitVector> basis;

  std::size_t dimension() const noexcept { return basis.size(); }
  bool contains(const BitVector& tensor) const { return constraints.multiply(tensor).none(); }
};

GenericKoszulSpace koszul_space_generic(const ConnectedSumAlgebra& alg, int k, const ResourceCaps& caps = {});

/// Multiplication V ⊗ V -> A_2 in the tensor basis; R is its kernel.
BitMatrix quadratic_multiplication(const ConnectedSumAlgebra& alg);

struct KoszulDegreeReport {
  int internal_degree = 0;
  std::vector<std::size_t> chain_dims;  // dim of K_i in this internal degree, i = 0..d
  std::vector<std::size_t> homology;    // dim H_i
  std::size_t algebra_dim = 0;          // dim A_d
  bool d_squared_zero = true;
};

struct KoszulFailure {
  int internal_degree = 0;
  int homological_degree = 0;
  std::size_t homology_dim = 0;
  std::string reason;
};

struct KoszulReport {
  bool passed = true;
  std::vector<KoszulDegreeReport> degrees;
  std::vector<KoszulFailure> failures;
};

/// Checks degreewise that A ⊗ K^i_i ⊗ A resolves A: d∘d = 0, H_i = 0 for
/// i > 0 and H_0 has the dimension of A_d, for internal degrees d <= max_degree.
KoszulReport verify_koszul(const ConnectedSumAlgebra& alg, int max_degree, const ResourceCaps& caps = {});

}  // namespace koszulhh
