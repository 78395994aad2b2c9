#pragma once

// Constructive side of the vanishing results: translations and truncations of
// admissible words, head/tail splitting of cocycles, an explicit primitive for
// every B-valued cocycle with j = k + s >= 2, and lifting of bottom-row
// cocycles along a subring extension A ⊂ A<x>.

#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "koszulhh/hochschild.hpp"

namespace koszulhh {

/// Raised when an input cochain fails a cocycle relation.
class NotACocycle : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// R: (t_1..t_k) -> (t_k, t_1..t_{k-1}) for unstable words, identity on stable ones.
Word right_translate(const Alphabet& alphabet, const Word& w);
/// L: the inverse of R.
Word left_translate(const Alphabet& alphabet, const Word& w);
/// l drops the last letter, r drops the first.
Word left_truncate(const Word& w);
Word right_truncate(const Word& w);

struct Orbit {
  std::vector<Word> members;  // members[i + 1] = R(members[i]); members[0] is the least word
  bool stable = false;
  /// A one-element orbit whose word is not stable, e.g. (v, v).
  bool fixed_unstable = false;

  const Word& representative() const { return members.front(); }
};

/// All R-orbits of admissible words of length k, ordered by representative.
std::vector<Orbit> orbit_decomposition(const Alphabet& alphabet, int k, const ResourceCaps& caps = {});

/// Truncation set of an unstable orbit: l(O), which equals r(O).
std::vector<Word> truncation_set(const Orbit& orbit);

/// p(t) as an element of B: zero on V letters, the block indicator on A-atoms.
BitVector letter_projection(const CoefficientPair& pair, Letter t);

/// B-part of the value of f on word index w.
BitVector boolean_value(const CoefficientPair& pair, const Cochain& f, std::size_t w);

struct HeadTail {
  BitVector alpha;  // in (p(t_1))
  BitVector beta;   // in (p(t_k))
};

/// Splits f(t) = α + β. Throws NotACocycle when f(t) ∉ (p(t_1), p(t_k)).
HeadTail head_tail(const CoefficientPair& pair, const Cochain& f, std::size_t word);

/// Head/tail values along an orbit, in the order of orbit.members.
std::vector<HeadTail> head_tail(const CoefficientPair& pair, const Cochain& f, const Orbit& orbit);

/// First word where ∂f is nonzero, or -1 when f is a cocycle.
long first_cocycle_violation(const CoefficientPair& pair, const Cochain& f, const ResourceCaps& caps = {});

/// A cochain g of bidegree (k-1, s) with ∂g = f, built orbit by orbit.
/// Requires k >= 2, j = k + s >= 2 and f a cocycle. The result is checked
/// before it is returned.
Cochain solve_coboundary(const CoefficientPair& pair, const Cochain& f, const ResourceCaps& caps = {});

// ---------------------------------------------------------------- extension along A ⊂ A<x>

/// Letter maps between the alphabets of A and A<x> (V letters are fixed).
class SubringExtension {
 public:
  /// preferred selects the child block used by the section: the one inside
  /// supp(preferred) when a block of A splits.
  SubringExtension(const Subring& base, const BitVector& preferred);

  const Subring& base() const noexcept { return base_; }
  const Subring& extended() const noexcept { return extended_; }

  /// a*: child block -> parent block.
  std::size_t parent(std::size_t child) const { return parent_[child]; }
  /// s: parent block -> chosen child block.
  std::size_t section(std::size_t parent) const { return section_[parent]; }
  const std::vector<std::size_t>& children(std::size_t parent) const { return children_[parent]; }

  Word project(const Alphabet& big, const Word& w) const;   // a* on words
  Word lift(const Alphabet& small, const Word& w) const;    // s on words
  bool is_x_admissible(const Alphabet& big, const Word& w) const;

 private:
  Subring base_;
  Subring extended_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> section_;
  std::vector<std::vector<std::size_t>> children_;
};

struct ExtensionResult {
  CoefficientPair pair;  // V_* ⊓ A<x>_* with the same module
  Cochain cochain;
};

/// The lift f_x of a cocycle f of bidegree (k, 1-k) with B-valued values and
/// f = x·f: f_x(t) = f(a*(t)) if t = s(a*(t)), else 0.
ExtensionResult extend_cocycle(const CoefficientPair& pair, const BitVector& x, const Cochain& f,
                               const ResourceCaps& caps = {});

/// Any cocycle of bidegree (k, 1-k): strips the V part, splits the rest as
/// x·f + (1+x)·f, lifts each piece and adds the lifts.
ExtensionResult extend_cocycle_general(const CoefficientPair& pair, const BitVector& x, const Cochain& f,
                                       const ResourceCaps& caps = {});

/// Restriction along K^k_k(V ⊓ A) -> K^k_k(V ⊓ A<x>): every A-atom is the sum of its children.
Cochain restrict_cochain(const CoefficientPair& big, const CoefficientPair& small, const Cochain& h,
                         const ResourceCaps& caps = {});

/// Multiplies the B-part of every value by x and drops the V-part.
Cochain multiply_values(const CoefficientPair& pair, const Cochain& f, const BitVector& x);

// ---------------------------------------------------------------- bottom row and sampling

/// dim of cocycles of bidegree (k, -k), values in M_0.
std::size_t bottom_cocycles(const ConnectedSumAlgebra& alg, int k, const ResourceCaps& caps = {});

/// Uniform cocycles of one bidegree, drawn as random combinations of a kernel basis.
class CocycleSampler {
 public:
  CocycleSampler(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps = {});

  std::size_t dimension() const noexcept { return basis_.size(); }
  Cochain sample(std::mt19937_64& rng) const;

 private:
  Cochain zero_;
  std::vector<BitVector> basis_;
};

/// Uniform random cochain of one bidegree.
Cochain random_cochain(const CoefficientPair& pair, int k, int s, std::mt19937_64& rng, const ResourceCaps& caps = {});

}  // namespace koszulhh
