#include "koszulhh/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace koszulhh {

// ---------------------------------------------------------------- BooleanRing

BooleanRing::BooleanRing(std::size_t atoms) : atoms_(atoms) {
  if (atoms == 0) throw std::invalid_argument("a Boolean ring needs at least one atom");
}

BitVector BooleanRing::one() const { return ~BitVector(atoms_); }

BitVector BooleanRing::element(const std::string& bits) const {
  auto v = BitVector::from_string(bits);
  if (v.size() != atoms_) throw std::invalid_argument("element length does not match atom count");
  return v;
}

BitVector BooleanRing::multiply(const BitVector& a, const BitVector& b) const { return a & b; }

BitVector BooleanRing::add(const BitVector& a, const BitVector& b) const { return a ^ b; }

BooleanRing boolean_ring(std::size_t n) { return BooleanRing(n); }

bool ideal_membership(const BooleanRing& r, const BitVector& z, const BitVector& x, const BitVector& y) {
  // 1 + x + y + xy is the complement of x ∨ y.
  const auto witness = r.one() ^ x ^ y ^ (x & y);
  return (witness & z).none();
}

std::pair<BitVector, BitVector> ideal_decompose(const BooleanRing& r, const BitVector& z, const BitVector& x,
                                                const BitVector& y) {
  if ((x & y).any()) throw std::invalid_argument("ideal_decompose: generators are not orthogonal");
  if (!ideal_membership(r, z, x, y)) throw std::invalid_argument("ideal_decompose: z is not in (x, y)");
  return {x & z, y & z};
}

// ---------------------------------------------------------------- Subring

Subring::Subring(std::size_t ambient_atoms, std::vector<std::vector<std::size_t>> blocks)
    : ambient_(ambient_atoms), blocks_(std::move(blocks)), block_of_(ambient_atoms, ambient_atoms) {
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("subring blocks must be nonempty");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (auto atom : blocks_[i]) {
      if (atom >= ambient_) throw std::invalid_argument("subring block refers to a missing atom");
      if (block_of_[atom] != ambient_) throw std::invalid_argument("subring blocks overlap");
      block_of_[atom] = i;
    }
  }
  if (std::find(block_of_.begin(), block_of_.end(), ambient_) != block_of_.end()) {
    throw std::invalid_argument("subring blocks do not cover every atom");
  }
}

Subring Subring::full(std::size_t ambient_atoms) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < ambient_atoms; ++i) blocks.push_back({i});
  return Subring(ambient_atoms, std::move(blocks));
}

Subring Subring::trivial(std::size_t ambient_atoms) {
  std::vector<std::size_t> all(ambient_atoms);
  for (std::size_t i = 0; i < ambient_atoms; ++i) all[i] = i;
  if (all.empty()) return Subring(0, {});
  return Subring(ambient_atoms, {all});
}

BitVector Subring::block_element(std::size_t b) const {
  BitVector v(ambient_);
  for (auto atom : blocks_.at(b)) v.set(atom);
  return v;
}

bool Subring::contains(const BitVector& x) const {
  if (x.size() != ambient_) return false;
  return std::all_of(blocks_.begin(), blocks_.end(), [&](const auto& b) {
    const bool first = x.test(b.front());
    return std::all_of(b.begin(), b.end(), [&](std::size_t a) { return x.test(a) == first; });
  });
}

bool Subring::is_refined_by(const Subring& finer) const {
  if (finer.ambient_ != ambient_) return false;
  return std::all_of(finer.blocks_.begin(), finer.blocks_.end(), [&](const auto& b) {
    const auto parent = block_of_[b.front()];
    return std::all_of(b.begin(), b.end(), [&](std::size_t a) { return block_of_[a] == parent; });
  });
}

Subring adjoin(const Subring& a, const BitVector& x) {
  if (x.size() != a.ambient_atoms()) throw std::invalid_argument("adjoin: element is not in the ambient ring");
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& b : a.blocks()) {
    std::vector<std::size_t> in, out;
    for (auto atom : b) (x.test(atom) ? in : out).push_back(atom);
    if (!in.empty()) blocks.push_back(std::move(in));
    if (!out.empty()) blocks.push_back(std::move(out));
  }
  return Subring(a.ambient_atoms(), std::move(blocks));
}

// ---------------------------------------------------------------- ConnectedSumAlgebra

std::size_t ConnectedSumAlgebra::graded_dim(int degree) const noexcept {
  if (degree < 0) return 0;
  if (degree == 0) return 1;
  if (degree == 1) return v_dim_ + atoms_;
  return atoms_;
}

GradedElement ConnectedSumAlgebra::unit() const { return basis_element(0, 0); }

GradedElement ConnectedSumAlgebra::basis_element(int degree, std::size_t index) const {
  if (index >= graded_dim(degree)) throw std::out_of_range("basis index out of range");
  return {degree, BitVector::unit(graded_dim(degree), index)};
}

GradedElement ConnectedSumAlgebra::v(std::size_t i) const {
  if (i >= v_dim_) throw std::out_of_range("v index out of range");
  return basis_element(1, i);
}

GradedElement ConnectedSumAlgebra::x(std::size_t i, int degree) const {
  if (i >= atoms_) throw std::out_of_range("atom index out of range");
  if (degree < 1) throw std::invalid_argument("atoms live in positive degrees");
  return basis_element(degree, atom_offset(degree) + i);
}

BitVector ConnectedSumAlgebra::boolean_part(const GradedElement& e) const {
  if (e.degree < 1) throw std::invalid_argument("boolean_part needs a positive degree");
  return e.coeffs.slice(atom_offset(e.degree), atoms_);
}

GradedElement ConnectedSumAlgebra::from_boolean(const BitVector& b, int degree) const {
  if (degree < 1) throw std::invalid_argument("from_boolean needs a positive degree");
  auto e = zero(degree);
  e.coeffs.assign(atom_offset(degree), b);
  return e;
}

std::string ConnectedSumAlgebra::basis_label(int degree, std::size_t index) const {
  if (degree == 0) return "1";
  if (degree == 1 && index < v_dim_) return "v" + std::to_string(index + 1);
  const auto atom = index - atom_offset(degree);
  std::string label = "x" + std::to_string(atom + 1);
  if (degree > 1) label += "^" + std::to_string(degree);
  return label;
}

ConnectedSumAlgebra connected_sum_algebra(std::size_t v_dim, const BooleanRing& ring) {
  return ConnectedSumAlgebra(v_dim, ring.atom_count());
}

GradedElement graded_multiply(const ConnectedSumAlgebra& alg, const GradedElement& u, const GradedElement& w) {
  if (u.coeffs.size() != alg.graded_dim(u.degree) || w.coeffs.size() != alg.graded_dim(w.degree)) {
    throw std::invalid_argument("graded_multiply: element does not belong to the algebra");
  }
  const int degree = u.degree + w.degree;
  if (u.degree == 0) {
    return u.coeffs.test(0) ? GradedElement{degree, w.coeffs} : alg.zero(degree);
  }
  if (w.degree == 0) {
    return w.coeffs.test(0) ? GradedElement{degree, u.coeffs} : alg.zero(degree);
  }
  // Both positive: only the Boolean parts survive.
  return alg.from_boolean(alg.boolean_part(u) & alg.boolean_part(w), degree);
}

}  // namespace koszulhh
