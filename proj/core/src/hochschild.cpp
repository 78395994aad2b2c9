#include "koszulhh/hochschild.hpp"

#include <stdexcept>

namespace koszulhh {

CoefficientPair::CoefficientPair(std::size_t v_dim, Subring subring)
    : subring_(std::move(subring)),
      source_(v_dim, subring_.block_count()),
      module_(v_dim, subring_.ambient_atoms()) {}

CoefficientPair CoefficientPair::same(const ConnectedSumAlgebra& alg) {
  return CoefficientPair(alg.v_dim(), Subring::full(alg.atom_count()));
}

GradedElement CoefficientPair::include(Letter t) const {
  auto out = module_.zero(1);
  std::vector<std::size_t> idx;
  act_basis(t, 0, 0, idx);
  for (auto i : idx) out.coeffs.flip(i);
  return out;
}

void CoefficientPair::act_basis(Letter t, int degree, std::size_t index, std::vector<std::size_t>& out) const {
  const std::size_t m = source_.v_dim();
  if (degree == 0) {
    if (t < m) {
      out.push_back(t);
    } else {
      for (auto atom : subring_.blocks()[t - m]) out.push_back(m + atom);
    }
    return;
  }
  if (t < m) return;
  const auto offset = module_.atom_offset(degree);
  if (index < offset) return;
  const auto atom = index - offset;
  if (subring_.block_of(atom) != t - m) return;
  out.push_back(module_.atom_offset(degree + 1) + atom);
}

GradedElement CoefficientPair::act(Letter t, const GradedElement& e) const {
  auto out = module_.zero(e.degree + 1);
  std::vector<std::size_t> idx;
  for (auto i : e.coeffs.support()) act_basis(t, e.degree, i, idx);
  for (auto i : idx) out.coeffs.flip(i);
  return out;
}

// ---------------------------------------------------------------- cochains

namespace {

std::shared_ptr<const KoszulBasis> basis_for(const CoefficientPair& pair, int k, const ResourceCaps& caps) {
  return std::make_shared<const KoszulBasis>(admissible_sequences(pair.alphabet(), k, caps));
}

}  // namespace

Cochain zero_cochain(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps) {
  if (k < 0) throw std::invalid_argument("cochain length must be nonnegative");
  Cochain c;
  c.k = k;
  c.s = s;
  c.basis = basis_for(pair, k, caps);
  c.value_dim = pair.module().graded_dim(k + s);
  c.coords = BitVector(c.basis->size() * c.value_dim);
  return c;
}

Cochain make_cochain(const CoefficientPair& pair, int k, int s, BitVector coords, const ResourceCaps& caps) {
  auto c = zero_cochain(pair, k, s, caps);
  if (coords.size() != c.coords.size()) throw std::invalid_argument("cochain coordinates have the wrong length");
  c.coords = std::move(coords);
  return c;
}

SparseBitMatrix cochain_differential(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps) {
  if (k < 0) throw std::invalid_argument("cochain_differential: negative k");
  const auto from = admissible_sequences(pair.alphabet(), k, caps);
  const auto to = admissible_sequences(pair.alphabet(), k + 1, caps);
  const int j = k + s;
  const auto& mod = pair.module();
  const std::size_t src_dim = mod.graded_dim(j);
  const std::size_t dst_dim = mod.graded_dim(j + 1);
  const auto ku = static_cast<std::size_t>(k);

  SparseBitMatrix d(to.size() * dst_dim, from.size() * src_dim);
  if (src_dim == 0 || dst_dim == 0) return d;
  std::vector<std::size_t> hits;
  for (std::size_t u = 0; u < to.size(); ++u) {
    const Word& word = to.word(u);
    const auto tail = *from.find(word.data() + 1, ku);
    const auto head = *from.find(word.data(), ku);
    for (std::size_t e = 0; e < src_dim; ++e) {
      hits.clear();
      pair.act_basis(word.front(), j, e, hits);
      for (auto h : hits) d.toggle(u * dst_dim + h, tail * src_dim + e);
      hits.clear();
      pair.act_basis(word.back(), j, e, hits);
      for (auto h : hits) d.toggle(u * dst_dim + h, head * src_dim + e);
    }
  }
  d.normalize();
  return d;
}

Cochain apply_differential(const CoefficientPair& pair, const Cochain& f, const ResourceCaps& caps) {
  auto out = zero_cochain(pair, f.k + 1, f.s, caps);
  if (f.value_dim == 0 || out.value_dim == 0) return out;
  const auto ku = static_cast<std::size_t>(f.k);
  const int j = f.value_degree();
  std::vector<std::size_t> hits;
  for (std::size_t u = 0; u < out.basis->size(); ++u) {
    const Word& word = out.basis->word(u);
    const auto tail = *f.basis->find(word.data() + 1, ku);
    const auto head = *f.basis->find(word.data(), ku);
    hits.clear();
    for (std::size_t e = 0; e < f.value_dim; ++e) {
      if (f.coords.test(tail * f.value_dim + e)) pair.act_basis(word.front(), j, e, hits);
      if (f.coords.test(head * f.value_dim + e)) pair.act_basis(word.back(), j, e, hits);
    }
    for (auto h : hits) out.coords.flip(u * out.value_dim + h);
  }
  return out;
}

HhReport hh_dim(const CoefficientPair& pair, int k, int s, const ResourceCaps& caps) {
  if (k < 0) throw std::invalid_argument("hh_dim: negative k");
  HhReport r;
  r.k = k;
  r.s = s;
  const auto d = cochain_differential(pair, k, s, caps);
  r.cochains = d.cols();
  if (r.cochains == 0) return r;
  r.cocycles = r.cochains - rank(d);
  if (k > 0) r.coboundaries = rank(cochain_differential(pair, k - 1, s, caps));
  if (r.coboundaries > r.cocycles) throw std::logic_error("hh_dim: coboundaries exceed cocycles");
  r.cohomology = r.cocycles - r.coboundaries;
  return r;
}

KadeishviliReport kadeishvili_check(const CoefficientPair& pair, int max_k, const ResourceCaps& caps) {
  if (max_k < 3) throw std::invalid_argument("kadeishvili_check: max_k must be at least 3");
  KadeishviliReport report;
  for (int k = 3; k <= max_k; ++k) {
    auto cell = hh_dim(pair, k, 2 - k, caps);
    if (cell.cohomology != 0) {
      report.passed = false;
      report.failures.push_back(cell);
    }
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace koszulhh
