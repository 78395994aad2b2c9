#include "koszulhh/massey.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace koszulhh {

// ---------------------------------------------------------------- DgAlgebra

DgAlgebra::DgAlgebra(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("a dg-algebra needs at least degree 0");
  offsets_.resize(dims_.size() + 1, 0);
  for (std::size_t d = 0; d < dims_.size(); ++d) offsets_[d + 1] = offsets_[d] + dims_[d];
  for (int d = 0; d <= top_degree(); ++d) differential_.emplace_back(dim(d + 1), dim(d));
  const auto total = total_dim();
  products_.resize(total * total);
  for (int d1 = 0; d1 <= top_degree(); ++d1) {
    for (int d2 = 0; d2 <= top_degree(); ++d2) {
      for (std::size_t i = 0; i < dim(d1); ++i) {
        for (std::size_t j = 0; j < dim(d2); ++j) products_[flat(d1, i) * total + flat(d2, j)] = BitVector(dim(d1 + d2));
      }
    }
  }
  unit_ = BitVector(dim(0));
}

std::size_t DgAlgebra::dim(int degree) const noexcept {
  if (degree < 0 || degree > top_degree()) return 0;
  return dims_[static_cast<std::size_t>(degree)];
}

std::size_t DgAlgebra::total_dim() const noexcept { return offsets_.back(); }

const BitMatrix& DgAlgebra::differential(int degree) const {
  if (degree < 0 || degree > top_degree()) throw std::out_of_range("differential: degree out of range");
  return differential_[static_cast<std::size_t>(degree)];
}

void DgAlgebra::set_differential(int degree, BitMatrix m) {
  if (degree < 0 || degree > top_degree()) throw std::out_of_range("set_differential: degree out of range");
  if (m.rows() != dim(degree + 1) || m.cols() != dim(degree)) {
    throw std::invalid_argument("set_differential: matrix has the wrong shape in degree " + std::to_string(degree));
  }
  differential_[static_cast<std::size_t>(degree)] = std::move(m);
}

bool DgAlgebra::has_trivial_differential() const {
  for (const auto& m : differential_) {
    if (!m.is_zero()) return false;
  }
  return true;
}

const BitVector& DgAlgebra::product(int d1, std::size_t i, int d2, std::size_t j) const {
  if (i >= dim(d1) || j >= dim(d2)) throw std::out_of_range("product: basis index out of range");
  return products_[flat(d1, i) * total_dim() + flat(d2, j)];
}

void DgAlgebra::set_product(int d1, std::size_t i, int d2, std::size_t j, BitVector value) {
  if (i >= dim(d1) || j >= dim(d2)) throw std::out_of_range("set_product: basis index out of range");
  if (value.size() != dim(d1 + d2)) throw std::invalid_argument("set_product: value has the wrong length");
  products_[flat(d1, i) * total_dim() + flat(d2, j)] = std::move(value);
}

void DgAlgebra::set_unit(BitVector unit) {
  if (unit.size() != dim(0)) throw std::invalid_argument("set_unit: unit has the wrong length");
  unit_ = std::move(unit);
}

void DgAlgebra::check(const GradedElement& a) const {
  if (a.coeffs.size() != dim(a.degree)) {
    throw std::invalid_argument("element of degree " + std::to_string(a.degree) + " has the wrong length");
  }
}

GradedElement DgAlgebra::multiply(const GradedElement& a, const GradedElement& b) const {
  check(a);
  check(b);
  auto out = zero(a.degree + b.degree);
  if (out.coeffs.empty()) return out;
  for (auto i : a.coeffs.support()) {
    for (auto j : b.coeffs.support()) out.coeffs ^= product(a.degree, i, b.degree, j);
  }
  return out;
}

GradedElement DgAlgebra::d(const GradedElement& a) const {
  check(a);
  if (a.degree < 0 || a.degree > top_degree()) return zero(a.degree + 1);
  return {a.degree + 1, differential(a.degree).multiply(a.coeffs)};
}

std::optional<GradedElement> DgAlgebra::primitive(const GradedElement& a) const {
  check(a);
  if (a.is_zero()) return zero(a.degree - 1);
  if (a.degree <= 0) return std::nullopt;
  auto x = solve(differential(a.degree - 1), a.coeffs);
  if (!x) return std::nullopt;
  return GradedElement{a.degree - 1, std::move(*x)};
}

std::vector<BitVector> DgAlgebra::cocycle_basis(int degree) const {
  if (dim(degree) == 0) return {};
  return kernel_basis(differential(degree));
}

std::size_t DgAlgebra::cohomology_dim(int degree) const {
  if (dim(degree) == 0) return 0;
  const std::size_t z = cocycle_basis(degree).size();
  const std::size_t b = degree > 0 ? rank(differential(degree - 1)) : 0;
  return z - b;
}

BitVector DgAlgebra::canonical(const GradedElement& a) const {
  check(a);
  EchelonBasis boundaries(dim(a.degree));
  if (a.degree > 0 && dim(a.degree) > 0) {
    const auto& m = differential(a.degree - 1);
    for (std::size_t c = 0; c < m.cols(); ++c) boundaries.insert(m.column(c));
  }
  return boundaries.reduce(a.coeffs);
}

std::string DgAlgebra::validate() const {
  const int top = top_degree();
  for (int d = 0; d + 1 <= top; ++d) {
    if (!differential(d + 1).multiply(differential(d)).is_zero()) {
      return "differential does not square to zero in degree " + std::to_string(d);
    }
  }
  for (int d1 = 0; d1 <= top; ++d1) {
    for (int d2 = 0; d2 <= top; ++d2) {
      for (std::size_t i = 0; i < dim(d1); ++i) {
        for (std::size_t j = 0; j < dim(d2); ++j) {
          const auto x = basis_element(d1, i);
          const auto y = basis_element(d2, j);
          const auto lhs = d(multiply(x, y));
          auto rhs = multiply(d(x), y);
          rhs.coeffs ^= multiply(x, d(y)).coeffs;
          if (lhs.coeffs != rhs.coeffs) {
            return "Leibniz rule fails on basis pair (" + std::to_string(d1) + "," + std::to_string(i) + ") x (" +
                   std::to_string(d2) + "," + std::to_string(j) + ")";
          }
          for (int d3 = 0; d1 + d2 + d3 <= top; ++d3) {
            for (std::size_t l = 0; l < dim(d3); ++l) {
              const auto z = basis_element(d3, l);
              if (multiply(multiply(x, y), z).coeffs != multiply(x, multiply(y, z)).coeffs) {
                return "associativity fails in degrees " + std::to_string(d1) + "," + std::to_string(d2) + "," +
                       std::to_string(d3);
              }
            }
          }
        }
      }
    }
  }
  const GradedElement one{0, unit_};
  for (int d1 = 0; d1 <= top; ++d1) {
    for (std::size_t i = 0; i < dim(d1); ++i) {
      const auto x = basis_element(d1, i);
      if (multiply(one, x).coeffs != x.coeffs || multiply(x, one).coeffs != x.coeffs) {
        return "unit law fails on basis element (" + std::to_string(d1) + "," + std::to_string(i) + ")";
      }
    }
  }
  return {};
}

DgAlgebra dg_algebra_from_connected_sum(const ConnectedSumAlgebra& alg, int top_degree) {
  if (top_degree < 0) throw std::invalid_argument("top degree must be nonnegative");
  std::vector<std::size_t> dims;
  for (int d = 0; d <= top_degree; ++d) dims.push_back(alg.graded_dim(d));
  DgAlgebra h(dims);
  for (int d1 = 0; d1 <= top_degree; ++d1) {
    for (int d2 = 0; d1 + d2 <= top_degree; ++d2) {
      for (std::size_t i = 0; i < alg.graded_dim(d1); ++i) {
        for (std::size_t j = 0; j < alg.graded_dim(d2); ++j) {
          h.set_product(d1, i, d2, j,
                        graded_multiply(alg, alg.basis_element(d1, i), alg.basis_element(d2, j)).coeffs);
        }
      }
    }
  }
  h.set_unit(alg.unit().coeffs);
  return h;
}

// ---------------------------------------------------------------- DgMap

namespace {

// Rank of the map induced on cohomology in one degree.
std::size_t induced_rank(const DgMap& q, int degree) {
  const auto& s = q.source();
  const auto& t = q.target();
  EchelonBasis span(t.dim(degree));
  if (degree > 0 && t.dim(degree) > 0) {
    const auto& m = t.differential(degree - 1);
    for (std::size_t c = 0; c < m.cols(); ++c) span.insert(m.column(c));
  }
  const auto boundaries = span.rank();
  for (const auto& z : s.cocycle_basis(degree)) span.insert(q.matrix(degree).multiply(z));
  return span.rank() - boundaries;
}

}  // namespace

DgMap::DgMap(std::shared_ptr<const DgAlgebra> source, std::shared_ptr<const DgAlgebra> target,
             std::vector<BitMatrix> matrices)
    : source_(std::move(source)), target_(std::move(target)), matrices_(std::move(matrices)) {
  if (source_->top_degree() != target_->top_degree()) throw std::invalid_argument("DgMap: top degrees differ");
  if (matrices_.size() != source_->dims().size()) throw std::invalid_argument("DgMap: one matrix per degree needed");
  surjective_ = true;
  quasi_iso_ = true;
  for (int d = 0; d <= source_->top_degree(); ++d) {
    const auto& m = matrices_[static_cast<std::size_t>(d)];
    if (m.rows() != target_->dim(d) || m.cols() != source_->dim(d)) {
      throw std::invalid_argument("DgMap: matrix has the wrong shape in degree " + std::to_string(d));
    }
    if (rank(m) != target_->dim(d)) surjective_ = false;
  }
  for (int d = 0; d <= source_->top_degree(); ++d) {
    const auto hs = source_->cohomology_dim(d);
    if (hs != target_->cohomology_dim(d) || induced_rank(*this, d) != hs) quasi_iso_ = false;
  }
}

DgMap DgMap::identity(std::shared_ptr<const DgAlgebra> a) {
  std::vector<BitMatrix> ms;
  for (int d = 0; d <= a->top_degree(); ++d) ms.push_back(BitMatrix::identity(a->dim(d)));
  return DgMap(a, a, std::move(ms));
}

GradedElement DgMap::apply(const GradedElement& a) const {
  if (a.coeffs.size() != source_->dim(a.degree)) throw std::invalid_argument("DgMap::apply: wrong length");
  if (a.degree < 0 || a.degree > source_->top_degree()) return target_->zero(a.degree);
  return {a.degree, matrix(a.degree).multiply(a.coeffs)};
}

std::string DgMap::validate() const {
  const auto& s = *source_;
  const auto& t = *target_;
  for (int d = 0; d <= s.top_degree(); ++d) {
    for (std::size_t i = 0; i < s.dim(d); ++i) {
      const auto x = s.basis_element(d, i);
      if (apply(s.d(x)).coeffs != t.d(apply(x)).coeffs) {
        return "does not commute with the differential in degree " + std::to_string(d);
      }
      for (int d2 = 0; d2 <= s.top_degree(); ++d2) {
        for (std::size_t j = 0; j < s.dim(d2); ++j) {
          const auto y = s.basis_element(d2, j);
          if (apply(s.multiply(x, y)).coeffs != t.multiply(apply(x), apply(y)).coeffs) {
            return "not multiplicative in degrees " + std::to_string(d) + "," + std::to_string(d2);
          }
        }
      }
    }
  }
  if (apply({0, s.unit()}).coeffs != t.unit()) return "does not preserve the unit";
  return {};
}

bool same_class(const DgAlgebra& a, const GradedElement& x, const GradedElement& y) {
  if (x.degree != y.degree) throw std::invalid_argument("same_class: degrees differ");
  return a.is_coboundary({x.degree, x.coeffs ^ y.coeffs});
}

bool is_zero_class(const DgAlgebra& a, const GradedElement& x) { return a.is_coboundary(x); }

// ---------------------------------------------------------------- defining systems

int DefiningSystem::entry_degree(int i, int j) const {
  int sum = 0;
  for (int s = i; s < j; ++s) sum += degrees[static_cast<std::size_t>(s - 1)];
  return sum - (j - 1 - i);
}

int DefiningSystem::product_degree() const {
  return std::accumulate(degrees.begin(), degrees.end(), 0) - n() + 2;
}

namespace {

// Σ_{k=i+1}^{j-1} a_{ik} a_{kj}, the required value of δ(a_{ij}).
GradedElement interior_sum(const DgAlgebra& a, const DefiningSystem& ds, int i, int j) {
  auto sum = a.zero(ds.entry_degree(i, j) + 1);
  for (int k = i + 1; k < j; ++k) sum.coeffs ^= a.multiply(ds.at(i, k), ds.at(k, j)).coeffs;
  return sum;
}

std::string pos(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

std::string validate_defining_system(const DgAlgebra& a, const DefiningSystem& ds) {
  const int n = ds.n();
  if (n < 2) return "a defining system needs n >= 2";
  for (int len = 1; len <= n; ++len) {
    for (int i = 1; i + len <= n + 1; ++i) {
      const int j = i + len;
      if (i == 1 && j == n + 1) continue;
      const auto it = ds.entries.find({i, j});
      if (it == ds.entries.end()) return "entry a" + pos(i, j) + " is missing";
      const auto& e = it->second;
      if (e.degree != ds.entry_degree(i, j)) return "entry a" + pos(i, j) + " has the wrong degree";
      if (e.coeffs.size() != a.dim(e.degree)) return "entry a" + pos(i, j) + " has the wrong length";
      if (a.d(e).coeffs != interior_sum(a, ds, i, j).coeffs) {
        return "relation d(a" + pos(i, j) + ") = sum a(i,k) a(k,j) fails";
      }
    }
  }
  return {};
}

CohomologyClass massey_product(const DgAlgebra& a, const DefiningSystem& ds) {
  const auto problem = validate_defining_system(a, ds);
  if (!problem.empty()) throw std::invalid_argument("invalid defining system: " + problem);
  const int n = ds.n();
  auto sum = a.zero(ds.product_degree());
  for (int k = 2; k <= n; ++k) sum.coeffs ^= a.multiply(ds.at(1, k), ds.at(k, n + 1)).coeffs;
  if (!a.is_cocycle(sum)) throw std::logic_error("massey_product: the Massey sum is not a cocycle");
  return {sum};
}

DefiningSystem trivial_defining_system(const DgAlgebra& h, const std::vector<GradedElement>& classes) {
  if (!h.has_trivial_differential()) throw std::invalid_argument("trivial_defining_system: differential is not zero");
  if (classes.size() < 2) throw std::invalid_argument("trivial_defining_system: needs at least two classes");
  DefiningSystem ds;
  for (const auto& c : classes) ds.degrees.push_back(c.degree);
  for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
    if (!h.multiply(classes[i], classes[i + 1]).is_zero()) {
      throw std::invalid_argument("trivial_defining_system: a_" + std::to_string(i + 1) + " a_" +
                                  std::to_string(i + 2) + " != 0");
    }
  }
  const int n = ds.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      if (i == 1 && j == n + 1) continue;
      ds.entries[{i, j}] = j == i + 1 ? classes[static_cast<std::size_t>(i - 1)] : h.zero(ds.entry_degree(i, j));
    }
  }
  return ds;
}

// ---------------------------------------------------------------- lifting

GradedElement lift_cocycle(const DgMap& q, const GradedElement& b) {
  const auto& s = q.source();
  const auto& t = q.target();
  if (!t.is_cocycle(b)) throw std::invalid_argument("lift_cocycle: b is not a cocycle");
  const int n = b.degree;
  const std::size_t sn = s.dim(n);
  const std::size_t tn = t.dim(n);
  const std::size_t tprev = t.dim(n - 1);
  const std::size_t snext = s.dim(n + 1);

  // Unknowns (a', c): δa' = 0 and q(a') + δc = b, so [q(a')] = [b].
  BitMatrix system(snext + tn, sn + tprev);
  if (sn > 0 && snext > 0) {
    const auto& ds = s.differential(n);
    for (std::size_t r = 0; r < snext; ++r)
      for (std::size_t c = 0; c < sn; ++c)
        if (ds.get(r, c)) system.set(r, c);
  }
  if (sn > 0) {
    const auto& qn = q.matrix(n);
    for (std::size_t r = 0; r < tn; ++r)
      for (std::size_t c = 0; c < sn; ++c)
        if (qn.get(r, c)) system.set(snext + r, c);
  }
  if (tprev > 0) {
    const auto& dt = t.differential(n - 1);
    for (std::size_t r = 0; r < tn; ++r)
      for (std::size_t c = 0; c < tprev; ++c)
        if (dt.get(r, c)) system.set(snext + r, sn + c);
  }
  BitVector rhs(snext + tn);
  rhs.assign(snext, b.coeffs);
  const auto x = solve(system, rhs);
  if (!x) throw NotAnAcyclicFibration("lift_cocycle: the class of b has no preimage");

  GradedElement a{n, x->slice(0, sn)};
  if (tprev > 0) {
    const auto c = x->slice(sn, tprev);
    const auto d = solve(q.matrix(n - 1), c);
    if (!d) throw NotAnAcyclicFibration("lift_cocycle: map is not surjective in degree " + std::to_string(n - 1));
    a.coeffs ^= s.d({n - 1, *d}).coeffs;
  }
  if (q.apply(a).coeffs != b.coeffs || !s.is_cocycle(a)) throw std::logic_error("lift_cocycle: verification failed");
  return a;
}

GradedElement lift_coboundary(const DgMap& q, const GradedElement& d, const GradedElement& c) {
  const auto& s = q.source();
  const auto& t = q.target();
  if (d.degree != c.degree + 1) throw std::invalid_argument("lift_coboundary: deg d must be deg c + 1");
  if (!s.is_cocycle(d)) throw std::invalid_argument("lift_coboundary: d is not a cocycle");
  if (t.d(c).coeffs != q.apply(d).coeffs) throw std::invalid_argument("lift_coboundary: dc != q(d)");

  const auto d_prime = s.primitive(d);
  if (!d_prime) throw NotAnAcyclicFibration("lift_coboundary: d is not a coboundary in the source");
  GradedElement rest{c.degree, c.coeffs ^ q.apply(*d_prime).coeffs};
  auto e = lift_cocycle(q, rest);
  e.coeffs ^= d_prime->coeffs;
  if (q.apply(e).coeffs != c.coeffs || s.d(e).coeffs != d.coeffs) {
    throw std::logic_error("lift_coboundary: verification failed");
  }
  return e;
}

DefiningSystem lift_defining_system(const DgMap& q, const std::vector<GradedElement>& classes,
                                    const DefiningSystem& ds) {
  const auto& s = q.source();
  const auto& t = q.target();
  const int n = ds.n();
  if (static_cast<int>(classes.size()) != n) throw std::invalid_argument("lift_defining_system: wrong number of classes");
  const auto problem = validate_defining_system(t, ds);
  if (!problem.empty()) throw std::invalid_argument("lift_defining_system: " + problem);
  for (int i = 1; i <= n; ++i) {
    const auto& a = classes[static_cast<std::size_t>(i - 1)];
    if (a.degree != ds.degrees[static_cast<std::size_t>(i - 1)] || !s.is_cocycle(a)) {
      throw std::invalid_argument("lift_defining_system: class " + std::to_string(i) + " is not a cocycle of degree d_i");
    }
    if (!same_class(t, q.apply(a), ds.at(i, i + 1))) {
      throw std::invalid_argument("lift_defining_system: a" + pos(i, i + 1) + " does not represent q(a_i)");
    }
  }

  DefiningSystem out;
  out.degrees = ds.degrees;
  for (int len = 1; len <= n; ++len) {
    for (int i = 1; i + len <= n + 1; ++i) {
      const int j = i + len;
      if (i == 1 && j == n + 1) continue;
      GradedElement entry;
      if (len == 1) {
        entry = lift_cocycle(q, ds.at(i, j));
        if (!same_class(s, entry, classes[static_cast<std::size_t>(i - 1)])) {
          throw std::logic_error("lift_defining_system: lifted entry has the wrong class");
        }
      } else {
        const auto sum = interior_sum(s, out, i, j);
        if (!s.is_cocycle(sum)) throw std::logic_error("lift_defining_system: interior sum is not a cocycle");
        entry = lift_coboundary(q, sum, ds.at(i, j));
      }
      out.entries[{i, j}] = std::move(entry);
    }
  }
  if (!validate_defining_system(s, out).empty()) throw std::logic_error("lift_defining_system: result is invalid");
  return out;
}

// ---------------------------------------------------------------- product sets

std::vector<BitVector> massey_product_set(const DgAlgebra& a, const std::vector<GradedElement>& classes,
                                          std::size_t max_space) {
  const int n = static_cast<int>(classes.size());
  if (n < 2) throw std::invalid_argument("massey_product_set: needs at least two classes");
  DefiningSystem ds;
  for (const auto& c : classes) {
    if (!a.is_cocycle(c)) throw std::invalid_argument("massey_product_set: a class representative is not a cocycle");
    ds.degrees.push_back(c.degree);
  }

  struct Slot {
    int i, j;
    std::vector<BitVector> free;  // directions the entry may move in
  };
  std::vector<Slot> slots;
  double log_space = 0;
  for (int len = 1; len <= n; ++len) {
    for (int i = 1; i + len <= n + 1; ++i) {
      const int j = i + len;
      if (i == 1 && j == n + 1) continue;
      Slot slot{i, j, {}};
      const int deg = ds.entry_degree(i, j);
      if (len == 1) {
        EchelonBasis bnd(a.dim(deg));
        if (deg > 0 && a.dim(deg) > 0) {
          const auto& m = a.differential(deg - 1);
          for (std::size_t c = 0; c < m.cols(); ++c) bnd.insert(m.column(c));
        }
        slot.free = bnd.rows();
      } else {
        slot.free = a.cocycle_basis(deg);
      }
      log_space += static_cast<double>(slot.free.size());
      slots.push_back(std::move(slot));
    }
  }
  if (log_space > 62 || (std::size_t{1} << static_cast<int>(log_space)) > max_space) {
    throw CapExceeded("Massey product set search space (log2)", static_cast<std::size_t>(log_space),
                      static_cast<std::size_t>(std::log2(static_cast<double>(max_space))));
  }

  std::set<std::string> seen;
  std::vector<BitVector> out;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == slots.size()) {
      GradedElement sum = a.zero(ds.product_degree());
      for (int k = 2; k <= n; ++k) sum.coeffs ^= a.multiply(ds.at(1, k), ds.at(k, n + 1)).coeffs;
      auto c = a.canonical(sum);
      if (seen.insert(c.to_string()).second) out.push_back(std::move(c));
      return;
    }
    const auto& slot = slots[idx];
    GradedElement base;
    if (slot.j == slot.i + 1) {
      base = classes[static_cast<std::size_t>(slot.i - 1)];
    } else {
      const auto target = interior_sum(a, ds, slot.i, slot.j);
      const auto p = a.primitive(target);
      if (!p) return;  // this partial system does not extend
      base = *p;
    }
    const std::size_t choices = std::size_t{1} << slot.free.size();
    for (std::size_t mask = 0; mask < choices; ++mask) {
      GradedElement e = base;
      for (std::size_t b = 0; b < slot.free.size(); ++b) {
        if (mask >> b & 1u) e.coeffs ^= slot.free[b];
      }
      ds.entries[{slot.i, slot.j}] = std::move(e);
      self(self, idx + 1);
    }
    ds.entries.erase({slot.i, slot.j});
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------- sampling

namespace {

BitVector random_vector(std::size_t n, std::mt19937_64& rng) {
  BitVector v(n);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng)) v.set(i);
  }
  return v;
}

BitVector random_combination(const std::vector<BitVector>& basis, std::size_t n, std::mt19937_64& rng) {
  BitVector v(n);
  std::bernoulli_distribution coin(0.5);
  for (const auto& b : basis) {
    if (coin(rng)) v ^= b;
  }
  return v;
}

}  // namespace

std::vector<GradedElement> sample_annihilating_tuple(const DgAlgebra& h, const std::vector<int>& degrees,
                                                     std::mt19937_64& rng) {
  std::vector<GradedElement> out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const int deg = degrees[i];
    if (i == 0) {
      out.push_back({deg, random_vector(h.dim(deg), rng)});
      continue;
    }
    // Kernel of x -> a_{i-1} x on the degree of the next class.
    const auto& prev = out.back();
    std::vector<BitVector> columns;
    for (std::size_t j = 0; j < h.dim(deg); ++j) columns.push_back(h.multiply(prev, h.basis_element(deg, j)).coeffs);
    const auto image_dim = h.dim(prev.degree + deg);
    const auto m = BitMatrix::from_columns(columns, image_dim);
    const auto kernel = image_dim == 0 ? std::vector<BitVector>{} : kernel_basis(m);
    if (image_dim == 0) {
      out.push_back({deg, random_vector(h.dim(deg), rng)});
    } else {
      out.push_back({deg, random_combination(kernel, h.dim(deg), rng)});
    }
  }
  return out;
}

std::optional<DefiningSystem> random_defining_system(const DgAlgebra& a, const std::vector<GradedElement>& classes,
                                                     std::mt19937_64& rng) {
  if (classes.size() < 2) throw std::invalid_argument("random_defining_system: needs at least two classes");
  DefiningSystem ds;
  for (const auto& c : classes) {
    if (!a.is_cocycle(c)) throw std::invalid_argument("random_defining_system: a representative is not a cocycle");
    ds.degrees.push_back(c.degree);
  }
  const int n = ds.n();
  for (int len = 1; len <= n; ++len) {
    for (int i = 1; i + len <= n + 1; ++i) {
      const int j = i + len;
      if (i == 1 && j == n + 1) continue;
      const int deg = ds.entry_degree(i, j);
      GradedElement e;
      if (len == 1) {
        e = classes[static_cast<std::size_t>(i - 1)];
        if (deg > 0) e.coeffs ^= a.d({deg - 1, random_vector(a.dim(deg - 1), rng)}).coeffs;
      } else {
        const auto p = a.primitive(interior_sum(a, ds, i, j));
        if (!p) return std::nullopt;
        e = *p;
        e.coeffs ^= random_combination(a.cocycle_basis(deg), a.dim(deg), rng);
      }
      ds.entries[{i, j}] = std::move(e);
    }
  }
  return ds;
}

MasseyCheckReport strong_massey_check(const DgAlgebra& h, const MasseySampling& options) {
  if (options.max_n < 2) throw std::invalid_argument("strong_massey_check: max_n must be at least 2");
  if (options.class_degrees.empty()) throw std::invalid_argument("strong_massey_check: no class degrees");
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> pick_n(2, options.max_n);
  std::uniform_int_distribution<std::size_t> pick_deg(0, options.class_degrees.size() - 1);
  MasseyCheckReport report;
  for (std::size_t sample = 0; sample < options.samples; ++sample) {
    const int n = pick_n(rng);
    std::vector<int> degrees;
    for (int i = 0; i < n; ++i) degrees.push_back(options.class_degrees[pick_deg(rng)]);
    const auto tuple = sample_annihilating_tuple(h, degrees, rng);
    bool has_zero = false;
    for (const auto& a : tuple) has_zero = has_zero || a.is_zero();
    if (!has_zero) ++report.tuples_without_zero_entry;
    const auto cls = massey_product(h, trivial_defining_system(h, tuple));
    ++report.samples;
    if (is_zero_class(h, cls.representative)) {
      ++report.zero_products;
    } else {
      report.counterexamples.push_back(tuple);
    }
  }
  return report;
}

// ---------------------------------------------------------------- fibrations

namespace {

BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  while (true) {
    BitMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) m.set_row(r, random_vector(n, rng));
    if (rank(m) == n) return m;
  }
}

}  // namespace

Fibration make_acyclic_fibration(std::shared_ptr<const DgAlgebra> target, const std::vector<std::size_t>& cone_dims,
                                 std::mt19937_64& rng, bool scramble) {
  const auto& t = *target;
  const int top = t.top_degree();
  if (t.dim(0) != 1 || !t.unit().test(0)) throw std::invalid_argument("make_acyclic_fibration: T_0 must be spanned by 1");
  auto cone = [&](int d) -> std::size_t {
    if (d < 0 || d >= top || static_cast<std::size_t>(d) >= cone_dims.size()) return 0;
    return cone_dims[static_cast<std::size_t>(d)];
  };
  // Basis of S_d: T_d, then e's starting in degree d, then f = δe from degree d - 1.
  std::vector<std::size_t> dims;
  for (int d = 0; d <= top; ++d) dims.push_back(t.dim(d) + cone(d) + cone(d - 1));
  DgAlgebra plain(dims);
  for (int d = 0; d < top; ++d) {
    BitMatrix m(plain.dim(d + 1), plain.dim(d));
    const auto& dt = t.differential(d);
    for (std::size_t r = 0; r < dt.rows(); ++r)
      for (std::size_t c = 0; c < dt.cols(); ++c)
        if (dt.get(r, c)) m.set(r, c);
    for (std::size_t e = 0; e < cone(d); ++e) m.set(t.dim(d + 1) + cone(d + 1) + e, t.dim(d) + e);
    plain.set_differential(d, std::move(m));
  }
  for (int d1 = 0; d1 <= top; ++d1) {
    for (int d2 = 0; d1 + d2 <= top; ++d2) {
      for (std::size_t i = 0; i < plain.dim(d1); ++i) {
        for (std::size_t j = 0; j < plain.dim(d2); ++j) {
          BitVector v(plain.dim(d1 + d2));
          const bool ti = i < t.dim(d1);
          const bool tj = j < t.dim(d2);
          if (ti && tj) {
            v.assign(0, t.product(d1, i, d2, j));
          } else if (d1 == 0 && ti) {
            v.set(j);  // 1 · e
          } else if (d2 == 0 && tj) {
            v.set(i);  // e · 1
          }
          plain.set_product(d1, i, d2, j, std::move(v));
        }
      }
    }
  }
  BitVector unit(plain.dim(0));
  unit.set(0);
  plain.set_unit(unit);

  std::vector<BitMatrix> proj;
  for (int d = 0; d <= top; ++d) {
    BitMatrix m(t.dim(d), plain.dim(d));
    for (std::size_t i = 0; i < t.dim(d); ++i) m.set(i, i);
    proj.push_back(std::move(m));
  }

  if (!scramble) {
    auto source = std::make_shared<const DgAlgebra>(std::move(plain));
    DgMap q(source, target, std::move(proj));
    return {source, target, std::move(q)};
  }

  // Transport the structure along random basis changes P_d.
  std::vector<BitMatrix> p, pinv;
  for (int d = 0; d <= top; ++d) {
    p.push_back(random_invertible(plain.dim(d), rng));
    pinv.push_back(*inverse(p.back()));
  }
  auto at = [](std::vector<BitMatrix>& v, int d) -> BitMatrix& { return v[static_cast<std::size_t>(d)]; };
  DgAlgebra mixed(dims);
  for (int d = 0; d < top; ++d) {
    mixed.set_differential(d, at(p, d + 1).multiply(plain.differential(d)).multiply(at(pinv, d)));
  }
  for (int d1 = 0; d1 <= top; ++d1) {
    for (int d2 = 0; d1 + d2 <= top; ++d2) {
      for (std::size_t i = 0; i < mixed.dim(d1); ++i) {
        const GradedElement x{d1, at(pinv, d1).column(i)};
        for (std::size_t j = 0; j < mixed.dim(d2); ++j) {
          const GradedElement y{d2, at(pinv, d2).column(j)};
          mixed.set_product(d1, i, d2, j, at(p, d1 + d2).multiply(plain.multiply(x, y).coeffs));
        }
      }
    }
  }
  mixed.set_unit(at(p, 0).multiply(unit));
  std::vector<BitMatrix> q_mixed;
  for (int d = 0; d <= top; ++d) q_mixed.push_back(at(proj, d).multiply(at(pinv, d)));
  auto source = std::make_shared<const DgAlgebra>(std::move(mixed));
  DgMap q(source, target, std::move(q_mixed));
  return {source, target, std::move(q)};
}

}  // namespace koszulhh
