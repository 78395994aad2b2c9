// Reduced bar cochains of Q = V_* ⊓ A_* with coefficients in M = V_* ⊓ B_*.
//
// Both Q and M are graded by weight vectors in N^{m+b}: v_i has weight e_i and
// x_t^{(e)} has weight e·e_{m+t} (b = number of blocks of A; atoms of B carry
// the weight of their block). Products and the action respect weights, so a
// cochain coordinate (tensor τ, basis element μ) has the invariant weight
// wt(μ) - wt(τ) and the complex splits into finite weight blocks. Each block is
// still filtered by tensor degree, which is where the truncation bookkeeping
// described in the header happens.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "koszulhh/hochschild.hpp"

namespace koszulhh {

namespace {

using Weight = std::vector<int>;

struct ModuleBasis {
  struct Entry {
    int degree;
    std::size_t index;  // within M_degree
    int coord;          // weight coordinate, -1 for the unit
    int amount;
  };
  std::vector<Entry> entries;
  std::vector<std::size_t> offset;  // first id of each degree

  std::size_t id(int degree, std::size_t index) const { return offset[static_cast<std::size_t>(degree)] + index; }
};

class BarComplex {
 public:
  // Module elements are kept up to degree top_value.
  BarComplex(const CoefficientPair& pair, int top_value)
      : pair_(pair), m_(pair.v_dim()), blocks_(pair.subring().block_count()) {
    const auto& mod = pair.module();
    for (int d = 0; d <= top_value; ++d) {
      basis_.offset.push_back(basis_.entries.size());
      for (std::size_t i = 0; i < mod.graded_dim(d); ++i) {
        ModuleBasis::Entry e{d, i, -1, 0};
        if (d == 1 && i < m_) {
          e.coord = static_cast<int>(i);
          e.amount = 1;
        } else if (d >= 1) {
          const auto atom = i - mod.atom_offset(d);
          e.coord = static_cast<int>(m_ + pair.subring().block_of(atom));
          e.amount = d;
        }
        basis_.entries.push_back(e);
      }
    }
    basis_.offset.push_back(basis_.entries.size());
  }

  std::size_t weight_dim() const { return m_ + blocks_; }
  const ModuleBasis& module_basis() const { return basis_; }

  Weight weight_of(const ModuleBasis::Entry& e) const {
    Weight w(weight_dim(), 0);
    if (e.coord >= 0) w[static_cast<std::size_t>(e.coord)] = e.amount;
    return w;
  }

  // Letters are stored as (coordinate, exponent) byte pairs.
  void tensors_of_weight(const Weight& u, int length, std::vector<std::string>& out) const {
    std::string current;
    Weight rest = u;
    enumerate(rest, length, current, out);
  }

  // Module basis ids of a·μ for a letter (coord, exp).
  void act(int coord, int exp, std::size_t mu, std::vector<std::size_t>& out) const {
    const auto& e = basis_.entries[mu];
    const auto cu = static_cast<std::size_t>(coord);
    const auto& mod = pair_.module();
    if (e.degree == 0) {
      if (cu < m_) {
        out.push_back(basis_.id(1, cu));
        return;
      }
      if (exp > top_value_degree()) return;
      for (auto atom : pair_.subring().blocks()[cu - m_]) {
        out.push_back(basis_.id(exp, mod.atom_offset(exp) + atom));
      }
      return;
    }
    if (cu < m_ || e.coord != coord || static_cast<std::size_t>(e.coord) < m_) return;
    const int degree = e.degree + exp;
    if (degree > top_value_degree()) return;
    const auto atom = e.index - mod.atom_offset(e.degree);
    out.push_back(basis_.id(degree, mod.atom_offset(degree) + atom));
  }

  int top_value_degree() const { return static_cast<int>(basis_.offset.size()) - 2; }
  std::size_t v_dim() const { return m_; }

 private:
  void enumerate(Weight& rest, int slots, std::string& current, std::vector<std::string>& out) const {
    int total = 0;
    int minimum = 0;
    for (std::size_t c = 0; c < rest.size(); ++c) {
      total += rest[c];
      if (c < m_) {
        minimum += rest[c];
      } else if (rest[c] > 0) {
        minimum += 1;
      }
    }
    if (slots == 0) {
      if (total == 0) out.push_back(current);
      return;
    }
    if (total < slots || minimum > slots) return;
    for (std::size_t c = 0; c < rest.size(); ++c) {
      if (rest[c] == 0) continue;
      const int max_exp = c < m_ ? 1 : rest[c];
      for (int e = 1; e <= max_exp; ++e) {
        rest[c] -= e;
        current.push_back(static_cast<char>(c));
        current.push_back(static_cast<char>(e));
        enumerate(rest, slots - 1, current, out);
        current.resize(current.size() - 2);
        rest[c] += e;
      }
    }
  }

  const CoefficientPair& pair_;
  std::size_t m_;
  std::size_t blocks_;
  ModuleBasis basis_;
};

// Coordinates of one cochain group inside a weight block, sorted by tensor degree.
struct BlockSpace {
  struct Coord {
    std::string tensor;
    std::size_t mu;
    int degree;
  };
  std::vector<Coord> coords;
  std::unordered_map<std::string, std::size_t> index;

  static std::string key(const std::string& tensor, std::size_t mu) {
    std::string k = tensor;
    k.push_back(static_cast<char>(mu & 0xff));
    k.push_back(static_cast<char>((mu >> 8) & 0xff));
    return k;
  }

  std::size_t find(const std::string& tensor, std::size_t mu) const {
    const auto it = index.find(key(tensor, mu));
    if (it == index.end()) throw std::logic_error("bar complex: coordinate missing from its weight block");
    return it->second;
  }
};

BlockSpace build_space(const BarComplex& bar, const Weight& w, int length, int s, int top, const ResourceCaps& caps) {
  BlockSpace space;
  if (length < 0) return space;
  const auto& mb = bar.module_basis();
  for (std::size_t mu = 0; mu < mb.entries.size(); ++mu) {
    const auto& entry = mb.entries[mu];
    const int tdeg = entry.degree - s;
    if (tdeg < length || tdeg > top) continue;
    auto u = bar.weight_of(entry);
    bool ok = true;
    for (std::size_t c = 0; c < u.size(); ++c) {
      u[c] -= w[c];
      if (u[c] < 0) ok = false;
    }
    if (!ok) continue;
    std::vector<std::string> tensors;
    bar.tensors_of_weight(u, length, tensors);
    for (auto& t : tensors) space.coords.push_back({std::move(t), mu, tdeg});
    check_cap("bar cochain block", space.coords.size(), caps);
  }
  std::stable_sort(space.coords.begin(), space.coords.end(),
                   [](const auto& a, const auto& b) { return a.degree < b.degree; });
  space.index.reserve(space.coords.size());
  for (std::size_t i = 0; i < space.coords.size(); ++i) {
    space.index.emplace(BlockSpace::key(space.coords[i].tensor, space.coords[i].mu), i);
  }
  return space;
}


using SparseColumns = std::vector<std::vector<std::size_t>>;

// Column i of δ : from -> to as a sorted list of row indices,
// δf(a_1..a_{q+1}) = a_1·f(a_2..) + Σ f(..a_i a_{i+1}..) + f(..a_q)·a_{q+1}.
SparseColumns bar_differential(const BarComplex& bar, const BlockSpace& from, const BlockSpace& to, int top) {
  SparseColumns cols(from.coords.size());
  std::vector<std::size_t> image;
  const auto m = static_cast<int>(bar.v_dim());
  const auto g = static_cast<int>(bar.weight_dim());
  for (std::size_t i = 0; i < from.coords.size(); ++i) {
    const auto& c = from.coords[i];
    const auto& entry = bar.module_basis().entries[c.mu];
    auto& col = cols[i];
    const int room = top - c.degree;

    auto outer = [&](int coord, int exp) {
      image.clear();
      bar.act(coord, exp, c.mu, image);
      const std::string letter{static_cast<char>(coord), static_cast<char>(exp)};
      for (auto mu2 : image) {
        col.push_back(to.find(letter + c.tensor, mu2));
        col.push_back(to.find(c.tensor + letter, mu2));
      }
    };
    if (entry.degree == 0) {
      for (int coord = 0; coord < g; ++coord) {
        const int max_exp = coord < m ? 1 : room;
        for (int e = 1; e <= std::min(max_exp, room); ++e) outer(coord, e);
      }
    } else if (entry.coord >= m) {
      for (int e = 1; e <= room; ++e) outer(entry.coord, e);
    }

    // Inner terms: x^(a) x^(b) = x^(a+b) inside one block, every other product vanishes.
    for (std::size_t p = 0; p < c.tensor.size(); p += 2) {
      const int coord = static_cast<unsigned char>(c.tensor[p]);
      const int exp = static_cast<unsigned char>(c.tensor[p + 1]);
      if (coord < m) continue;
      for (int e1 = 1; e1 < exp; ++e1) {
        std::string split = c.tensor.substr(0, p);
        split.push_back(static_cast<char>(coord));
        split.push_back(static_cast<char>(e1));
        split.push_back(static_cast<char>(coord));
        split.push_back(static_cast<char>(exp - e1));
        split.append(c.tensor, p + 2, std::string::npos);
        col.push_back(to.find(split, c.mu));
      }
    }

    std::sort(col.begin(), col.end());
    std::size_t out = 0;
    for (std::size_t r = 0; r < col.size();) {
      std::size_t run = r;
      while (run < col.size() && col[run] == col[r]) ++run;
      if ((run - r) % 2 == 1) col[out++] = col[r];
      r = run;
    }
    col.resize(out);
  }
  return cols;
}

BitVector to_dense(const std::vector<std::size_t>& entries, std::size_t length) {
  BitVector v(length);
  for (auto r : entries) v.set(r);
  return v;
}

// Tensor weights u with |u| in [lo, hi] that carry tensors of the given length.
void tensor_weights(std::size_t g, std::size_t m, int length, int lo, int hi, std::vector<Weight>& out) {
  Weight u(g, 0);
  auto rec = [&](auto&& self, std::size_t c, int used) -> void {
    if (c == g) {
      if (used < lo) return;
      int minimum = 0;
      for (std::size_t i = 0; i < g; ++i) minimum += i < m ? u[i] : (u[i] > 0 ? 1 : 0);
      if (minimum <= length && used >= length) out.push_back(u);
      return;
    }
    for (int a = 0; used + a <= hi; ++a) {
      u[c] = a;
      self(self, c + 1, used + a);
    }
    u[c] = 0;
  };
  rec(rec, 0, 0);
}

}  // namespace

BarOracleReport hh_bar_oracle(const CoefficientPair& pair, int k, int s, int max_degree, const ResourceCaps& caps,
                              int lookahead) {
  if (k < 0) throw std::invalid_argument("hh_bar_oracle: negative k");
  if (max_degree < k) throw std::invalid_argument("hh_bar_oracle: max_degree must be at least k");
  if (lookahead < 0) throw std::invalid_argument("hh_bar_oracle: negative lookahead");

  BarOracleReport report;
  report.k = k;
  report.s = s;
  report.max_degree = max_degree;
  report.lookahead = lookahead;
  const auto D = static_cast<std::size_t>(max_degree);
  report.cumulative.assign(D + 1, 0);
  report.factors.assign(D + 1, 0);

  const int top = max_degree + lookahead;
  const int top_value = top + s;
  if (top_value < 0) return report;
  const BarComplex bar(pair, top_value);
  const auto g = bar.weight_dim();
  const auto& mb = bar.module_basis();

  // Weight blocks that contain cochains of length k.
  std::set<Weight> blocks;
  std::vector<Weight> us;
  tensor_weights(g, pair.v_dim(), k, k, top, us);
  for (const auto& u : us) {
    int deg = 0;
    for (auto a : u) deg += a;
    const int value_degree = deg + s;
    if (value_degree < 0 || value_degree > top_value) continue;
    for (std::size_t mu = mb.offset[static_cast<std::size_t>(value_degree)];
         mu < mb.offset[static_cast<std::size_t>(value_degree) + 1]; ++mu) {
      auto w = bar.weight_of(mb.entries[mu]);
      for (std::size_t c = 0; c < g; ++c) w[c] -= u[c];
      blocks.insert(std::move(w));
    }
  }

  std::vector<long long> cumulative(D + 1, 0);
  for (const auto& w : blocks) {
    const auto prev = build_space(bar, w, k - 1, s, max_degree, caps);
    const auto cur = build_space(bar, w, k, s, top, caps);
    const auto next = build_space(bar, w, k + 1, s, top, caps);
    if (cur.coords.empty()) continue;
    ++report.weight_blocks;
    report.cochains += cur.coords.size();

    // Cocycles projected to tensor degrees <= d:
    // dim = #C_{<=d} - rank δ + rank(δ restricted to columns of degree > d).
    const auto dk = bar_differential(bar, cur, next, top);
    std::vector<std::size_t> rank_above(D + 1, 0);
    EchelonBasis columns(next.coords.size());
    std::size_t pos = cur.coords.size();
    for (int d = top; d >= 0; --d) {
      while (pos > 0 && cur.coords[pos - 1].degree > d) {
        --pos;
        columns.insert(to_dense(dk[pos], next.coords.size()));
      }
      if (d <= max_degree) rank_above[static_cast<std::size_t>(d)] = columns.rank();
    }
    while (pos > 0) {
      --pos;
      columns.insert(to_dense(dk[pos], next.coords.size()));
    }
    const std::size_t rank_all = columns.rank();

    // Coboundaries projected to degrees <= d: leading coordinates of the
    // echelonized image, with coordinates already ordered by degree.
    EchelonBasis images(cur.coords.size());
    if (!prev.coords.empty()) {
      const auto dk1 = bar_differential(bar, prev, cur, top);
      for (const auto& col : dk1) images.insert(to_dense(col, cur.coords.size()));
    }
    std::vector<std::size_t> boundary_upto(D + 1, 0);
    for (auto p : images.pivots()) {
      const int deg = cur.coords[p].degree;
      for (int d = deg; d <= max_degree; ++d) ++boundary_upto[static_cast<std::size_t>(d)];
    }

    std::size_t upto = 0;
    for (std::size_t d = 0; d <= D; ++d) {
      while (upto < cur.coords.size() && cur.coords[upto].degree <= static_cast<int>(d)) ++upto;
      const long long z = static_cast<long long>(upto) - static_cast<long long>(rank_all) +
                          static_cast<long long>(rank_above[d]);
      const long long x = z - static_cast<long long>(boundary_upto[d]);
      if (x < 0) throw std::logic_error("hh_bar_oracle: negative cohomology in a weight block");
      cumulative[d] += x;
    }
  }

  for (std::size_t d = 0; d <= D; ++d) {
    report.cumulative[d] = static_cast<std::size_t>(cumulative[d]);
    report.factors[d] = report.cumulative[d] - (d > 0 ? report.cumulative[d - 1] : 0);
  }
  return report;
}

}  // namespace koszulhh
