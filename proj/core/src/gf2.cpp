#include "koszulhh/gf2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace koszulhh {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

std::uint64_t tail_mask(std::size_t bits) {
  const std::size_t rem = bits & 63;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

// In-place elimination on a row-major word buffer. With `reduce_above` the
// result is the reduced row echelon form, otherwise only rows below each pivot
// are cleared. Returns the pivot columns in order.
std::vector<std::size_t> eliminate(std::vector<std::uint64_t>& data, std::size_t rows,
                                   std::size_t cols, std::size_t stride, bool reduce_above) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    const std::size_t w = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    std::size_t pivot = rows;
    for (std::size_t r = next; r < rows; ++r) {
      if (data[r * stride + w] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != next) {
      std::swap_ranges(data.begin() + static_cast<std::ptrdiff_t>(pivot * stride),
                       data.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * stride),
                       data.begin() + static_cast<std::ptrdiff_t>(next * stride));
    }
    const std::uint64_t* prow = data.data() + next * stride;
    const std::size_t start = reduce_above ? 0 : next + 1;
    for (std::size_t r = start; r < rows; ++r) {
      if (r == next) continue;
      std::uint64_t* row = data.data() + r * stride;
      if (row[w] & bit) {
        for (std::size_t k = w; k < stride; ++k) row[k] ^= prow[k];
      }
    }
    pivots.push_back(c);
    ++next;
  }
  return pivots;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t length) : size_(length), words_(words_for(length), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(bits));
    }
  }
  return v;
}

BitVector BitVector::unit(std::size_t length, std::size_t index) {
  BitVector v(length);
  v.set(index);
  return v;
}

bool BitVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::optional<std::size_t> BitVector::first_set() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return std::nullopt;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector out(*this);
  for (auto& w : out.words_) w = ~w;
  if (!out.words_.empty()) out.words_.back() &= tail_mask(size_);
  return out;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw std::invalid_argument("BitVector length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

BitVector BitVector::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > size_) throw std::out_of_range("BitVector::slice");
  BitVector out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (test(offset + i)) out.set(i);
  }
  return out;
}

void BitVector::assign(std::size_t offset, const BitVector& part) {
  if (offset + part.size() > size_) throw std::out_of_range("BitVector::assign");
  for (std::size_t i = 0; i < part.size(); ++i) set(offset + i, part.test(i));
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    m.set_row(r, BitVector::from_string(rows[r]));
  }
  return m;
}

BitMatrix BitMatrix::from_row_vectors(const std::vector<BitVector>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitMatrix BitMatrix::from_columns(const std::vector<BitVector>& columns, std::size_t rows) {
  BitMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (auto r : columns[c].support()) m.set(r, c);
  }
  return m;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_, v.words().begin());
  return v;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  std::copy(v.words().begin(), v.words().end(), data_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
}

BitVector BitMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  BitVector out(rows_);
  const auto vw = v.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const std::uint64_t* row = data_.data() + r * stride_;
    for (std::size_t k = 0; k < stride_; ++k) acc ^= row[k] & vw[k];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
  if (other.rows_ != cols_) throw std::invalid_argument("matrix product dimension mismatch");
  BitMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t* dst = out.data_.data() + r * out.stride_;
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      const std::uint64_t* src = other.data_.data() + k * other.stride_;
      for (std::size_t w = 0; w < out.stride_; ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* row = data_.data() + r * stride_;
    for (std::size_t w = 0; w < stride_; ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        t.set(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)), r);
        bits &= bits - 1;
      }
    }
  }
  return t;
}

bool BitMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

BitMatrix BitMatrix::stacked(const BitMatrix& below) const {
  if (below.cols_ != cols_) throw std::invalid_argument("stacked: column mismatch");
  BitMatrix out(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

BitMatrix BitMatrix::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  BitMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (get(rows[i], cols[j])) out.set(i, j);
    }
  }
  return out;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r).to_string());
  return out;
}

// ---------------------------------------------------------------- kernels

std::size_t rank(const BitMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate along the shorter side.
  if (m.rows() > 4 * m.cols() && m.cols() > 0) return rank(m.transpose());
  std::vector<std::uint64_t> data(m.rows() * m.stride());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row_words(r);
    std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(r * m.stride()));
  }
  return eliminate(data, m.rows(), m.cols(), m.stride(), false).size();
}

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> data(m.rows() * m.stride());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row_words(r);
    std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(r * m.stride()));
  }
  const auto pivots = eliminate(data, m.rows(), cols, m.stride(), true);
  std::vector<char> is_pivot(cols, 0);
  for (auto p : pivots) is_pivot[p] = 1;

  std::vector<BitVector> basis;
  basis.reserve(cols - pivots.size());
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(cols);
    v.set(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if ((data[i * m.stride() + (f >> 6)] >> (f & 63)) & 1u) v.set(pivots[i]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length does not match rows");
  const std::size_t cols = m.cols();
  const std::size_t stride = words_for(cols + 1);
  std::vector<std::uint64_t> data(m.rows() * stride, 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row_words(r);
    std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(r * stride));
    if (b.test(r)) data[r * stride + (cols >> 6)] |= std::uint64_t{1} << (cols & 63);
  }
  const auto pivots = eliminate(data, m.rows(), cols + 1, stride, true);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  BitVector x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if ((data[i * stride + (cols >> 6)] >> (cols & 63)) & 1u) x.set(pivots[i]);
  }
  return x;
}

// ---------------------------------------------------------------- EchelonBasis

BitVector EchelonBasis::reduce(BitVector v) const {
  if (v.size() != dimension_) throw std::invalid_argument("EchelonBasis: dimension mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.test(pivots_[i])) v ^= rows_[i];
  }
  return v;
}

bool EchelonBasis::insert(BitVector v) {
  v = reduce(std::move(v));
  const auto lead = v.first_set();
  if (!lead) return false;
  for (auto& row : rows_) {
    if (row.test(*lead)) row ^= v;
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), *lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, *lead);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

// ---------------------------------------------------------------- SparseBitMatrix

SparseBitMatrix::SparseBitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows) {}

void SparseBitMatrix::normalize() {
  for (auto& row : entries_) {
    std::sort(row.begin(), row.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < row.size();) {
      std::size_t j = i;
      while (j < row.size() && row[j] == row[i]) ++j;
      if ((j - i) & 1) row[out++] = row[i];
      i = j;
    }
    row.resize(out);
  }
}

std::size_t SparseBitMatrix::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& row : entries_) n += row.size();
  return n;
}

BitVector SparseBitMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("sparse matrix-vector dimension mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    bool acc = false;
    for (auto c : entries_[r]) acc ^= v.test(c);
    if (acc) out.set(r);
  }
  return out;
}

BitMatrix SparseBitMatrix::to_dense() const {
  BitMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (auto c : entries_[r]) m.flip(r, c);
  }
  return m;
}

SparseBitMatrix SparseBitMatrix::from_dense(const BitMatrix& m) {
  SparseBitMatrix s(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (auto c : m.row(r).support()) s.toggle(r, c);
  }
  return s;
}

namespace {

struct Components {
  // Column groups and the rows touching each group; rows with no entries are dropped.
  std::vector<std::vector<std::size_t>> cols;
  std::vector<std::vector<std::size_t>> rows;
};

Components split_components(const SparseBitMatrix& m) {
  std::vector<std::size_t> parent(m.cols());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto& e = m.row_entries(r);
    for (std::size_t i = 1; i < e.size(); ++i) {
      const auto a = find(e[0]);
      const auto b = find(e[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> group_of(m.cols(), static_cast<std::size_t>(-1));
  Components out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto root = find(c);
    if (group_of[root] == static_cast<std::size_t>(-1)) {
      group_of[root] = out.cols.size();
      out.cols.emplace_back();
      out.rows.emplace_back();
    }
    out.cols[group_of[root]].push_back(c);
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto& e = m.row_entries(r);
    if (e.empty()) continue;
    out.rows[group_of[find(e[0])]].push_back(r);
  }
  return out;
}

BitMatrix component_matrix(const SparseBitMatrix& m, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols, std::vector<std::size_t>& local) {
  for (std::size_t j = 0; j < cols.size(); ++j) local[cols[j]] = j;
  BitMatrix block(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto c : m.row_entries(rows[i])) block.flip(i, local[c]);
  }
  return block;
}

}  // namespace

std::optional<BitMatrix> inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  if (rank(m) != m.rows()) return std::nullopt;
  std::vector<BitVector> columns;
  for (std::size_t c = 0; c < m.cols(); ++c) columns.push_back(*solve(m, BitVector::unit(m.rows(), c)));
  return BitMatrix::from_columns(columns, m.rows());
}

std::size_t rank(const SparseBitMatrix& m) {
  const auto comps = split_components(m);
  std::vector<std::size_t> local(m.cols());
  std::size_t total = 0;
  for (std::size_t g = 0; g < comps.cols.size(); ++g) {
    if (comps.rows[g].empty()) continue;
    total += rank(component_matrix(m, comps.rows[g], comps.cols[g], local));
  }
  return total;
}

std::vector<BitVector> kernel_basis(const SparseBitMatrix& m) {
  const auto comps = split_components(m);
  std::vector<std::size_t> local(m.cols());
  std::vector<BitVector> basis;
  for (std::size_t g = 0; g < comps.cols.size(); ++g) {
    const auto& cols = comps.cols[g];
    if (comps.rows[g].empty()) {
      for (auto c : cols) basis.push_back(BitVector::unit(m.cols(), c));
      continue;
    }
    for (const auto& v : kernel_basis(component_matrix(m, comps.rows[g], cols, local))) {
      BitVector full(m.cols());
      for (auto j : v.support()) full.set(cols[j]);
      basis.push_back(std::move(full));
    }
  }
  return basis;
}

}  // namespace koszulhh
