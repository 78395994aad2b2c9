#pragma once

// Exact linear algebra over the two-element field.
//
// Vectors and matrices are bit-packed into 64-bit words. Elimination always
// picks the leftmost column with a nonzero entry and, within it, the topmost
// available row, so kernel bases and solutions are reproducible.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace koszulhh {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length);

  /// Parses a string of '0'/'1' characters; index 0 is the first character.
  static BitVector from_string(std::string_view bits);
  static BitVector unit(std::size_t length, std::size_t index);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept;
  std::optional<std::size_t> first_set() const noexcept;
  std::vector<std::size_t> support() const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  BitVector operator~() const;

  bool operator==(const BitVector& other) const = default;

  /// Dot product over GF(2).
  bool dot(const BitVector& other) const;

  /// Copy of the bits [offset, offset + length).
  BitVector slice(std::size_t offset, std::size_t length) const;
  /// Overwrites [offset, offset + part.size()) with part.
  void assign(std::size_t offset, const BitVector& part);

  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  /// Each string is one row of '0'/'1' characters; all rows must have equal length.
  static BitMatrix from_rows(const std::vector<std::string>& rows, std::size_t cols = 0);
  static BitMatrix from_row_vectors(const std::vector<BitVector>& rows, std::size_t cols);
  static BitMatrix from_columns(const std::vector<BitVector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    auto& w = data_[r * stride_ + (c >> 6)];
    if (value) {
      w |= mask;
    } else {
      w &= ~mask;
    }
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  BitVector row(std::size_t r) const;
  BitVector column(std::size_t c) const;
  void set_row(std::size_t r, const BitVector& v);

  std::span<const std::uint64_t> row_words(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  std::span<std::uint64_t> row_words(std::size_t r) noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  std::size_t stride() const noexcept { return stride_; }

  BitVector multiply(const BitVector& v) const;
  BitMatrix multiply(const BitMatrix& other) const;
  BitMatrix transpose() const;
  bool is_zero() const noexcept;

  /// Rows of `this` followed by rows of `below`; column counts must agree.
  BitMatrix stacked(const BitMatrix& below) const;
  /// Submatrix keeping only the listed rows and columns, in the given order.
  BitMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  bool operator==(const BitMatrix& other) const = default;
  std::vector<std::string> to_strings() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

std::size_t rank(const BitMatrix& m);
std::vector<BitVector> kernel_basis(const BitMatrix& m);
/// Some x with m * x = b, or nothing when b is outside the column space.
/// Throws std::invalid_argument when b.size() != m.rows().
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

/// Inverse of a square matrix, or nothing when it is singular.
std::optional<BitMatrix> inverse(const BitMatrix& m);

/// A subspace kept in reduced row echelon form. Reduction against it gives a
/// canonical representative of a coset v + span.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dimension = 0) : dimension_(dimension) {}

  /// Returns true when v was independent of the current span.
  bool insert(BitVector v);
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).none(); }

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<BitVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

 private:
  std::size_t dimension_;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Row-sparse matrix used for the large, block-structured differentials.
/// Each row stores the sorted column indices of its nonzero entries.
class SparseBitMatrix {
 public:
  SparseBitMatrix() = default;
  SparseBitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// Adds 1 to entry (r, c); repeated toggles cancel after normalize().
  void toggle(std::size_t r, std::size_t c) { entries_[r].push_back(static_cast<std::uint32_t>(c)); }
  /// Sorts each row and cancels repeated entries in pairs.
  void normalize();

  const std::vector<std::uint32_t>& row_entries(std::size_t r) const { return entries_[r]; }
  std::size_t nonzeros() const noexcept;

  BitVector multiply(const BitVector& v) const;
  BitMatrix to_dense() const;
  static SparseBitMatrix from_dense(const BitMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<std::uint32_t>> entries_;
};

/// Rank computed block by block: rows and columns are split into the
/// connected components of the bipartite nonzero pattern and each component
/// is eliminated densely.
std::size_t rank(const SparseBitMatrix& m);
std::vector<BitVector> kernel_basis(const SparseBitMatrix& m);

}  // namespace koszulhh
