#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nonlocality/error.hpp"

namespace nonlocality {

// Sparse binary matrix stored as sorted per-row column supports.
class BinaryMatrix {
 public:
  using Entry = std::pair<std::size_t, std::size_t>;  // (row, col)

  BinaryMatrix() = default;

  BinaryMatrix(std::size_t rows, std::size_t cols) : cols_(cols), support_(rows) {}

  // Throws Error on out-of-range or repeated positions.
  BinaryMatrix(std::size_t rows, std::size_t cols, std::span<const Entry> entries)
      : BinaryMatrix(rows, cols) {
    for (const auto& [r, c] : entries) {
      if (r >= rows || c >= cols) {
        throw Error("entry (" + std::to_string(r) + "," + std::to_string(c) +
                    ") out of range for " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " matrix");
      }
      support_[r].push_back(c);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      auto& row = support_[r];
      std::sort(row.begin(), row.end());
      if (auto it = std::adjacent_find(row.begin(), row.end()); it != row.end()) {
        throw Error("duplicate entry (" + std::to_string(r) + "," + std::to_string(*it) + ")");
      }
    }
  }

  static BinaryMatrix from_rows(std::size_t cols, const std::vector<std::vector<std::size_t>>& rows) {
    std::vector<Entry> entries;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (auto c : rows[r]) entries.emplace_back(r, c);
    }
    return BinaryMatrix(rows.size(), cols, entries);
  }

  static BinaryMatrix from_dense(const std::vector<std::vector<int>>& dense) {
    const std::size_t cols = dense.empty() ? 0 : dense.front().size();
    std::vector<Entry> entries;
    for (std::size_t r = 0; r < dense.size(); ++r) {
      if (dense[r].size() != cols) throw Error("ragged dense matrix");
      for (std::size_t c = 0; c < cols; ++c) {
        if (dense[r][c] & 1) entries.emplace_back(r, c);
      }
    }
    return BinaryMatrix(dense.size(), cols, entries);
  }

  static BinaryMatrix identity(std::size_t n) {
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.support_[i].push_back(i);
    return m;
  }

  std::size_t rows() const noexcept { return support_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const std::size_t> row(std::size_t r) const { return support_.at(r); }

  bool at(std::size_t r, std::size_t c) const {
    const auto& row = support_.at(r);
    return std::binary_search(row.begin(), row.end(), c);
  }

  std::size_t nonzeros() const {
    std::size_t total = 0;
    for (const auto& row : support_) total += row.size();
    return total;
  }

  std::vector<std::vector<std::size_t>> column_supports() const {
    std::vector<std::vector<std::size_t>> columns(cols_);
    for (std::size_t r = 0; r < rows(); ++r) {
      for (auto c : support_[r]) columns[c].push_back(r);
    }
    return columns;
  }

  std::size_t max_row_weight() const {
    std::size_t best = 0;
    for (const auto& row : support_) best = std::max(best, row.size());
    return best;
  }

  std::size_t max_col_weight() const {
    std::vector<std::size_t> weight(cols_, 0);
    for (const auto& row : support_) {
      for (auto c : row) ++weight[c];
    }
    return weight.empty() ? 0 : *std::max_element(weight.begin(), weight.end());
  }

  BinaryMatrix transpose() const {
    BinaryMatrix t(cols_, rows());
    t.support_ = column_supports();
    return t;
  }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<std::size_t>> support_;
};

// Packed GF(2) vector.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  static BitVector from_support(std::size_t bits, std::span<const std::size_t> support) {
    BitVector v(bits);
    for (auto i : support) v.flip(i);
    return v;
  }

  std::size_t size() const noexcept { return bits_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  // Index of the lowest set bit, or size() when empty.
  std::size_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
    }
    return bits_;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Incrementally built GF(2) row space in echelon form, keyed by pivot column.
class RowSpace {
 public:
  explicit RowSpace(std::size_t bits) : pivot_row_(bits, npos) {}

  explicit RowSpace(const BinaryMatrix& generators) : RowSpace(generators.cols()) {
    for (std::size_t r = 0; r < generators.rows(); ++r) {
      insert(BitVector::from_support(generators.cols(), generators.row(r)));
    }
  }

  // Returns true when `v` was independent of the rows already present.
  bool insert(BitVector v) {
    reduce(v);
    if (v.none()) return false;
    pivot_row_[v.lowest()] = basis_.size();
    basis_.push_back(std::move(v));
    return true;
  }

  bool contains(BitVector v) const {
    reduce(v);
    return v.none();
  }

  std::size_t rank() const noexcept { return basis_.size(); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Each basis row has its pivot as lowest set bit, so eliminating bit i only
  // touches bits >= i and a single ascending scan fully reduces v.
  void reduce(BitVector& v) const {
    for (std::size_t i = v.lowest(); i < v.size(); ++i) {
      if (v.test(i) && pivot_row_[i] != npos) v ^= basis_[pivot_row_[i]];
    }
  }

  std::vector<BitVector> basis_;
  std::vector<std::size_t> pivot_row_;
};

inline std::size_t gf2_rank(const BinaryMatrix& m) { return RowSpace(m).rank(); }

}  // namespace nonlocality
