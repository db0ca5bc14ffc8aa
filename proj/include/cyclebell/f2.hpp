// Copyright 2026 The Cyclebell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLEBELL_F2_HPP
#define CYCLEBELL_F2_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cyclebell {

/// Dense matrix over F2 with word-packed rows. Small sizes only; this backs
/// symplectic membership tests, submeasurement kernels, and the parity
/// obstruction certificate.
class F2Matrix {
 public:
  F2Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(static_cast<size_t>(rows) * words_, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("F2Matrix: negative shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const { return (word(r, c / 64) >> (c % 64)) & 1u; }
  void set(int r, int c, bool v) {
    uint64_t m = uint64_t{1} << (c % 64);
    uint64_t& w = word(r, c / 64);
    w = v ? (w | m) : (w & ~m);
  }
  void xor_rows(int dst, int src) {
    for (int k = 0; k < words_; ++k) word(dst, k) ^= word(src, k);
  }
  bool row_empty(int r) const {
    for (int k = 0; k < words_; ++k)
      if (word(r, k)) return false;
    return true;
  }

  /// In-place row echelon form. Returns the rank; pivot_col[i] is the pivot
  /// column of reduced row i.
  int eliminate(std::vector<int>* pivot_cols = nullptr) {
    int rank = 0;
    if (pivot_cols) pivot_cols->clear();
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
      int p = -1;
      for (int r = rank; r < rows_; ++r)
        if (get(r, c)) {
          p = r;
          break;
        }
      if (p < 0) continue;
      swap_rows(p, rank);
      for (int r = 0; r < rows_; ++r)
        if (r != rank && get(r, c)) xor_rows(r, rank);
      if (pivot_cols) pivot_cols->push_back(c);
      ++rank;
    }
    return rank;
  }

  /// Basis of the kernel of this matrix (viewed as a linear map F2^cols -> F2^rows).
  /// Each basis vector is packed into a uint64_t (requires cols <= 64).
  std::vector<uint64_t> kernel_basis() const {
    if (cols_ > 64) throw std::invalid_argument("F2Matrix::kernel_basis: cols > 64");
    F2Matrix m = *this;
    std::vector<int> piv;
    m.eliminate(&piv);
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : piv) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<uint64_t> basis;
    for (int c = 0; c < cols_; ++c) {
      if (is_pivot[static_cast<size_t>(c)]) continue;
      uint64_t v = uint64_t{1} << c;
      for (size_t i = 0; i < piv.size(); ++i)
        if (m.get(static_cast<int>(i), c)) v |= uint64_t{1} << piv[i];
      basis.push_back(v);
    }
    return basis;
  }

  /// Solves M y = rhs; returns one solution or nullopt if inconsistent.
  std::optional<std::vector<bool>> solve(const std::vector<bool>& rhs) const {
    if (static_cast<int>(rhs.size()) != rows_) throw std::invalid_argument("F2Matrix::solve: rhs size");
    F2Matrix aug(rows_, cols_ + 1);
    for (int r = 0; r < rows_; ++r) {
      for (int k = 0; k < words_; ++k) aug.word(r, k) = word(r, k);
      aug.set(r, cols_, rhs[static_cast<size_t>(r)]);
    }
    std::vector<int> piv;
    aug.eliminate(&piv);
    std::vector<bool> y(static_cast<size_t>(cols_), false);
    for (size_t i = 0; i < piv.size(); ++i) {
      if (piv[i] == cols_) return std::nullopt;  // pivot in the augmented column
      y[static_cast<size_t>(piv[i])] = aug.get(static_cast<int>(i), cols_);
    }
    return y;
  }

 private:
  uint64_t& word(int r, int k) { return data_[static_cast<size_t>(r) * words_ + k]; }
  const uint64_t& word(int r, int k) const { return data_[static_cast<size_t>(r) * words_ + k]; }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int k = 0; k < words_; ++k) std::swap(word(a, k), word(b, k));
  }

  int rows_, cols_, words_;
  std::vector<uint64_t> data_;
};

}  // namespace cyclebell

#endif
