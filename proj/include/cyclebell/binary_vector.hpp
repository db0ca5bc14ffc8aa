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

#ifndef CYCLEBELL_BINARY_VECTOR_HPP
#define CYCLEBELL_BINARY_VECTOR_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclebell {

/// A length-n vector over F2, n <= 64. Bit j is the j-th entry; all
/// arithmetic is mod 2. Rendered left-to-right starting from entry 0,
/// so "100000" has x0 = 1.
class BinaryVector {
 public:
  BinaryVector() = default;
  explicit BinaryVector(int n, uint64_t bits = 0) : n_(n), bits_(bits) {
    if (n < 0 || n > 64) throw std::invalid_argument("BinaryVector: length must be in [0, 64]");
    mask();
  }

  static BinaryVector from_string(std::string_view s) {
    BinaryVector v(static_cast<int>(s.size()));
    for (int j = 0; j < v.n_; ++j) {
      char c = s[static_cast<size_t>(j)];
      if (c != '0' && c != '1') throw std::invalid_argument("BinaryVector: expected only 0/1");
      if (c == '1') v.set(j, true);
    }
    return v;
  }

  static BinaryVector unit(int n, int j) {
    BinaryVector v(n);
    v.set(j, true);
    return v;
  }

  int size() const { return n_; }
  uint64_t bits() const { return bits_; }

  bool get(int j) const { return (bits_ >> index(j)) & 1u; }
  void set(int j, bool v) {
    uint64_t m = uint64_t{1} << index(j);
    bits_ = v ? (bits_ | m) : (bits_ & ~m);
  }

  int popcount() const { return std::popcount(bits_); }
  bool any() const { return bits_ != 0; }
  bool parity() const { return std::popcount(bits_) & 1; }

  /// Cyclic shift: result[j] = (*this)[(j + s) mod n].
  BinaryVector rotated(int s) const {
    if (n_ == 0) return *this;
    int k = ((s % n_) + n_) % n_;
    uint64_t lo = bits_ >> k;
    uint64_t hi = (k == 0) ? 0 : (bits_ << (n_ - k));
    return BinaryVector(n_, lo | hi);
  }

  BinaryVector operator^(const BinaryVector& o) const { return BinaryVector(same(o), bits_ ^ o.bits_); }
  BinaryVector operator&(const BinaryVector& o) const { return BinaryVector(same(o), bits_ & o.bits_); }
  BinaryVector operator|(const BinaryVector& o) const { return BinaryVector(same(o), bits_ | o.bits_); }
  BinaryVector operator~() const { return BinaryVector(n_, ~bits_); }
  bool operator==(const BinaryVector& o) const = default;

  /// Parity of the elementwise product: sum_j x_j y_j mod 2.
  bool dot(const BinaryVector& o) const { return std::popcount(bits_ & o.bits_) & 1; }

  std::string str() const {
    std::string s(static_cast<size_t>(n_), '0');
    for (int j = 0; j < n_; ++j)
      if (get(j)) s[static_cast<size_t>(j)] = '1';
    return s;
  }

 private:
  int index(int j) const {
    if (j < 0 || j >= n_) throw std::out_of_range("BinaryVector: index out of range");
    return j;
  }
  int same(const BinaryVector& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BinaryVector: length mismatch");
    return n_;
  }
  void mask() {
    if (n_ < 64) bits_ &= (uint64_t{1} << n_) - 1;
  }

  int n_ = 0;
  uint64_t bits_ = 0;
};

/// g_n(x) = sum_j x_{j-1} x_j x_{j+1} mod 2, indices cyclic.
inline bool cubic_sign_function(const BinaryVector& x) {
  return (x.rotated(-1) & x & x.rotated(1)).parity();
}

/// Neighbor-parity vector on the cycle: b_j = x_{j-1} + x_{j+1} mod 2.
inline BinaryVector neighbor_parity(const BinaryVector& x) {
  return x.rotated(-1) ^ x.rotated(1);
}

}  // namespace cyclebell

#endif
