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

#ifndef CYCLEBELL_PAULI_HPP
#define CYCLEBELL_PAULI_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "cyclebell/binary_vector.hpp"

namespace cyclebell {

/// A signed n-qubit Pauli in symplectic form,
///
///   P = i^{phase_exp} * prod_j i^{a_j b_j} X_j^{a_j} Z_j^{b_j},
///
/// i.e. i^{phase_exp} times the Weyl operator E(a, b). Phases are tracked
/// exactly as an integer exponent of i mod 4, so Hermitian operators have
/// phase_exp in {0, 2}. Qubit 0 is the leftmost character when rendered.
class PauliOperator {
 public:
  PauliOperator() = default;
  PauliOperator(BinaryVector xbits, BinaryVector zbits, int phase_exp = 0)
      : x_(xbits), z_(zbits), phase_((phase_exp % 4 + 4) % 4) {
    if (x_.size() != z_.size()) throw std::invalid_argument("PauliOperator: x/z length mismatch");
  }

  static PauliOperator identity(int n) { return PauliOperator(BinaryVector(n), BinaryVector(n)); }

  /// The canonical Hermitian representative E(a, b).
  static PauliOperator weyl(const BinaryVector& a, const BinaryVector& b) { return PauliOperator(a, b); }

  /// Single-qubit letter at position j of an n-qubit identity string.
  static PauliOperator single(int n, int j, char letter) {
    BinaryVector a(n), b(n);
    switch (letter) {
      case 'I': break;
      case 'X': a.set(j, true); break;
      case 'Y': a.set(j, true); b.set(j, true); break;
      case 'Z': b.set(j, true); break;
      default: throw std::invalid_argument("PauliOperator: letter must be one of IXYZ");
    }
    return PauliOperator(a, b);
  }

  /// Parses the canonical rendering: optional sign prefix (+, -, +i, -i)
  /// followed by characters from {I, X, Y, Z}, qubit 0 leftmost.
  static PauliOperator from_string(std::string_view s);

  int num_qubits() const { return x_.size(); }
  const BinaryVector& xbits() const { return x_; }
  const BinaryVector& zbits() const { return z_; }
  int phase_exp() const { return phase_; }

  bool is_hermitian() const { return (phase_ & 1) == 0; }
  bool is_identity() const { return !x_.any() && !z_.any(); }
  /// +1 for phase_exp 0, -1 for phase_exp 2; requires a Hermitian operator.
  int sign() const {
    if (!is_hermitian()) throw std::logic_error("PauliOperator::sign: operator is not Hermitian");
    return phase_ == 0 ? +1 : -1;
  }

  BinaryVector support() const { return x_ | z_; }
  int weight() const { return support().popcount(); }

  char letter(int j) const {
    bool a = x_.get(j), b = z_.get(j);
    return a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I');
  }

  /// The unsigned body, e.g. "XIYXYI".
  std::string body() const {
    std::string s;
    s.reserve(static_cast<size_t>(num_qubits()));
    for (int j = 0; j < num_qubits(); ++j) s.push_back(letter(j));
    return s;
  }

  std::string str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    return prefix[phase_] + body();
  }

  bool operator==(const PauliOperator& o) const = default;

  /// True iff the operators commute as n-qubit operators.
  bool commutes_with(const PauliOperator& o) const {
    return !(x_.dot(o.z_) ^ z_.dot(o.x_));
  }

  /// True iff [P_j, Q_j] = 0 on every qubit j: the single-qubit factors are
  /// equal or at least one of them is the identity.
  bool locally_commutes_with(const PauliOperator& o) const {
    BinaryVector both = support() & o.support();
    BinaryVector differ = (x_ ^ o.x_) | (z_ ^ o.z_);
    return !(both & differ).any();
  }

  friend PauliOperator operator*(const PauliOperator& p, const PauliOperator& q);

 private:
  BinaryVector x_, z_;
  int phase_ = 0;
};

}  // namespace cyclebell

#endif
