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

#include "cyclebell/pauli.hpp"

#include <bit>

namespace cyclebell {

PauliOperator operator*(const PauliOperator& p, const PauliOperator& q) {
  if (p.num_qubits() != q.num_qubits())
    throw std::invalid_argument("PauliOperator: dimension mismatch in product");
  // Per qubit, E(a,b) E(a',b') = i^phi E(a^a', b^b') with
  //   phi = a b + a' b' + 2 a' b - (a^a')(b^b')  (mod 4).
  // Summing phi over qubits reduces to popcounts of ANDed bit masks.
  uint64_t a = p.x_.bits(), b = p.z_.bits();
  uint64_t a2 = q.x_.bits(), b2 = q.z_.bits();
  int phi = std::popcount(a & b) + std::popcount(a2 & b2) + 2 * std::popcount(a2 & b) -
            std::popcount((a ^ a2) & (b ^ b2));
  return PauliOperator(p.x_ ^ q.x_, p.z_ ^ q.z_, p.phase_ + q.phase_ + phi);
}

PauliOperator PauliOperator::from_string(std::string_view s) {
  int phase = 0;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') phase = 2;
    ++i;
  }
  if (i < s.size() && s[i] == 'i') {
    phase += 1;
    ++i;
  }
  std::string_view b = s.substr(i);
  BinaryVector xs(static_cast<int>(b.size())), zs(static_cast<int>(b.size()));
  for (int j = 0; j < static_cast<int>(b.size()); ++j) {
    switch (b[static_cast<size_t>(j)]) {
      case 'I': break;
      case 'X': xs.set(j, true); break;
      case 'Y': xs.set(j, true); zs.set(j, true); break;
      case 'Z': zs.set(j, true); break;
      default: throw std::invalid_argument("PauliOperator: bad character in Pauli string");
    }
  }
  return PauliOperator(xs, zs, phase);
}

}  // namespace cyclebell
