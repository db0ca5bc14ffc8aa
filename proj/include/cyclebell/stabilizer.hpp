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

#ifndef CYCLEBELL_STABILIZER_HPP
#define CYCLEBELL_STABILIZER_HPP

#include <utility>
#include <vector>

#include "cyclebell/pauli.hpp"

namespace cyclebell {

/// The n-vertex cycle graph; vertex j neighbors j-1 and j+1 mod n.
struct CycleGraph {
  explicit CycleGraph(int n_) : n(n_) {
    if (n < 3) throw std::invalid_argument("CycleGraph: need at least 3 vertices");
  }
  int n;
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    e.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) e.emplace_back(j, (j + 1) % n);
    return e;
  }
};

enum class Membership { Plus, Minus, NotMember };

/// A stabilizer group held as its generator list plus a reduced symplectic
/// basis for membership queries. Membership is decided by Gaussian
/// elimination over (x|z) rows; the sign is then recomputed by exact
/// phase-tracked multiplication of the contributing generators.
class StabilizerGroup {
 public:
  explicit StabilizerGroup(std::vector<PauliOperator> generators);

  /// Graph-state generators S_v = X_v prod_{l in N(v)} Z_l for the cycle,
  /// i.e. S_j = Z_{j-1} X_j Z_{j+1}.
  static StabilizerGroup cycle(const CycleGraph& g);

  int num_qubits() const { return n_; }
  const std::vector<PauliOperator>& generators() const { return gens_; }

  Membership membership_with_sign(const PauliOperator& p) const;

  /// The group element with generator-combination coords (one bit per generator).
  PauliOperator element(const BinaryVector& coords) const;

 private:
  friend std::vector<std::pair<PauliOperator, int>> stabilizer_submeasurements(const StabilizerGroup&,
                                                                              const BinaryVector&);
  struct Row {
    uint64_t x, z;      // symplectic row
    uint64_t combo;     // which generators were folded into this row
  };
  static uint64_t lowest_bit(const Row& r);
  static bool bit_of(const Row& r, uint64_t col);
  // Reduces (x|z); returns remaining row plus the accumulated combination.
  Row reduce(uint64_t x, uint64_t z) const;

  int n_ = 0;
  std::vector<PauliOperator> gens_;
  std::vector<Row> rows_;  // echelon form of the generator rows
};

/// Closed form of the cycle-graph group element prod_j S_j^{x_j}:
///   S_x = (-1)^{g_n(x)} (x) E(x_j, x_{j-1} + x_{j+1}).
PauliOperator cycle_stabilizer(int n, const BinaryVector& x);

/// All submeasurements of the global operator E(1, x) lying in +-S, with
/// signs: P_x = { P subset E(1,x) | P in +-S }. Ordered by ascending support
/// mask, so the identity (sign +) comes first. |P_x| is a power of two.
std::vector<std::pair<PauliOperator, int>> stabilizer_submeasurements(const StabilizerGroup& group,
                                                                      const BinaryVector& x);

}  // namespace cyclebell

#endif
