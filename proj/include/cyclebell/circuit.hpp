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

#ifndef CYCLEBELL_CIRCUIT_HPP
#define CYCLEBELL_CIRCUIT_HPP

#include <string>
#include <vector>

#include "cyclebell/statevector.hpp"
#include "cyclebell/stabilizer.hpp"

namespace cyclebell {

enum class GateKind { RZ, RXY, CZ, RXX, BasisRot };

struct GateOp {
  GateKind kind;
  int q0 = -1;
  int q1 = -1;        // second target for CZ / RXX
  double theta = 0;   // rotation angle
  double phi = 0;     // axis angle for RXY
  char basis = 'Z';   // for BasisRot

  static GateOp rz(int j, double theta) { return {GateKind::RZ, j, -1, theta, 0, 'Z'}; }
  static GateOp rxy(int j, double phi, double theta) { return {GateKind::RXY, j, -1, theta, phi, 'Z'}; }
  static GateOp cz(int j, int k) { return {GateKind::CZ, j, k, 0, 0, 'Z'}; }
  static GateOp rxx(int j, int k, double theta) { return {GateKind::RXX, j, k, theta, 0, 'Z'}; }
  static GateOp basis_rot(int j, char basis) { return {GateKind::BasisRot, j, -1, 0, 0, basis}; }

  bool is_two_qubit() const { return kind == GateKind::CZ || kind == GateKind::RXX; }
  /// Physical single-qubit pulse; RZ is a frame update and BasisRot to Z a no-op.
  bool is_pulse() const {
    return kind == GateKind::RXY || (kind == GateKind::BasisRot && basis != 'Z');
  }
};

/// Ordered layers of gates with disjoint targets per layer.
class Circuit {
 public:
  explicit Circuit(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  const std::vector<std::vector<GateOp>>& layers() const { return layers_; }

  void add_layer(std::vector<GateOp> gates);
  /// Appends to the last layer if targets stay disjoint, else opens a new one.
  void append(const GateOp& g);

  std::string to_json() const;
  static Circuit from_json(const std::string& text);

 private:
  int n_;
  std::vector<std::vector<GateOp>> layers_;
};

void apply_gate(StateVector& s, const GateOp& g);
StateVector apply_circuit(const StateVector& s, const Circuit& c);

enum class PrepForm { CZ, RXX };

/// Cluster-state preparation circuit. The CZ form is one |+> preparation
/// layer followed by the cycle's CZ gates packed into 2 layers (even n) or 3
/// (odd n). The RXX form is the device compilation: the commuting layer of
/// R_XX(pi/4) gates applied one per layer (entangling gates run sequentially
/// on the ion chain) and a single closing rotation layer; interior
/// single-qubit rotations all cancel in the merge.
Circuit preparation_circuit(const CycleGraph& g, PrepForm form);

/// Preparation plus measurement-basis change, with adjacent single-qubit
/// rotations merged. Rotations that reduce to a bit flip in front of the
/// terminal Z measurement are replaced by classical flips (flip_mask);
/// diagonal leftovers are dropped.
struct MeasuredCircuit {
  Circuit circuit;
  BinaryVector flip_mask;
};
MeasuredCircuit measurement_circuit(const CycleGraph& g, PrepForm form, const std::string& bases);

/// Decomposition U = phase * RZ(gamma) * RXY(phi, theta) of a single-qubit
/// unitary (RXY applied first). theta is normalized to [0, 2pi).
struct ZxzDecomposition {
  double gamma, phi, theta;
};
ZxzDecomposition decompose_1q(const Eigen::Matrix2cd& u);

}  // namespace cyclebell

#endif
