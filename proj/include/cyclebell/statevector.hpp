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

#ifndef CYCLEBELL_STATEVECTOR_HPP
#define CYCLEBELL_STATEVECTOR_HPP

#include <Eigen/Dense>
#include <complex>

#include "cyclebell/pauli.hpp"

namespace cyclebell {

using Complex = std::complex<double>;

/// Dense n-qubit state. Amplitude index bit j is the computational value of
/// qubit j (qubit 0 = least significant bit).
class StateVector {
 public:
  explicit StateVector(int n) : n_(n), amps_(Eigen::VectorXcd::Zero(int64_t{1} << n)) {
    if (n < 0 || n > 24) throw std::invalid_argument("StateVector: qubit count out of range");
    amps_[0] = 1.0;
  }

  int num_qubits() const { return n_; }
  int64_t dim() const { return amps_.size(); }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

  double norm() const { return amps_.norm(); }

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

/// In-place application of a single-qubit unitary to qubit j.
void apply_1q(StateVector& s, int j, const Eigen::Matrix2cd& u);

/// In-place application of a two-qubit unitary to qubits (j, k); the 4x4
/// matrix is indexed with j as the low bit.
void apply_2q(StateVector& s, int j, int k, const Eigen::Matrix4cd& u);

void apply_rz(StateVector& s, int j, double theta);
/// Rotation by theta about the axis cos(phi) X + sin(phi) Y.
void apply_rxy(StateVector& s, int j, double phi, double theta);
void apply_cz(StateVector& s, int j, int k);
/// R_XX(theta) = exp(-i theta X (x) X).
void apply_rxx(StateVector& s, double theta, int j, int k);

Eigen::Matrix2cd rz_matrix(double theta);
Eigen::Matrix2cd rxy_matrix(double phi, double theta);
/// Basis-change rotation: maps the +1 eigenspace of the given Pauli letter to
/// |0>, so a subsequent Z measurement reads out that observable.
Eigen::Matrix2cd basis_rotation_matrix(char basis);

/// <psi| P |psi> for a Hermitian Pauli; throws on non-Hermitian input.
double pauli_expectation(const StateVector& s, const PauliOperator& p);

/// |<a|b>|^2, tolerant of a global phase.
double state_fidelity(const StateVector& a, const StateVector& b);

}  // namespace cyclebell

#endif
