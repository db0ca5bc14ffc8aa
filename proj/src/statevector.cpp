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

#include "cyclebell/statevector.hpp"

#include <cmath>

namespace cyclebell {

namespace {
constexpr Complex kI{0.0, 1.0};
}

void apply_1q(StateVector& s, int j, const Eigen::Matrix2cd& u) {
  if (j < 0 || j >= s.num_qubits()) throw std::invalid_argument("apply_1q: bad target");
  auto& a = s.amplitudes();
  const int64_t stride = int64_t{1} << j;
  for (int64_t base = 0; base < a.size(); base += 2 * stride)
    for (int64_t low = 0; low < stride; ++low) {
      int64_t i0 = base + low;
      int64_t i1 = i0 + stride;
      Complex v0 = a[i0], v1 = a[i1];
      a[i0] = u(0, 0) * v0 + u(0, 1) * v1;
      a[i1] = u(1, 0) * v0 + u(1, 1) * v1;
    }
}

void apply_2q(StateVector& s, int j, int k, const Eigen::Matrix4cd& u) {
  if (j == k || j < 0 || k < 0 || j >= s.num_qubits() || k >= s.num_qubits())
    throw std::invalid_argument("apply_2q: bad targets");
  auto& a = s.amplitudes();
  const int64_t bj = int64_t{1} << j, bk = int64_t{1} << k;
  for (int64_t i = 0; i < a.size(); ++i) {
    if (i & (bj | bk)) continue;
    int64_t idx[4] = {i, i | bj, i | bk, i | bj | bk};
    Complex v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
    for (int r = 0; r < 4; ++r)
      a[idx[r]] = u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] + u(r, 3) * v[3];
  }
}

Eigen::Matrix2cd rz_matrix(double theta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(-kI * (theta / 2));
  m(1, 1) = std::exp(kI * (theta / 2));
  return m;
}

Eigen::Matrix2cd rxy_matrix(double phi, double theta) {
  // exp(-i theta/2 (cos phi X + sin phi Y))
  Eigen::Matrix2cd m;
  double c = std::cos(theta / 2), sn = std::sin(theta / 2);
  Complex off = -kI * sn * std::exp(-kI * phi);
  m << c, off, -kI * sn * std::exp(kI * phi), c;
  return m;
}

Eigen::Matrix2cd basis_rotation_matrix(char basis) {
  constexpr double kHalfPi = 1.5707963267948966;
  switch (basis) {
    case 'X': return rxy_matrix(kHalfPi, -kHalfPi);  // R_y(-pi/2): X -> Z
    case 'Y': return rxy_matrix(0.0, kHalfPi);       // R_x(+pi/2): Y -> Z
    case 'Z': return Eigen::Matrix2cd::Identity();
    default: throw std::invalid_argument("basis_rotation_matrix: basis must be X, Y or Z");
  }
}

void apply_rz(StateVector& s, int j, double theta) { apply_1q(s, j, rz_matrix(theta)); }

void apply_rxy(StateVector& s, int j, double phi, double theta) { apply_1q(s, j, rxy_matrix(phi, theta)); }

void apply_cz(StateVector& s, int j, int k) {
  if (j == k) throw std::invalid_argument("apply_cz: targets must differ");
  auto& a = s.amplitudes();
  const int64_t m = (int64_t{1} << j) | (int64_t{1} << k);
  for (int64_t i = 0; i < a.size(); ++i)
    if ((i & m) == m) a[i] = -a[i];
}

void apply_rxx(StateVector& s, double theta, int j, int k) {
  // exp(-i theta XX) = cos(theta) I - i sin(theta) X(x)X
  auto& a = s.amplitudes();
  if (j == k || j < 0 || k < 0 || j >= s.num_qubits() || k >= s.num_qubits())
    throw std::invalid_argument("apply_rxx: bad targets");
  const Complex c = std::cos(theta), ms = -kI * std::sin(theta);
  const int64_t bj = int64_t{1} << j, bk = int64_t{1} << k;
  for (int64_t i = 0; i < a.size(); ++i) {
    int64_t p = i ^ (bj | bk);  // partner under X(x)X
    if (p < i) continue;
    Complex v0 = a[i], v1 = a[p];
    a[i] = c * v0 + ms * v1;
    a[p] = c * v1 + ms * v0;
  }
}

double pauli_expectation(const StateVector& s, const PauliOperator& p) {
  if (p.num_qubits() != s.num_qubits()) throw std::invalid_argument("pauli_expectation: dimension mismatch");
  if (!p.is_hermitian()) throw std::invalid_argument("pauli_expectation: operator is not Hermitian");
  // P|z> = i^{phase + a.b} (-1)^{b.z} |z ^ a>
  const auto& amps = s.amplitudes();
  const uint64_t a = p.xbits().bits(), b = p.zbits().bits();
  int lead = (p.phase_exp() + std::popcount(a & b)) % 4;
  static const Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex acc = 0;
  for (int64_t z = 0; z < amps.size(); ++z) {
    Complex term = amps[static_cast<int64_t>(static_cast<uint64_t>(z) ^ a)];
    if (std::popcount(static_cast<uint64_t>(z) & b) & 1) term = -term;
    acc += std::conj(term) * amps[z];
  }
  // Note the flip target carries the conjugate: <psi|P|psi> = sum_z conj(amp_{z^a}) i^lead (-1)^{b.z} amp_z.
  return (kPhase[lead] * acc).real();
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  Complex ov = a.amplitudes().dot(b.amplitudes());
  return std::norm(ov);
}

}  // namespace cyclebell
