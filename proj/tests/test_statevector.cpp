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

#include <doctest.h>

#include <array>
#include <cmath>

#include "cyclebell/circuit.hpp"
#include "cyclebell/noise.hpp"
#include "cyclebell/rng.hpp"
#include "table3_oracle.hpp"

using namespace cyclebell;

namespace {

constexpr double kPi = 3.14159265358979323846;

StateVector c6_state() {
  StateVector zero(6);
  return apply_circuit(zero, preparation_circuit(CycleGraph(6), PrepForm::CZ));
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  int64_t dim = int64_t{1} << c.num_qubits();
  Eigen::MatrixXcd u(dim, dim);
  for (int64_t col = 0; col < dim; ++col) {
    StateVector s(c.num_qubits());
    s.amplitudes().setZero();
    s.amplitudes()[col] = 1.0;
    u.col(col) = apply_circuit(s, c).amplitudes();
  }
  return u;
}

double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Complex tr = (a.adjoint() * b).trace();
  Complex phase = std::abs(tr) < 1e-12 ? Complex(1, 0) : tr / std::abs(tr);
  return (a * phase - b).norm();
}

}  // namespace

TEST_CASE("elementary gate facts") {
  StateVector s(2);
  s.amplitudes().setZero();
  s.amplitudes()[3] = 1.0;  // |11>
  apply_cz(s, 0, 1);
  CHECK(s.amplitudes()[3].real() == doctest::Approx(-1.0));

  // RXX(pi/4) twice equals RXX(pi/2).
  RngStream rng(3);
  StateVector t(2);
  t.amplitudes() = Eigen::VectorXcd::Random(4).normalized();
  StateVector twice = t, once = t;
  apply_rxx(twice, kPi / 4, 0, 1);
  apply_rxx(twice, kPi / 4, 0, 1);
  apply_rxx(once, kPi / 2, 0, 1);
  CHECK((twice.amplitudes() - once.amplitudes()).norm() == doctest::Approx(0.0).epsilon(1e-12));

  // Basis rotations map the +1 eigenstate to |0>.
  StateVector plus(1);
  plus.amplitudes() << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  apply_1q(plus, 0, basis_rotation_matrix('X'));
  CHECK(std::norm(plus.amplitudes()[0]) == doctest::Approx(1.0));
  StateVector plus_i(1);
  plus_i.amplitudes() << 1 / std::sqrt(2.0), Complex(0, 1) / std::sqrt(2.0);
  apply_1q(plus_i, 0, basis_rotation_matrix('Y'));
  CHECK(std::norm(plus_i.amplitudes()[0]) == doctest::Approx(1.0));
}

TEST_CASE("norm is preserved through random circuits") {
  RngStream rng(11);
  StateVector s(5);
  for (int step = 0; step < 200; ++step) {
    int kind = static_cast<int>(rng.next_u64() % 4);
    int a = static_cast<int>(rng.next_u64() % 5);
    int b = (a + 1 + static_cast<int>(rng.next_u64() % 4)) % 5;
    double th = rng.next_double() * 4 * kPi, ph = rng.next_double() * 2 * kPi;
    switch (kind) {
      case 0: apply_rz(s, a, th); break;
      case 1: apply_rxy(s, a, ph, th); break;
      case 2: apply_cz(s, a, b); break;
      case 3: apply_rxx(s, th, a, b); break;
    }
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("CZ-form preparation: every stabilizer expectation is +1") {
  Circuit prep = preparation_circuit(CycleGraph(6), PrepForm::CZ);
  CHECK(prep.depth() == 3);  // |+> layer plus two disjoint CZ layers for even n
  CHECK(prep.layers()[1].size() + prep.layers()[2].size() == 6);
  StateVector c6 = c6_state();
  for (auto [input, expected] : cyclebell::testing::kC6Stabilizers) {
    PauliOperator s = PauliOperator::from_string(expected);
    CHECK(pauli_expectation(c6, PauliOperator(s.xbits(), s.zbits(), 0)) ==
          doctest::Approx(s.sign()).epsilon(1e-10));
  }
}

TEST_CASE("expectation facts: nonmembers vanish, signs flip") {
  StateVector c6 = c6_state();
  CHECK(pauli_expectation(c6, PauliOperator::from_string("ZIIIII")) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(pauli_expectation(c6, PauliOperator::from_string("XIYXYI")) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK_THROWS_AS(pauli_expectation(c6, PauliOperator::from_string("+iXXXXXX")), std::invalid_argument);
}

TEST_CASE("single CZ decomposes into RXX(pi/4) with local rotations") {
  Circuit cz(2);
  cz.add_layer({GateOp::cz(0, 1)});
  Circuit comp(2);
  comp.add_layer({GateOp::rz(0, -kPi / 2), GateOp::rz(1, -kPi / 2)});
  comp.add_layer({GateOp::rxy(0, kPi / 2, kPi / 2), GateOp::rxy(1, kPi / 2, kPi / 2)});
  comp.add_layer({GateOp::rxx(0, 1, kPi / 4)});
  comp.add_layer({GateOp::rxy(0, kPi / 2, -kPi / 2), GateOp::rxy(1, kPi / 2, -kPi / 2)});
  CHECK(distance_up_to_phase(circuit_unitary(cz), circuit_unitary(comp)) < 1e-9);
}

TEST_CASE("CZ-form and RXX-form preparations agree up to global phase") {
  for (int n : {3, 4, 5, 6, 8}) {
    StateVector zero(n);
    StateVector a = apply_circuit(zero, preparation_circuit(CycleGraph(n), PrepForm::CZ));
    StateVector b = apply_circuit(zero, preparation_circuit(CycleGraph(n), PrepForm::RXX));
    CHECK(state_fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("decompose_1q reconstructs the unitary") {
  RngStream rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    // Random unitary via random rotations.
    Eigen::Matrix2cd u = rxy_matrix(rng.next_double() * 2 * kPi, rng.next_double() * 4 * kPi) *
                         rz_matrix(rng.next_double() * 4 * kPi) *
                         rxy_matrix(rng.next_double() * 2 * kPi, rng.next_double() * 4 * kPi);
    ZxzDecomposition d = decompose_1q(u);
    Eigen::Matrix2cd rebuilt = rz_matrix(d.gamma) * rxy_matrix(d.phi, d.theta);
    CHECK(distance_up_to_phase(u, rebuilt) < 1e-9);
  }
}

TEST_CASE("merged measurement circuit reproduces the CZ-form distribution") {
  RngStream rng(31);
  const char letters[3] = {'X', 'Y', 'Z'};
  for (int trial = 0; trial < 12; ++trial) {
    std::string bases;
    for (int j = 0; j < 6; ++j) bases.push_back(letters[rng.next_u64() % 3]);
    auto ref = measurement_circuit(CycleGraph(6), PrepForm::CZ, bases);
    auto dev = measurement_circuit(CycleGraph(6), PrepForm::RXX, bases);
    StateVector zero(6);
    auto pref = apply_circuit(zero, ref.circuit).amplitudes();
    auto pdev = apply_circuit(zero, dev.circuit).amplitudes();
    REQUIRE(!ref.flip_mask.any());
    for (int64_t y = 0; y < 64; ++y) {
      auto flipped = static_cast<int64_t>(static_cast<uint64_t>(y) ^ dev.flip_mask.bits());
      CHECK(std::abs(std::norm(pdev[flipped]) - std::norm(pref[y])) < 1e-9);
    }
  }
}

TEST_CASE("sampling respects the all-X sublattice parities on |C6>") {
  StateVector c6 = c6_state();
  RngStream rng(37);
  auto samples = measure_and_sample(c6, "XXXXXX", 2000, rng);
  for (const auto& y : samples) {
    CHECK(((y.get(1) ^ y.get(3) ^ y.get(5)) == 0));
    CHECK(((y.get(0) ^ y.get(2) ^ y.get(4)) == 0));
  }
}

TEST_CASE("all-Z sampling of |C6> is uniform over all strings") {
  // The only Z-type submeasurement in the group is the identity, so the
  // closed-form outcome law has no parity constraint: Pr[y] = 1/64.
  StateVector c6 = c6_state();
  for (int64_t z = 0; z < 64; ++z) CHECK(std::norm(c6.amplitudes()[z]) == doctest::Approx(1.0 / 64));
  RngStream rng(53);
  const int N = 64000;
  std::array<int, 64> counts{};
  for (const auto& y : measure_and_sample(c6, "ZZZZZZ", N, rng)) counts[y.bits()]++;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - N / 64.0) * (c - N / 64.0) / (N / 64.0);
  CHECK(chi2 < 120);  // df = 63; far tail at p ~ 1e-5
}

TEST_CASE("sampling a product state in Z gives all zeros") {
  StateVector zero(4);
  RngStream rng(41);
  for (const auto& y : measure_and_sample(zero, "ZZZZ", 50, rng)) CHECK(y.popcount() == 0);
}

TEST_CASE("basis-rotation correctness: sampled means match expectations") {
  StateVector c6 = c6_state();
  RngStream rng(43);
  const int N = 20000;
  // A mixed-basis member (input 110011 -> +XYZZYX) and a nonmember.
  struct Case { const char* pauli; const char* bases; };
  for (auto [pauli, bases] : {Case{"+XYZZYX", "XYZZYX"}, Case{"ZIIIII", "ZXYZXY"}}) {
    PauliOperator p = PauliOperator::from_string(pauli);
    double expect = pauli_expectation(c6, p);
    auto samples = measure_and_sample(c6, bases, N, rng);
    double mean = 0;
    for (const auto& y : samples) {
      int par = (y & p.support()).popcount() & 1;
      mean += par ? -1.0 : 1.0;
    }
    mean /= N;
    CHECK(std::abs(mean - expect) < 4.0 / std::sqrt(static_cast<double>(N)));
  }
}
