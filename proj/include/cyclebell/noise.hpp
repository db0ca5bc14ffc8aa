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

#ifndef CYCLEBELL_NOISE_HPP
#define CYCLEBELL_NOISE_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cyclebell/circuit.hpp"
#include "cyclebell/rng.hpp"

namespace cyclebell {

/// Trapped-ion error model: single-qubit depolarizing after every pulse,
/// two-qubit depolarizing plus joint bit-flip after every entangling gate,
/// idle dephasing, and fixed-rate crosstalk between unintentionally coupled
/// ion pairs. Times in seconds, probabilities dimensionless.
struct NoiseParams {
  double p1d = 0;    // single-qubit depolarizing rate
  double p2d = 0;    // two-qubit depolarizing rate
  double p2xx = 0;   // joint bit-flip (overrotation) rate, JSON key "p2XX"
  double T2 = 0.2;   // dephasing time
  double t1 = 10e-6;   // single-qubit gate duration
  double t2 = 350e-6;  // two-qubit gate duration
  double pc = 6e-4;    // crosstalk XX rate
  /// Unintended pairs applied after every entangling gate. Empty means the
  /// default rule: the ions adjacent (on the ring) to the gate's target pair.
  std::vector<std::pair<int, int>> crosstalk_pairs;

  static NoiseParams zero() {
    NoiseParams np;
    np.pc = 0;
    np.t1 = np.t2 = 0;  // no idle dephasing either
    return np;
  }

  bool is_zero() const { return p1d <= 0 && p2d <= 0 && p2xx <= 0 && pc <= 0 && t1 <= 0 && t2 <= 0; }

  /// Idle dephasing probability for a wait of duration t.
  double p_idle(double t) const { return (1.0 - std::exp(-t / (2.0 * T2))) / 2.0; }

  void validate() const;
  std::string to_json() const;
  static NoiseParams from_json(const std::string& text);
};

/// One compiled (circuit, noise) pair, reusable across shots. A shot first
/// draws the stochastic error events; event-free trajectories sample
/// directly from the cached noiseless distribution, everything else is
/// simulated as a quantum trajectory. Readout is noiseless here; readout
/// error composes later through the confusion model.
class ShotSampler {
 public:
  /// bases: per-qubit measurement pattern from {X, Y, Z}; rotations are
  /// appended as a pulse layer. Pass all-Z when the circuit already rotates.
  ShotSampler(const Circuit& circuit, const NoiseParams& noise, const std::string& bases);

  BinaryVector sample(RngStream& rng) const;
  /// Final trajectory state (before measurement); used by population checks.
  StateVector trajectory_state(RngStream& rng) const;

  const Eigen::VectorXcd& noiseless_state() const { return noiseless_; }
  int num_qubits() const { return n_; }

 private:
  enum class EventKind { Depol1, Depol2, JointXX, IdleZ };
  struct Step {
    bool is_gate;
    GateOp gate;       // when is_gate
    EventKind event;   // when !is_gate
    double p = 0;
    int q0 = 0, q1 = 0;
  };

  void run(StateVector& s, const std::vector<std::pair<size_t, double>>& fired) const;

  int n_;
  std::vector<Step> steps_;
  Eigen::VectorXcd noiseless_;
  std::vector<double> cdf_;
  bool any_noise_;
};

/// One noisy trajectory of `circuit` measured in `bases`; returns the
/// outcome bits (bit j = outcome of qubit j, 0 meaning eigenvalue +1).
BinaryVector noisy_shot(const Circuit& circuit, const NoiseParams& noise, const std::string& bases,
                        RngStream& rng);

/// Noiseless sampling: rotates into the given bases and draws N outcomes.
std::vector<BinaryVector> measure_and_sample(const StateVector& state, const std::string& bases, int shots,
                                             RngStream& rng);

/// Odd-parity population A = <01|rho|01> + <10|rho|10> of a two-qubit state.
double parity_population_A(const StateVector& two_qubit_state);

}  // namespace cyclebell

#endif
