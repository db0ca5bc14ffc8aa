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

#ifndef CYCLEBELL_TOMOGRAPHY_HPP
#define CYCLEBELL_TOMOGRAPHY_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclebell/games.hpp"
#include "cyclebell/noise.hpp"

namespace cyclebell {

/// A signed stabilizer labeled by its generator-product input x (S = S_x).
struct SignedStabilizer {
  BinaryVector input;
  PauliOperator op;
};

/// One measurement setting: a global basis pattern plus the diagonalization
/// data (omega_S, f^(S)) of every member it estimates.
struct PlanMember {
  BinaryVector input;
  PauliOperator op;
  int omega;           // +-1 phase after rotating into the Z basis
  BinaryVector mask;   // f^(S): the support of the member
};

struct Clique {
  std::string bases;   // per-qubit X/Y/Z pattern, qubit 0 first
  std::vector<PlanMember> members;
};

struct MeasurementPlan {
  int n = 0;
  std::vector<Clique> cliques;

  size_t num_settings() const { return cliques.size(); }
  size_t num_stabilizers() const;
  uint64_t hash() const;
  void validate() const;  // local commutation + unique membership
};

/// All 63 nontrivial stabilizers of the cycle, in closed form.
std::vector<SignedStabilizer> nontrivial_stabilizers(const CycleGraph& g);

/// Greedy first-fit cover into locally commuting cliques: candidates are
/// taken in descending Pauli weight (canonical string order breaking ties)
/// and join the first clique whose basis pattern they fit.
MeasurementPlan greedy_clique_cover(int n, const std::vector<SignedStabilizer>& stabilizers);

/// Readout confusion model: per-qubit 2x2 stochastic matrices (tensor
/// product) or one full 2^n x 2^n stochastic matrix. Column b holds the
/// distribution of observed strings given prepared string b.
class ConfusionModel {
 public:
  static ConfusionModel identity(int n);
  /// Per-qubit flip rates: p01 = Pr[read 1 | prepared 0], p10 the reverse.
  static ConfusionModel uniform_flips(int n, double p01, double p10);
  static ConfusionModel tensor(std::vector<Eigen::Matrix2d> per_qubit);
  static ConfusionModel full(Eigen::MatrixXd m);

  int num_qubits() const { return n_; }
  bool is_tensor() const { return full_.size() == 0; }
  bool is_identity() const;

  /// Per-shot SPAM-inversion weight sum_z [M^-1]_{z,b} (-1)^{mask.z}.
  double correction_weight(const BinaryVector& mask, const BinaryVector& observed) const;

  /// Applies readout noise to an ideal outcome.
  BinaryVector sample(const BinaryVector& ideal, RngStream& rng) const;

  const Eigen::MatrixXd& full_matrix() const;
  Eigen::MatrixXd full_inverse() const;

  std::string to_json() const;
  static ConfusionModel from_json(const std::string& text);

 private:
  ConfusionModel() = default;
  void prepare();

  int n_ = 0;
  std::vector<Eigen::Matrix2d> qubit_;      // tensor factors
  std::vector<Eigen::Matrix2d> qubit_inv_;  // cached inverses
  Eigen::MatrixXd full_, full_inv_;         // full-matrix variant
};

/// Bitstring tallies for one clique.
struct ShotData {
  int64_t shots = 0;
  std::map<uint64_t, int64_t> tallies;
};

struct ShotDataset {
  uint64_t plan_hash = 0;
  int n = 0;
  std::vector<ShotData> cliques;

  std::string to_json(const MeasurementPlan& plan) const;
  static ShotDataset from_json(const std::string& text);
};

/// Simulates the full tomography experiment: for every setting, runs
/// shots-per-setting noisy trajectories of the preparation circuit rotated
/// into the setting's bases, optionally composes readout error, and tallies.
ShotDataset simulate_dataset(const MeasurementPlan& plan, const CycleGraph& graph, PrepForm form,
                             const NoiseParams& noise, int shots_per_setting, const TrajectoryRng& rng,
                             int workers = 0, const ConfusionModel* readout = nullptr);

struct StabilizerEstimate {
  BinaryVector input;
  std::string pauli;
  double mu = 0;
  double stderr_ = 0;
  size_t clique = 0;
};

struct EstimationReport {
  int n = 0;
  bool spam_corrected = false;
  std::vector<StabilizerEstimate> stabilizers;
  std::vector<Eigen::MatrixXd> covariance_blocks;  // per clique, per-shot covariance
  std::vector<int64_t> clique_shots;

  const StabilizerEstimate& by_input(const BinaryVector& x) const;
  std::map<uint64_t, double> values_by_input() const;
};

/// Estimators mu_S = (1/N) sum_k w_S(b_k) with w the raw parity weight
/// omega_S (-1)^{f.b} or its SPAM-corrected substitute; stderr and the
/// intra-clique covariance blocks come from the same pass.
EstimationReport estimate_expectations(const MeasurementPlan& plan, const ShotDataset& data,
                                       const ConfusionModel* correction = nullptr);

/// Appendix-E SPAM inversion: estimate with q-hat substituted for p-hat.
EstimationReport spam_correct(const MeasurementPlan& plan, const ShotDataset& data,
                              const ConfusionModel& confusion);

/// Covariance of two members of the same clique; throws for cross-clique
/// pairs (those estimators are independent by construction).
double covariance_of(const MeasurementPlan& plan, const EstimationReport& report, const BinaryVector& s,
                     const BinaryVector& t);

struct FidelityWitness {
  double fidelity = 0, fidelity_stderr = 0;
  double witness = 0, witness_stderr = 0;
  bool entanglement_detected = false;
};

/// F = 2^-n (1 + sum_S mu_S) over the complete nontrivial set, with the
/// clique-aware error propagation; W = 1/2 - F.
FidelityWitness fidelity_and_witness(const EstimationReport& report);

/// ceil(8 ln(4/delta) / epsilon^2).
int64_t sampling_budget(double epsilon, double delta);

struct DirectFidelityOptions {
  double epsilon = 0.1;
  double delta = 0.05;
  uint64_t seed = 1;
  PrepForm form = PrepForm::RXX;
  NoiseParams noise = NoiseParams::zero();
};

/// Randomized direct fidelity estimation: one uniformly random stabilizer
/// per shot, sampling_budget(epsilon, delta) shots in total.
double direct_fidelity_estimate(const CycleGraph& graph, const DirectFidelityOptions& options);

struct CorrectedInputRate {
  BinaryVector x;
  double rate = 0;      // win mass of the SPAM-inverted distribution
  double stderr_ = 0;   // propagated from the per-shot correction weights
};

struct GamePlayReport {
  SuccessEstimate raw;  // per-shot refereeing of the observed outcomes
  double corrected_p_hat = 0;
  double corrected_stderr = 0;
  std::vector<CorrectedInputRate> corrected;
};

/// Plays a game with readout error composed onto every shot. The raw rate
/// referees observed outcomes shot by shot; the corrected rate applies the
/// confusion inversion to each input's outcome distribution and sums the
/// recovered quasi-probability over Win(x).
GamePlayReport play_with_readout(const GameInstance& game, const NoiseParams& noise,
                                 const ConfusionModel& readout, const PlayOptions& options);

}  // namespace cyclebell

#endif
