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

#ifndef CYCLEBELL_GAMES_HPP
#define CYCLEBELL_GAMES_HPP

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cyclebell/noise.hpp"
#include "cyclebell/stabilizer.hpp"

namespace cyclebell {

/// Exact fraction with int64 parts; enough headroom for every search here.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  Rational() = default;
  Rational(int64_t n, int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

enum class GameKind { CBF, SS };
enum class InputSetKind { Full, Mermin55, HLF8, HLF5, HLFn5, Custom };

/// A materialized input set for one of the games.
class InputSet {
 public:
  static InputSet full(int n);
  static InputSet mermin55(int n);
  static InputSet hlf8(int n);
  static InputSet hlf5(int n);
  static InputSet hlfn5(int n);
  static InputSet custom(int n, std::vector<BinaryVector> elements);
  static InputSet named(const std::string& name, int n);

  InputSetKind kind() const { return kind_; }
  int num_qubits() const { return n_; }
  const std::vector<BinaryVector>& elements() const { return elements_; }
  size_t size() const { return elements_.size(); }
  std::string name() const;

  /// Positions whose bit is not constant across the set.
  BinaryVector varying_mask() const;

 private:
  InputSet(InputSetKind kind, int n, std::vector<BinaryVector> elements);

  InputSetKind kind_;
  int n_;
  std::vector<BinaryVector> elements_;
};

struct GameInstance {
  GameKind kind;
  InputSet inputs;

  int num_qubits() const { return inputs.num_qubits(); }
  static GameInstance cbf(InputSet i) { return {GameKind::CBF, std::move(i)}; }
  static GameInstance ss(InputSet i) { return {GameKind::SS, std::move(i)}; }
  std::string name() const;
};

/// Per-party CBF inputs s_j = (a_j, b_j) with a_j = x_j and b_j the parity of
/// the neighbors' bits.
std::vector<std::pair<bool, bool>> cbf_local_inputs(const BinaryVector& x);

/// supp(s): parties whose local input is not (0,0). Equals the support of
/// the Pauli part of S_x.
BinaryVector cbf_support(const BinaryVector& x);

/// Win iff sum_{j in supp(s)} y_j = g_n(x) mod 2.
bool cbf_referee(const BinaryVector& x, const BinaryVector& y);

/// One parity constraint: sum of y over `support` must equal `odd`.
struct ParityConstraint {
  BinaryVector support;
  bool odd;
};

/// The SS win conditions for input x: one constraint per element of P_x.
std::vector<ParityConstraint> ss_win_constraints(const StabilizerGroup& group, const BinaryVector& x);

/// Win iff every constraint from stabilizer_submeasurements(x) holds.
bool ss_referee(const StabilizerGroup& group, const BinaryVector& x, const BinaryVector& y);

/// Measurement bases of the perfect quantum strategy for input x.
std::string quantum_bases(GameKind kind, const BinaryVector& x);

/// Referee dispatch on a game (SS constraints are cached per input).
class Referee {
 public:
  explicit Referee(const GameInstance& game);
  bool wins(size_t input_index, const BinaryVector& y) const;
  bool wins(const BinaryVector& x, const BinaryVector& y) const;

 private:
  const GameInstance& game_;
  StabilizerGroup group_;
  std::vector<std::vector<ParityConstraint>> constraints_;  // SS only
  std::map<uint64_t, size_t> index_;
};

struct RoundRecord {
  BinaryVector x, y;
  bool won;
  std::string strategy;
  uint64_t shot;
};

struct PerInputStat {
  BinaryVector x;
  int64_t wins = 0;
  int64_t shots = 0;
  double rate() const { return shots ? static_cast<double>(wins) / static_cast<double>(shots) : 0.0; }
  double stderr_() const {
    double p = rate();
    return shots ? std::sqrt(p * (1 - p) / static_cast<double>(shots)) : 0.0;
  }
};

struct SuccessEstimate {
  double p_hat = 0;
  double stderr_ = 0;
  std::vector<PerInputStat> per_input;
};

struct PlayOptions {
  int shots_per_input = 1000;
  uint64_t seed = 1;
  PrepForm form = PrepForm::RXX;
  int workers = 0;
  bool record_rounds = false;
};

struct PlayResult {
  SuccessEstimate estimate;
  std::vector<RoundRecord> rounds;  // populated when record_rounds
};

/// Plays the perfect quantum strategy through the noisy simulator: for each
/// input, builds the basis pattern, runs shots_per_input trajectories,
/// referees every shot, and aggregates the uniform-input success rate.
PlayResult play_quantum(const GameInstance& game, const NoiseParams& noise, const PlayOptions& options);

/// Success probability from the Bell-operator expansion. For SS games this
/// evaluates Pr[win] = (1/|I|) sum_x (1/|P_x|) sum_{P in P_x} sgn(P) <P>;
/// for CBF games the win condition is the single stabilizer parity, giving
/// Pr[win] = (1/|I|) sum_x (1 + sgn(S_x) <E_x>) / 2. The expectation
/// callback receives the input so classical deterministic strategies can
/// answer per input.
double bell_success_probability(const GameInstance& game,
                                const std::function<double(const BinaryVector&, const PauliOperator&)>& expectation);

/// Exact-arithmetic specialization for deterministic +-1 assignments.
Rational bell_success_probability_exact(
    const GameInstance& game, const std::function<int(const BinaryVector&, const PauliOperator&)>& sign_of);

/// Symbolic expansion of the Bell operator: unsigned Pauli body -> exact
/// coefficient (the identity term keys on "II...I").
std::map<std::string, Rational> bell_expansion(const GameInstance& game);

}  // namespace cyclebell

#endif
