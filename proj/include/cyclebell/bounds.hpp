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

#ifndef CYCLEBELL_BOUNDS_HPP
#define CYCLEBELL_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cyclebell/games.hpp"

namespace cyclebell {

/// Enumeration refusals carry the offending size so callers can report it.
struct SearchSpaceError : std::runtime_error {
  SearchSpaceError(const std::string& what, uint64_t evals)
      : std::runtime_error(what + " (" + std::to_string(evals) + " strategy-input evaluations)"),
        evaluations(evals) {}
  uint64_t evaluations;
};

/// One output of a classical circuit strategy: a truth table over a set of
/// circuit-input bits. For SS games circuit-input bit j is x_j; for CBF
/// games bit 2j is a_j and bit 2j+1 is b_j (party j's received pair).
struct OutputFunction {
  std::vector<int> depends;     // circuit-input bit indices, ascending
  std::vector<uint8_t> table;   // size 2^depends.size(); depends[0] is the low index bit

  bool eval_bits(uint64_t gathered) const { return table[static_cast<size_t>(gathered)] != 0; }
};

/// A geometrically restricted, depth-D, fan-in-bounded Boolean circuit
/// strategy on the cycle, represented by its end-to-end output functions.
/// The depth-0 local-response-table strategies are the depth = 0 case.
struct GeometricCircuitStrategy {
  int n = 0;
  GameKind kind = GameKind::SS;
  int depth = 0;
  int fan_in = 3;
  std::vector<OutputFunction> outputs;  // one per party

  BinaryVector evaluate(const BinaryVector& x) const;
};

/// Throws std::invalid_argument naming the offending output and input
/// position when a dependency leaves the distance-D window (or the arity
/// exceeds the (2D+1) parties the circuit model can reach).
void check_geometry(const GeometricCircuitStrategy& s);

/// Exact win rate by full enumeration of the game's input set.
Rational evaluate_strategy(const GeometricCircuitStrategy& strategy, const GameInstance& game);

struct BoundResult {
  Rational beta;
  GeometricCircuitStrategy witness;
  uint64_t search_size = 0;
  double seconds = 0;
};

/// Exact maximum over deterministic local-response strategies (depth 0).
/// CBF games enumerate the three referee-relevant settings per party
/// (8^n joint strategies); SS games enumerate truth tables over the
/// varying positions only. Ties break to the lexicographically first
/// strategy.
BoundResult depth0_bound(const GameInstance& game);

/// Exact maximum over depth-1, fan-in-3l geometrically restricted circuits.
/// SS games run the reduced truth-table enumeration; for CBF games the
/// explicit perfect strategy certifies beta_1 = 1 without enumeration.
BoundResult depth1_bound(const GameInstance& game);

/// Exhaustive depth-D maximum for SS games via the reduced enumeration;
/// refuses when the reduced space exceeds the evaluation guard.
BoundResult depth_bound(const GameInstance& game, int depth);

/// y_j = a_{j-1} a_j (b_j + a_{j-1}) = x_{j-1} x_j x_{j+1}: each party
/// computes one cubic term; perfect for every CBF(C_n, I).
GeometricCircuitStrategy cbf_depth1_perfect_strategy(int n);

/// The depth-(D+1) strategy winning SS(C_{6D}, HLFn5) on all inputs:
/// y_{D+1} = x_0 x_{2D}, y_{3D+1} = x_{2D} x_{4D}, y_{5D+1} = x_0 x_{4D}.
GeometricCircuitStrategy ss_depth_plus_one_perfect_strategy(int n, int D);

struct ObstructionResult {
  bool inconsistent = false;
  int rank_coefficient = 0;
  int rank_augmented = 0;
  std::optional<GeometricCircuitStrategy> counterexample;  // set when consistent
};

/// Theorem-1 certificate for SS(C_{6D}, HLFn5), D odd: parameterizes every
/// depth-D output by its multilinear coefficients over the visible varying
/// bits, imposes the win constraints of all five inputs as an F2 linear
/// system, and certifies beta_D <= 4/5 by rank comparison. A consistent
/// system would yield a perfect strategy and falsify the theorem; it is
/// returned so tests can flag it.
ObstructionResult parity_obstruction_check(int n, int D);

}  // namespace cyclebell

#endif
