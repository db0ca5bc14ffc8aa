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

#include "cyclebell/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>

#include "cyclebell/f2.hpp"
#include "cyclebell/parallel.hpp"

namespace cyclebell {

namespace {

constexpr uint64_t kEvalGuard = 1'000'000'000;  // strategy-input evaluations

int cyclic_distance(int a, int b, int n) {
  int d = std::abs(a - b) % n;
  return std::min(d, n - d);
}

uint64_t gather_bits(uint64_t circuit_bits, const std::vector<int>& depends) {
  uint64_t idx = 0;
  for (size_t i = 0; i < depends.size(); ++i)
    idx |= ((circuit_bits >> depends[i]) & 1u) << i;
  return idx;
}

/// Circuit-input bit string for a game input: x itself for SS, interleaved
/// (a_j, b_j) pairs for CBF.
uint64_t circuit_bits_for(GameKind kind, const BinaryVector& x) {
  if (kind == GameKind::SS) return x.bits();
  uint64_t bits = 0;
  BinaryVector b = neighbor_parity(x);
  for (int j = 0; j < x.size(); ++j) {
    if (x.get(j)) bits |= uint64_t{1} << (2 * j);
    if (b.get(j)) bits |= uint64_t{1} << (2 * j + 1);
  }
  return bits;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Reduced strategy space for SS games at a given depth: per output, truth
/// tables over the varying positions visible from that output.
struct ReducedSpace {
  std::vector<std::vector<int>> relevant;   // per output, ascending positions
  std::vector<uint64_t> choices;            // per output, 2^(2^arity)
  uint64_t total = 1;
};

ReducedSpace reduced_space(const GameInstance& game, int depth) {
  const int n = game.num_qubits();
  BinaryVector varying = game.inputs.varying_mask();
  ReducedSpace space;
  space.relevant.resize(static_cast<size_t>(n));
  space.choices.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < n; ++p)
      if (varying.get(p) && cyclic_distance(j, p, n) <= depth) space.relevant[static_cast<size_t>(j)].push_back(p);
    size_t arity = space.relevant[static_cast<size_t>(j)].size();
    if (arity > 5) throw SearchSpaceError("depth search: table arity too large", uint64_t{1} << (uint64_t{1} << arity));
    space.choices[static_cast<size_t>(j)] = uint64_t{1} << (uint64_t{1} << arity);
    if (space.total > kEvalGuard / space.choices[static_cast<size_t>(j)])
      throw SearchSpaceError("depth search: strategy space too large", kEvalGuard + 1);
    space.total *= space.choices[static_cast<size_t>(j)];
  }
  return space;
}

GeometricCircuitStrategy strategy_from_digits(const GameInstance& game, int depth, const ReducedSpace& space,
                                              const std::vector<uint64_t>& digits) {
  GeometricCircuitStrategy s;
  s.n = game.num_qubits();
  s.kind = game.kind;
  s.depth = depth;
  s.fan_in = 3;  // l = 1 for SS
  for (int j = 0; j < s.n; ++j) {
    OutputFunction f;
    f.depends = space.relevant[static_cast<size_t>(j)];
    size_t entries = size_t{1} << f.depends.size();
    f.table.resize(entries);
    for (size_t e = 0; e < entries; ++e) f.table[e] = (digits[static_cast<size_t>(j)] >> e) & 1;
    s.outputs.push_back(std::move(f));
  }
  return s;
}

/// Exhaustive maximum over the reduced SS strategy space, parallel over
/// contiguous index ranges; ties break to the smallest strategy index,
/// which is the lexicographically first digit tuple (output 0 major).
BoundResult ss_depth_search(const GameInstance& game, int depth) {
  auto t0 = std::chrono::steady_clock::now();
  const int n = game.num_qubits();
  ReducedSpace space = reduced_space(game, depth);
  const auto& inputs = game.inputs.elements();
  uint64_t evals = space.total * inputs.size();
  if (evals > kEvalGuard) throw SearchSpaceError("depth search: evaluation guard exceeded", evals);

  Referee referee(game);
  // Per input, the gathered table index for each output.
  std::vector<std::vector<uint64_t>> idx(inputs.size(), std::vector<uint64_t>(static_cast<size_t>(n)));
  for (size_t i = 0; i < inputs.size(); ++i)
    for (int j = 0; j < n; ++j)
      idx[i][static_cast<size_t>(j)] = gather_bits(inputs[i].bits(), space.relevant[static_cast<size_t>(j)]);

  // Digit weights: output 0 is the most significant digit.
  std::vector<uint64_t> weight(static_cast<size_t>(n), 1);
  for (int j = n - 2; j >= 0; --j)
    weight[static_cast<size_t>(j)] = weight[static_cast<size_t>(j + 1)] * space.choices[static_cast<size_t>(j + 1)];

  std::mutex m;
  int64_t best_wins = -1;
  uint64_t best_index = 0;
  parallel_chunks(static_cast<int64_t>(space.total), 0, [&](int64_t begin, int64_t end) {
    std::vector<uint64_t> digits(static_cast<size_t>(n));
    int64_t local_best = -1;
    uint64_t local_index = 0;
    for (int64_t si = begin; si < end; ++si) {
      auto rem = static_cast<uint64_t>(si);
      for (int j = 0; j < n; ++j) {
        digits[static_cast<size_t>(j)] = rem / weight[static_cast<size_t>(j)];
        rem %= weight[static_cast<size_t>(j)];
      }
      int64_t wins = 0;
      for (size_t i = 0; i < inputs.size(); ++i) {
        uint64_t y = 0;
        for (int j = 0; j < n; ++j)
          y |= ((digits[static_cast<size_t>(j)] >> idx[i][static_cast<size_t>(j)]) & 1u) << j;
        wins += referee.wins(i, BinaryVector(n, y));
      }
      if (wins > local_best) {
        local_best = wins;
        local_index = static_cast<uint64_t>(si);
      }
    }
    std::lock_guard<std::mutex> lock(m);
    if (local_best > best_wins || (local_best == best_wins && local_index < best_index)) {
      best_wins = local_best;
      best_index = local_index;
    }
  });

  std::vector<uint64_t> digits(static_cast<size_t>(n));
  uint64_t rem = best_index;
  for (int j = 0; j < n; ++j) {
    digits[static_cast<size_t>(j)] = rem / weight[static_cast<size_t>(j)];
    rem %= weight[static_cast<size_t>(j)];
  }
  BoundResult result;
  result.beta = Rational(best_wins, static_cast<int64_t>(inputs.size()));
  result.witness = strategy_from_digits(game, depth, space, digits);
  result.search_size = space.total;
  result.seconds = seconds_since(t0);
  return result;
}

/// Depth-0 CBF search: per party, only the responses to the three settings
/// in supp(s) matter, so 8 effective tables per party. Wins are evaluated
/// with one XOR/popcount pass over an input bitmask.
BoundResult cbf_depth0_search(const GameInstance& game) {
  auto t0 = std::chrono::steady_clock::now();
  const int n = game.num_qubits();
  const auto& inputs = game.inputs.elements();
  if (n != 6 || inputs.size() > 64)
    throw SearchSpaceError("depth0: CBF search implemented for the n = 6 games",
                           static_cast<uint64_t>(inputs.size()) << (3 * n));

  uint64_t g_word = 0, mask = inputs.size() == 64 ? ~uint64_t{0} : (uint64_t{1} << inputs.size()) - 1;
  std::vector<std::array<uint64_t, 8>> contribution(static_cast<size_t>(n), {0, 0, 0, 0, 0, 0, 0, 0});
  for (size_t i = 0; i < inputs.size(); ++i) {
    const BinaryVector& x = inputs[i];
    if (cubic_sign_function(x)) g_word |= uint64_t{1} << i;
    auto s = cbf_local_inputs(x);
    for (int j = 0; j < n; ++j) {
      int setting = static_cast<int>(s[static_cast<size_t>(j)].first) + 2 * static_cast<int>(s[static_cast<size_t>(j)].second);
      if (setting == 0) continue;  // referee ignores this party's bit
      for (int t = 0; t < 8; ++t)
        if ((t >> (setting - 1)) & 1) contribution[static_cast<size_t>(j)][static_cast<size_t>(t)] |= uint64_t{1} << i;
    }
  }

  const uint64_t total = uint64_t{1} << (3 * n);  // 8^n
  std::mutex m;
  int64_t best_wins = -1;
  uint64_t best_index = 0;
  parallel_chunks(static_cast<int64_t>(total), 0, [&](int64_t begin, int64_t end) {
    int64_t local_best = -1;
    uint64_t local_index = 0;
    for (int64_t si = begin; si < end; ++si) {
      uint64_t parity = 0;
      auto s = static_cast<uint64_t>(si);
      for (int j = 0; j < n; ++j) {
        // Digit order: party 0 in the most significant octal digit.
        int t = static_cast<int>((s >> (3 * (n - 1 - j))) & 7);
        parity ^= contribution[static_cast<size_t>(j)][static_cast<size_t>(t)];
      }
      int64_t wins = std::popcount(~(parity ^ g_word) & mask);
      if (wins > local_best) {
        local_best = wins;
        local_index = static_cast<uint64_t>(si);
      }
    }
    std::lock_guard<std::mutex> lock(m);
    if (local_best > best_wins || (local_best == best_wins && local_index < best_index)) {
      best_wins = local_best;
      best_index = local_index;
    }
  });

  GeometricCircuitStrategy witness;
  witness.n = n;
  witness.kind = GameKind::CBF;
  witness.depth = 0;
  witness.fan_in = 2;
  for (int j = 0; j < n; ++j) {
    int t = static_cast<int>((best_index >> (3 * (n - 1 - j))) & 7);
    OutputFunction f;
    f.depends = {2 * j, 2 * j + 1};
    f.table = {0, static_cast<uint8_t>(t & 1), static_cast<uint8_t>((t >> 1) & 1),
               static_cast<uint8_t>((t >> 2) & 1)};
    witness.outputs.push_back(std::move(f));
  }
  BoundResult result;
  result.beta = Rational(best_wins, static_cast<int64_t>(inputs.size()));
  result.witness = std::move(witness);
  result.search_size = total;
  result.seconds = seconds_since(t0);
  return result;
}

OutputFunction constant_zero() { return OutputFunction{{}, {0}}; }

OutputFunction and_of(int a, int b) {
  OutputFunction f;
  f.depends = {std::min(a, b), std::max(a, b)};
  f.table = {0, 0, 0, 1};
  return f;
}

}  // namespace

BinaryVector GeometricCircuitStrategy::evaluate(const BinaryVector& x) const {
  uint64_t bits = circuit_bits_for(kind, x);
  BinaryVector y(n);
  for (int j = 0; j < n; ++j)
    y.set(j, outputs[static_cast<size_t>(j)].eval_bits(gather_bits(bits, outputs[static_cast<size_t>(j)].depends)));
  return y;
}

void check_geometry(const GeometricCircuitStrategy& s) {
  const int l = s.kind == GameKind::CBF ? 2 : 1;
  if (static_cast<int>(s.outputs.size()) != s.n)
    throw std::invalid_argument("strategy: need one output per party");
  for (int j = 0; j < s.n; ++j) {
    const OutputFunction& f = s.outputs[static_cast<size_t>(j)];
    if (f.table.size() != (size_t{1} << f.depends.size()))
      throw std::invalid_argument("strategy: output " + std::to_string(j) + " table size mismatch");
    if (static_cast<int>(f.depends.size()) > (2 * s.depth + 1) * l)
      throw std::invalid_argument("strategy: output " + std::to_string(j) + " exceeds the reachable arity");
    for (int d : f.depends) {
      int party = s.kind == GameKind::CBF ? d / 2 : d;
      if (d < 0 || party >= s.n) throw std::invalid_argument("strategy: dependency out of range");
      if (cyclic_distance(j, party, s.n) > s.depth)
        throw std::invalid_argument("strategy: output " + std::to_string(j) + " depends on input position " +
                                    std::to_string(party) + " beyond distance " + std::to_string(s.depth));
    }
  }
}

Rational evaluate_strategy(const GeometricCircuitStrategy& strategy, const GameInstance& game) {
  if (strategy.n != game.num_qubits() || strategy.kind != game.kind)
    throw std::invalid_argument("evaluate_strategy: strategy does not match the game");
  check_geometry(strategy);
  Referee referee(game);
  const auto& inputs = game.inputs.elements();
  int64_t wins = 0;
  for (size_t i = 0; i < inputs.size(); ++i) wins += referee.wins(i, strategy.evaluate(inputs[i]));
  return Rational(wins, static_cast<int64_t>(inputs.size()));
}

BoundResult depth0_bound(const GameInstance& game) {
  if (game.kind == GameKind::CBF) return cbf_depth0_search(game);
  return ss_depth_search(game, 0);
}

BoundResult depth1_bound(const GameInstance& game) {
  if (game.kind == GameKind::SS) return ss_depth_search(game, 1);
  // A perfect strategy is an exact maximum: 1 is an upper bound on any
  // success probability, so no enumeration of the 2^(2^5) CBF tables is
  // needed when the explicit cubic-term strategy wins every input.
  auto t0 = std::chrono::steady_clock::now();
  GeometricCircuitStrategy witness = cbf_depth1_perfect_strategy(game.num_qubits());
  Rational beta = evaluate_strategy(witness, game);
  if (beta.num != beta.den)
    throw SearchSpaceError("depth1: CBF enumeration infeasible and the explicit strategy is not perfect",
                           static_cast<uint64_t>(game.inputs.size()) * (uint64_t{1} << 32));
  BoundResult result;
  result.beta = beta;
  result.witness = std::move(witness);
  result.search_size = 1;
  result.seconds = seconds_since(t0);
  return result;
}

BoundResult depth_bound(const GameInstance& game, int depth) {
  if (depth == 0) return depth0_bound(game);
  if (depth == 1) return depth1_bound(game);
  if (game.kind != GameKind::SS)
    throw SearchSpaceError("depth search beyond 1 is implemented for SS games only", kEvalGuard + 1);
  return ss_depth_search(game, depth);
}

GeometricCircuitStrategy cbf_depth1_perfect_strategy(int n) {
  if (n < 3) throw std::invalid_argument("cbf_depth1_perfect_strategy: need n >= 3");
  GeometricCircuitStrategy s;
  s.n = n;
  s.kind = GameKind::CBF;
  s.depth = 1;
  s.fan_in = 6;
  for (int j = 0; j < n; ++j) {
    int prev = (j + n - 1) % n;
    OutputFunction f;
    f.depends = {2 * prev, 2 * j, 2 * j + 1};  // a_{j-1}, a_j, b_j
    std::sort(f.depends.begin(), f.depends.end());
    f.table.resize(8);
    for (uint64_t e = 0; e < 8; ++e) {
      auto bit_of = [&](int want) {
        for (size_t i = 0; i < f.depends.size(); ++i)
          if (f.depends[i] == want) return (e >> i) & 1u;
        return uint64_t{0};
      };
      uint64_t a_prev = bit_of(2 * prev), a_j = bit_of(2 * j), b_j = bit_of(2 * j + 1);
      f.table[e] = static_cast<uint8_t>(a_prev & a_j & (b_j ^ a_prev));
    }
    s.outputs.push_back(std::move(f));
  }
  return s;
}

GeometricCircuitStrategy ss_depth_plus_one_perfect_strategy(int n, int D) {
  if (D < 1 || D % 2 == 0 || n != 6 * D)
    throw std::invalid_argument("ss_depth_plus_one_perfect_strategy: requires odd D and n = 6D");
  GeometricCircuitStrategy s;
  s.n = n;
  s.kind = GameKind::SS;
  s.depth = D + 1;
  s.fan_in = 3;
  s.outputs.assign(static_cast<size_t>(n), constant_zero());
  s.outputs[static_cast<size_t>((D + 1) % n)] = and_of(0, 2 * D);
  s.outputs[static_cast<size_t>((3 * D + 1) % n)] = and_of(2 * D, 4 * D);
  s.outputs[static_cast<size_t>((5 * D + 1) % n)] = and_of(0, 4 * D);
  return s;
}

ObstructionResult parity_obstruction_check(int n, int D) {
  if (D < 1 || D % 2 == 0 || n != 6 * D)
    throw std::invalid_argument("parity_obstruction_check: requires odd D and n = 6D");
  GameInstance game = GameInstance::ss(InputSet::hlfn5(n));
  StabilizerGroup group = StabilizerGroup::cycle(CycleGraph(n));
  BinaryVector varying = game.inputs.varying_mask();

  // Unknowns: per output, one multilinear coefficient per monomial over the
  // varying positions within distance D.
  std::vector<std::vector<int>> relevant(static_cast<size_t>(n));
  std::vector<int> base(static_cast<size_t>(n) + 1, 0);
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < n; ++p)
      if (varying.get(p) && cyclic_distance(j, p, n) <= D) relevant[static_cast<size_t>(j)].push_back(p);
    base[static_cast<size_t>(j) + 1] = base[static_cast<size_t>(j)] + (1 << relevant[static_cast<size_t>(j)].size());
  }
  const int unknowns = base[static_cast<size_t>(n)];

  std::vector<std::vector<bool>> rows;
  std::vector<bool> rhs;
  for (const BinaryVector& x : game.inputs.elements()) {
    for (const auto& [p, sign] : stabilizer_submeasurements(group, x)) {
      std::vector<bool> row(static_cast<size_t>(unknowns), false);
      for (int j = 0; j < n; ++j) {
        if (!p.support().get(j)) continue;
        const auto& rel = relevant[static_cast<size_t>(j)];
        for (int mono = 0; mono < (1 << rel.size()); ++mono) {
          bool active = true;
          for (size_t b = 0; b < rel.size(); ++b)
            if ((mono >> b) & 1) active = active && x.get(rel[b]);
          if (active) {
            size_t col = static_cast<size_t>(base[static_cast<size_t>(j)] + mono);
            row[col] = !row[col];
          }
        }
      }
      rows.push_back(std::move(row));
      rhs.push_back(sign < 0);
    }
  }

  F2Matrix coeff(static_cast<int>(rows.size()), unknowns);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < unknowns; ++c)
      if (rows[r][static_cast<size_t>(c)]) coeff.set(static_cast<int>(r), c, true);

  ObstructionResult result;
  {
    F2Matrix tmp = coeff;
    result.rank_coefficient = tmp.eliminate();
  }
  {
    F2Matrix aug(static_cast<int>(rows.size()), unknowns + 1);
    for (size_t r = 0; r < rows.size(); ++r) {
      for (int c = 0; c < unknowns; ++c)
        if (rows[r][static_cast<size_t>(c)]) aug.set(static_cast<int>(r), c, true);
      aug.set(static_cast<int>(r), unknowns, rhs[r]);
    }
    result.rank_augmented = aug.eliminate();
  }
  result.inconsistent = result.rank_augmented > result.rank_coefficient;
  if (result.inconsistent) return result;

  // Consistent: materialize a perfect strategy from one solution (this
  // would falsify the theorem, so tests treat it as a failure).
  auto solution = coeff.solve(rhs);
  GeometricCircuitStrategy s;
  s.n = n;
  s.kind = GameKind::SS;
  s.depth = D;
  s.fan_in = 3;
  for (int j = 0; j < n; ++j) {
    const auto& rel = relevant[static_cast<size_t>(j)];
    OutputFunction f;
    f.depends = rel;
    f.table.resize(size_t{1} << rel.size());
    for (uint64_t e = 0; e < f.table.size(); ++e) {
      bool v = false;
      for (int mono = 0; mono < (1 << rel.size()); ++mono)
        if ((static_cast<uint64_t>(mono) & ~e) == 0 && (*solution)[static_cast<size_t>(base[static_cast<size_t>(j)] + mono)])
          v = !v;
      f.table[e] = v;
    }
    s.outputs.push_back(std::move(f));
  }
  result.counterexample = std::move(s);
  return result;
}

}  // namespace cyclebell
