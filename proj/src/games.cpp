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

#include "cyclebell/games.hpp"

#include <algorithm>
#include <mutex>

#include "cyclebell/parallel.hpp"

namespace cyclebell {

Rational::Rational(int64_t n, int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

InputSet::InputSet(InputSetKind kind, int n, std::vector<BinaryVector> elements)
    : kind_(kind), n_(n), elements_(std::move(elements)) {
  for (const auto& x : elements_)
    if (x.size() != n_) throw std::invalid_argument("InputSet: element length mismatch");
  std::vector<uint64_t> bits;
  bits.reserve(elements_.size());
  for (const auto& x : elements_) bits.push_back(x.bits());
  std::sort(bits.begin(), bits.end());
  if (std::adjacent_find(bits.begin(), bits.end()) != bits.end())
    throw std::invalid_argument("InputSet: duplicate elements");
}

InputSet InputSet::full(int n) {
  if (n < 3 || n > 20) throw std::invalid_argument("InputSet::full: n out of range");
  std::vector<BinaryVector> v;
  v.reserve(size_t{1} << n);
  for (uint64_t b = 0; b < (uint64_t{1} << n); ++b) v.emplace_back(n, b);
  return InputSet(InputSetKind::Full, n, std::move(v));
}

InputSet InputSet::mermin55(int n) {
  if (n != 6) throw std::invalid_argument("InputSet::mermin55: defined for n = 6");
  std::vector<BinaryVector> v;
  for (uint64_t b = 0; b < 64; ++b) {
    BinaryVector x(6, b);
    if (x.popcount() <= 1) continue;
    if (b == BinaryVector::from_string("010101").bits() || b == BinaryVector::from_string("101010").bits())
      continue;
    v.push_back(x);
  }
  return InputSet(InputSetKind::Mermin55, 6, std::move(v));
}

namespace {

std::vector<BinaryVector> hlf_elements(int n, const std::array<int, 3>& pos, bool restricted) {
  static const std::array<std::array<int, 3>, 5> kV{{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}};
  std::vector<BinaryVector> v;
  if (restricted) {
    for (const auto& bits : kV) {
      BinaryVector x(n);
      for (int i = 0; i < 3; ++i)
        if (bits[static_cast<size_t>(i)]) x.set(pos[static_cast<size_t>(i)], true);
      v.push_back(x);
    }
  } else {
    for (int b = 0; b < 8; ++b) {
      BinaryVector x(n);
      for (int i = 0; i < 3; ++i)
        if ((b >> i) & 1) x.set(pos[static_cast<size_t>(i)], true);
      v.push_back(x);
    }
  }
  return v;
}

}  // namespace

InputSet InputSet::hlf8(int n) {
  if (n != 6) throw std::invalid_argument("InputSet::hlf8: defined for n = 6");
  return InputSet(InputSetKind::HLF8, 6, hlf_elements(6, {0, 2, 4}, false));
}

InputSet InputSet::hlf5(int n) {
  if (n != 6) throw std::invalid_argument("InputSet::hlf5: defined for n = 6");
  return InputSet(InputSetKind::HLF5, 6, hlf_elements(6, {0, 2, 4}, true));
}

InputSet InputSet::hlfn5(int n) {
  if (n < 6 || n % 2 != 0)
    throw std::invalid_argument("InputSet::hlfn5: requires even n >= 6 (sublattice structure)");
  std::array<int, 3> pos{0, 2 * (n / 6), 2 * (n / 3)};
  return InputSet(InputSetKind::HLFn5, n, hlf_elements(n, pos, true));
}

InputSet InputSet::custom(int n, std::vector<BinaryVector> elements) {
  return InputSet(InputSetKind::Custom, n, std::move(elements));
}

InputSet InputSet::named(const std::string& name, int n) {
  if (name == "full") return full(n);
  if (name == "mermin55") return mermin55(n);
  if (name == "hlf8") return hlf8(n);
  if (name == "hlf5") return hlf5(n);
  if (name == "hlfn5") return hlfn5(n);
  throw std::invalid_argument("InputSet::named: unknown input set " + name);
}

std::string InputSet::name() const {
  switch (kind_) {
    case InputSetKind::Full: return "full";
    case InputSetKind::Mermin55: return "mermin55";
    case InputSetKind::HLF8: return "hlf8";
    case InputSetKind::HLF5: return "hlf5";
    case InputSetKind::HLFn5: return "hlfn5";
    case InputSetKind::Custom: return "custom";
  }
  return "?";
}

BinaryVector InputSet::varying_mask() const {
  BinaryVector all_or(n_), all_and = ~BinaryVector(n_);
  for (const auto& x : elements_) {
    all_or = all_or | x;
    all_and = all_and & x;
  }
  return all_or & ~all_and;
}

std::string GameInstance::name() const {
  return std::string(kind == GameKind::CBF ? "CBF" : "SS") + "(C" + std::to_string(num_qubits()) + "," +
         inputs.name() + ")";
}

std::vector<std::pair<bool, bool>> cbf_local_inputs(const BinaryVector& x) {
  BinaryVector b = neighbor_parity(x);
  std::vector<std::pair<bool, bool>> s;
  s.reserve(static_cast<size_t>(x.size()));
  for (int j = 0; j < x.size(); ++j) s.emplace_back(x.get(j), b.get(j));
  return s;
}

BinaryVector cbf_support(const BinaryVector& x) { return x | neighbor_parity(x); }

bool cbf_referee(const BinaryVector& x, const BinaryVector& y) {
  if (y.size() != x.size()) throw std::invalid_argument("cbf_referee: length mismatch");
  return (y & cbf_support(x)).parity() == cubic_sign_function(x);
}

std::vector<ParityConstraint> ss_win_constraints(const StabilizerGroup& group, const BinaryVector& x) {
  std::vector<ParityConstraint> out;
  for (const auto& [p, sign] : stabilizer_submeasurements(group, x))
    out.push_back({p.support(), sign < 0});
  return out;
}

bool ss_referee(const StabilizerGroup& group, const BinaryVector& x, const BinaryVector& y) {
  if (y.size() != x.size()) throw std::invalid_argument("ss_referee: length mismatch");
  for (const auto& c : ss_win_constraints(group, x))
    if ((y & c.support).parity() != c.odd) return false;
  return true;
}

std::string quantum_bases(GameKind kind, const BinaryVector& x) {
  std::string bases;
  bases.reserve(static_cast<size_t>(x.size()));
  if (kind == GameKind::SS) {
    for (int j = 0; j < x.size(); ++j) bases.push_back(x.get(j) ? 'Y' : 'X');
    return bases;
  }
  // CBF: party j measures E_j(a_j, b_j); input (0,0) measures Z and the
  // referee ignores that bit.
  for (auto [a, b] : cbf_local_inputs(x)) bases.push_back(a ? (b ? 'Y' : 'X') : 'Z');
  return bases;
}

Referee::Referee(const GameInstance& game)
    : game_(game), group_(StabilizerGroup::cycle(CycleGraph(game.num_qubits()))) {
  const auto& elems = game.inputs.elements();
  for (size_t i = 0; i < elems.size(); ++i) index_[elems[i].bits()] = i;
  if (game.kind == GameKind::SS) {
    constraints_.reserve(elems.size());
    for (const auto& x : elems) constraints_.push_back(ss_win_constraints(group_, x));
  }
}

bool Referee::wins(size_t input_index, const BinaryVector& y) const {
  const BinaryVector& x = game_.inputs.elements()[input_index];
  if (game_.kind == GameKind::CBF) return cbf_referee(x, y);
  for (const auto& c : constraints_[input_index])
    if ((y & c.support).parity() != c.odd) return false;
  return true;
}

bool Referee::wins(const BinaryVector& x, const BinaryVector& y) const {
  auto it = index_.find(x.bits());
  if (it == index_.end()) throw std::invalid_argument("Referee: input not in the game's input set");
  return wins(it->second, y);
}

PlayResult play_quantum(const GameInstance& game, const NoiseParams& noise, const PlayOptions& options) {
  if (options.shots_per_input < 1) throw std::invalid_argument("play_quantum: need at least one shot");
  const int n = game.num_qubits();
  CycleGraph graph(n);
  Referee referee(game);
  const auto& inputs = game.inputs.elements();
  TrajectoryRng rng(options.seed);

  PlayResult result;
  result.estimate.per_input.resize(inputs.size());

  for (size_t i = 0; i < inputs.size(); ++i) {
    const BinaryVector& x = inputs[i];
    auto mc = measurement_circuit(graph, options.form, quantum_bases(game.kind, x));
    ShotSampler sampler(mc.circuit, noise, std::string(static_cast<size_t>(n), 'Z'));

    const int64_t shots = options.shots_per_input;
    int64_t wins_total = 0;
    std::vector<RoundRecord> recs;
    std::mutex m;
    parallel_chunks(shots, options.workers, [&](int64_t begin, int64_t end) {
      int64_t wins = 0;
      std::vector<RoundRecord> local;
      for (int64_t k = begin; k < end; ++k) {
        RngStream stream = rng.stream(static_cast<uint64_t>(game.kind), i, static_cast<uint64_t>(k));
        BinaryVector y = sampler.sample(stream) ^ mc.flip_mask;
        bool won = referee.wins(i, y);
        wins += won;
        if (options.record_rounds) local.push_back({x, y, won, "quantum", static_cast<uint64_t>(k)});
      }
      std::lock_guard<std::mutex> lock(m);
      wins_total += wins;
      if (options.record_rounds) recs.insert(recs.end(), local.begin(), local.end());
    });

    PerInputStat& stat = result.estimate.per_input[i];
    stat.x = x;
    stat.shots = shots;
    stat.wins = wins_total;
    if (options.record_rounds) {
      std::sort(recs.begin(), recs.end(),
                [](const RoundRecord& a, const RoundRecord& b) { return a.shot < b.shot; });
      result.rounds.insert(result.rounds.end(), recs.begin(), recs.end());
    }
  }

  double p = 0, var = 0;
  for (const auto& stat : result.estimate.per_input) {
    p += stat.rate();
    double se = stat.stderr_();
    var += se * se;
  }
  auto m = static_cast<double>(inputs.size());
  result.estimate.p_hat = p / m;
  result.estimate.stderr_ = std::sqrt(var) / m;
  return result;
}

double bell_success_probability(
    const GameInstance& game,
    const std::function<double(const BinaryVector&, const PauliOperator&)>& expectation) {
  const int n = game.num_qubits();
  StabilizerGroup group = StabilizerGroup::cycle(CycleGraph(n));
  double total = 0;
  for (const BinaryVector& x : game.inputs.elements()) {
    if (game.kind == GameKind::CBF) {
      PauliOperator sx = cycle_stabilizer(n, x);
      total += (1.0 + sx.sign() * expectation(x, PauliOperator(sx.xbits(), sx.zbits(), 0))) / 2.0;
    } else {
      auto px = stabilizer_submeasurements(group, x);
      double inner = 0;
      for (const auto& [p, sign] : px) inner += sign * expectation(x, p);
      total += inner / static_cast<double>(px.size());
    }
  }
  return total / static_cast<double>(game.inputs.size());
}

Rational bell_success_probability_exact(
    const GameInstance& game, const std::function<int(const BinaryVector&, const PauliOperator&)>& sign_of) {
  const int n = game.num_qubits();
  StabilizerGroup group = StabilizerGroup::cycle(CycleGraph(n));
  int64_t num = 0;
  int64_t scale = 1;  // running lcm of the per-input denominators |P_x|
  for (const BinaryVector& x : game.inputs.elements()) {
    int64_t inner = 0, size = 2;
    if (game.kind == GameKind::CBF) {
      PauliOperator sx = cycle_stabilizer(n, x);
      inner = 1 + sx.sign() * sign_of(x, PauliOperator(sx.xbits(), sx.zbits(), 0));
    } else {
      auto px = stabilizer_submeasurements(group, x);
      for (const auto& [p, sign] : px) inner += sign * sign_of(x, p);
      size = static_cast<int64_t>(px.size());
    }
    int64_t l = std::lcm(scale, size);
    num *= l / scale;
    scale = l;
    num += inner * (scale / size);
  }
  return Rational(num, scale * static_cast<int64_t>(game.inputs.size()));
}

std::map<std::string, Rational> bell_expansion(const GameInstance& game) {
  const int n = game.num_qubits();
  StabilizerGroup group = StabilizerGroup::cycle(CycleGraph(n));
  std::map<std::string, std::pair<int64_t, int64_t>> acc;  // body -> unreduced (num, den)
  auto add = [&acc](const std::string& body, int64_t num, int64_t den) {
    auto [it, fresh] = acc.emplace(body, std::make_pair(int64_t{0}, den));
    int64_t l = std::lcm(it->second.second, den);
    it->second.first = it->second.first * (l / it->second.second) + num * (l / den);
    it->second.second = l;
  };
  int64_t m = static_cast<int64_t>(game.inputs.size());
  for (const BinaryVector& x : game.inputs.elements()) {
    if (game.kind == GameKind::CBF) {
      PauliOperator sx = cycle_stabilizer(n, x);
      add(PauliOperator::identity(n).body(), 1, 2 * m);
      add(sx.body(), sx.sign(), 2 * m);
    } else {
      auto px = stabilizer_submeasurements(group, x);
      int64_t den = m * static_cast<int64_t>(px.size());
      for (const auto& [p, sign] : px) add(p.body(), sign, den);
    }
  }
  std::map<std::string, Rational> out;
  for (auto& [body, frac] : acc) out.emplace(body, Rational(frac.first, frac.second));
  return out;
}

}  // namespace cyclebell
