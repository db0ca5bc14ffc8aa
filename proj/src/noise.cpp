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

#include "cyclebell/noise.hpp"

#include <algorithm>

#include <json.hpp>

namespace cyclebell {

namespace {

const Eigen::Matrix2cd& pauli_matrix(int k) {
  static const Eigen::Matrix2cd mats[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return mats[k];
}

}  // namespace

void NoiseParams::validate() const {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string("NoiseParams: ") + name + " not in [0,1]");
  };
  prob(p1d, "p1d");
  prob(p2d, "p2d");
  prob(p2xx, "p2XX");
  prob(pc, "pc");
  if (!(T2 > 0)) throw std::invalid_argument("NoiseParams: T2 must be positive");
  if (t1 < 0 || t2 < 0) throw std::invalid_argument("NoiseParams: gate times must be nonnegative");
}

std::string NoiseParams::to_json() const {
  nlohmann::ordered_json j{{"p1d", p1d}, {"p2d", p2d},       {"p2XX", p2xx}, {"T2", T2},
                           {"t1", t1},   {"t2", t2},         {"pc", pc}};
  j["crosstalk_pairs"] = nlohmann::json::array();
  for (auto [a, b] : crosstalk_pairs) j["crosstalk_pairs"].push_back({a, b});
  return j.dump(2);
}

NoiseParams NoiseParams::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  NoiseParams np;
  np.p1d = j.value("p1d", 0.0);
  np.p2d = j.value("p2d", 0.0);
  np.p2xx = j.value("p2XX", 0.0);
  np.T2 = j.value("T2", 0.2);
  np.t1 = j.value("t1", 10e-6);
  np.t2 = j.value("t2", 350e-6);
  np.pc = j.value("pc", 6e-4);
  if (j.contains("crosstalk_pairs"))
    for (const auto& p : j["crosstalk_pairs"]) np.crosstalk_pairs.emplace_back(p.at(0), p.at(1));
  np.validate();
  return np;
}

ShotSampler::ShotSampler(const Circuit& circuit, const NoiseParams& noise, const std::string& bases)
    : n_(circuit.num_qubits()) {
  noise.validate();
  if (static_cast<int>(bases.size()) != n_)
    throw std::invalid_argument("ShotSampler: basis pattern length mismatch");

  Circuit full = circuit;
  std::vector<GateOp> rot;
  for (int j = 0; j < n_; ++j) {
    char b = bases[static_cast<size_t>(j)];
    if (b != 'Z') rot.push_back(GateOp::basis_rot(j, b));
  }
  if (!rot.empty()) full.add_layer(std::move(rot));

  for (const auto& layer : full.layers()) {
    bool has_2q = false, has_pulse = false;
    uint64_t touched = 0;
    for (const auto& g : layer) {
      touched |= uint64_t{1} << g.q0;
      if (g.is_two_qubit()) {
        touched |= uint64_t{1} << g.q1;
        has_2q = true;
      }
      if (g.is_pulse()) has_pulse = true;
      steps_.push_back({true, g, EventKind::Depol1, 0, 0, 0});
      if (g.is_pulse()) steps_.push_back({false, {}, EventKind::Depol1, noise.p1d, g.q0, 0});
      if (g.is_two_qubit()) {
        steps_.push_back({false, {}, EventKind::Depol2, noise.p2d, g.q0, g.q1});
        steps_.push_back({false, {}, EventKind::JointXX, noise.p2xx, g.q0, g.q1});
        if (!noise.crosstalk_pairs.empty()) {
          for (auto [a, b] : noise.crosstalk_pairs)
            steps_.push_back({false, {}, EventKind::JointXX, noise.pc, a, b});
        } else {
          // Default rule: the ions adjacent on the ring to the target pair.
          int lo = std::min(g.q0, g.q1), hi = std::max(g.q0, g.q1);
          if (hi == lo + 1) {
            steps_.push_back({false, {}, EventKind::JointXX, noise.pc, (lo + n_ - 1) % n_, lo});
            steps_.push_back({false, {}, EventKind::JointXX, noise.pc, hi, (hi + 1) % n_});
          } else {  // wrap-around edge (0, n-1)
            steps_.push_back({false, {}, EventKind::JointXX, noise.pc, hi - 1, hi});
            steps_.push_back({false, {}, EventKind::JointXX, noise.pc, lo, lo + 1});
          }
        }
      }
    }
    // Idle dephasing on untouched qubits; RZ-only layers take no time.
    double t = has_2q ? noise.t2 : (has_pulse ? noise.t1 : 0.0);
    if (t > 0) {
      double pi = noise.p_idle(t);
      for (int q = 0; q < n_; ++q)
        if (!((touched >> q) & 1)) steps_.push_back({false, {}, EventKind::IdleZ, pi, q, 0});
    }
  }

  any_noise_ = std::any_of(steps_.begin(), steps_.end(),
                           [](const Step& s) { return !s.is_gate && s.p > 0; });

  StateVector ideal(n_);
  for (const auto& st : steps_)
    if (st.is_gate) apply_gate(ideal, st.gate);
  noiseless_ = ideal.amplitudes();
  cdf_.resize(static_cast<size_t>(noiseless_.size()));
  double acc = 0;
  for (int64_t i = 0; i < noiseless_.size(); ++i) {
    acc += std::norm(noiseless_[i]);
    cdf_[static_cast<size_t>(i)] = acc;
  }
}

void ShotSampler::run(StateVector& s, const std::vector<std::pair<size_t, double>>& fired) const {
  size_t next = 0;
  for (size_t i = 0; i < steps_.size(); ++i) {
    const Step& st = steps_[i];
    if (st.is_gate) {
      apply_gate(s, st.gate);
      continue;
    }
    if (next >= fired.size() || fired[next].first != i) continue;
    double u = fired[next++].second;
    switch (st.event) {
      case EventKind::Depol1: {
        int k = std::min(2, static_cast<int>(u * 3));
        apply_1q(s, st.q0, pauli_matrix(k + 1));
        break;
      }
      case EventKind::Depol2: {
        int k = 1 + std::min(14, static_cast<int>(u * 15));  // skip (I, I)
        if (k / 4 != 0) apply_1q(s, st.q0, pauli_matrix(k / 4));
        if (k % 4 != 0) apply_1q(s, st.q1, pauli_matrix(k % 4));
        break;
      }
      case EventKind::JointXX:
        apply_1q(s, st.q0, pauli_matrix(1));
        apply_1q(s, st.q1, pauli_matrix(1));
        break;
      case EventKind::IdleZ:
        apply_1q(s, st.q0, pauli_matrix(3));
        break;
    }
  }
}

StateVector ShotSampler::trajectory_state(RngStream& rng) const {
  std::vector<std::pair<size_t, double>> fired;
  for (size_t i = 0; i < steps_.size(); ++i) {
    const Step& st = steps_[i];
    if (st.is_gate) continue;
    if (auto u = rng.event(st.p)) fired.emplace_back(i, *u);
  }
  StateVector s(n_);
  if (fired.empty()) {
    s.amplitudes() = noiseless_;
    return s;
  }
  run(s, fired);
  return s;
}

BinaryVector ShotSampler::sample(RngStream& rng) const {
  std::vector<std::pair<size_t, double>> fired;
  if (any_noise_) {
    for (size_t i = 0; i < steps_.size(); ++i) {
      const Step& st = steps_[i];
      if (st.is_gate) continue;
      if (auto u = rng.event(st.p)) fired.emplace_back(i, *u);
    }
  }
  double u = rng.next_double();
  if (fired.empty()) {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u * cdf_.back());
    auto idx = static_cast<uint64_t>(std::min<ptrdiff_t>(it - cdf_.begin(), static_cast<ptrdiff_t>(cdf_.size()) - 1));
    return BinaryVector(n_, idx);
  }
  StateVector s(n_);
  run(s, fired);
  const auto& a = s.amplitudes();
  double acc = 0, target = u;  // amplitudes stay normalized: events are unitary
  for (int64_t i = 0; i < a.size(); ++i) {
    acc += std::norm(a[i]);
    if (target < acc || i == a.size() - 1) return BinaryVector(n_, static_cast<uint64_t>(i));
  }
  return BinaryVector(n_, static_cast<uint64_t>(a.size() - 1));
}

BinaryVector noisy_shot(const Circuit& circuit, const NoiseParams& noise, const std::string& bases,
                        RngStream& rng) {
  ShotSampler sampler(circuit, noise, bases);
  return sampler.sample(rng);
}

std::vector<BinaryVector> measure_and_sample(const StateVector& state, const std::string& bases, int shots,
                                             RngStream& rng) {
  if (static_cast<int>(bases.size()) != state.num_qubits())
    throw std::invalid_argument("measure_and_sample: basis pattern length mismatch");
  if (shots < 1) throw std::invalid_argument("measure_and_sample: need at least one shot");
  StateVector rotated = state;
  for (int j = 0; j < state.num_qubits(); ++j) {
    char b = bases[static_cast<size_t>(j)];
    if (b != 'Z') apply_1q(rotated, j, basis_rotation_matrix(b));
  }
  const auto& a = rotated.amplitudes();
  std::vector<double> cdf(static_cast<size_t>(a.size()));
  double acc = 0;
  for (int64_t i = 0; i < a.size(); ++i) {
    acc += std::norm(a[i]);
    cdf[static_cast<size_t>(i)] = acc;
  }
  std::vector<BinaryVector> out;
  out.reserve(static_cast<size_t>(shots));
  for (int k = 0; k < shots; ++k) {
    double u = rng.next_double() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<uint64_t>(std::min<ptrdiff_t>(it - cdf.begin(), static_cast<ptrdiff_t>(cdf.size()) - 1));
    out.emplace_back(state.num_qubits(), idx);
  }
  return out;
}

double parity_population_A(const StateVector& s) {
  if (s.num_qubits() != 2) throw std::invalid_argument("parity_population_A: expected a two-qubit state");
  return std::norm(s.amplitudes()[1]) + std::norm(s.amplitudes()[2]);
}

}  // namespace cyclebell
