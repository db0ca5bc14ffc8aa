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

#include "cyclebell/circuit.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace cyclebell {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_gate(int n, const GateOp& g) {
  if (g.q0 < 0 || g.q0 >= n) throw std::invalid_argument("Circuit: gate target out of range");
  if (g.is_two_qubit()) {
    if (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0)
      throw std::invalid_argument("Circuit: two-qubit gate targets must be distinct and in range");
  }
  if (!std::isfinite(g.theta) || !std::isfinite(g.phi))
    throw std::invalid_argument("Circuit: gate angle must be finite");
}

}  // namespace

void Circuit::add_layer(std::vector<GateOp> gates) {
  std::set<int> used;
  for (const auto& g : gates) {
    check_gate(n_, g);
    if (!used.insert(g.q0).second || (g.is_two_qubit() && !used.insert(g.q1).second))
      throw std::invalid_argument("Circuit: layer targets overlap");
  }
  layers_.push_back(std::move(gates));
}

void Circuit::append(const GateOp& g) {
  check_gate(n_, g);
  if (!layers_.empty()) {
    std::set<int> used;
    for (const auto& h : layers_.back()) {
      used.insert(h.q0);
      if (h.is_two_qubit()) used.insert(h.q1);
    }
    if (!used.count(g.q0) && (!g.is_two_qubit() || !used.count(g.q1))) {
      layers_.back().push_back(g);
      return;
    }
  }
  layers_.push_back({g});
}

void apply_gate(StateVector& s, const GateOp& g) {
  switch (g.kind) {
    case GateKind::RZ: apply_rz(s, g.q0, g.theta); break;
    case GateKind::RXY: apply_rxy(s, g.q0, g.phi, g.theta); break;
    case GateKind::CZ: apply_cz(s, g.q0, g.q1); break;
    case GateKind::RXX: apply_rxx(s, g.theta, g.q0, g.q1); break;
    case GateKind::BasisRot: apply_1q(s, g.q0, basis_rotation_matrix(g.basis)); break;
  }
}

StateVector apply_circuit(const StateVector& s, const Circuit& c) {
  if (s.num_qubits() != c.num_qubits()) throw std::invalid_argument("apply_circuit: dimension mismatch");
  StateVector out = s;
  for (const auto& layer : c.layers())
    for (const auto& g : layer) apply_gate(out, g);
  return out;
}

Circuit preparation_circuit(const CycleGraph& g, PrepForm form) {
  Circuit c(g.n);
  if (form == PrepForm::CZ) {
    std::vector<GateOp> plus;
    for (int j = 0; j < g.n; ++j) plus.push_back(GateOp::rxy(j, kPi / 2, kPi / 2));  // |0> -> |+>
    c.add_layer(std::move(plus));
    // Greedy edge coloring of the cycle: alternate layers, odd n needs a third.
    std::vector<GateOp> even, odd, rest;
    for (auto [a, b] : g.edges()) {
      if (a % 2 == 0 && b == a + 1) even.push_back(GateOp::cz(a, b));
      else if (a % 2 == 1 && b == a + 1) odd.push_back(GateOp::cz(a, b));
      else rest.push_back(GateOp::cz(a, b));  // the wrap-around edge (n-1, 0)
    }
    if (g.n % 2 == 0 && !rest.empty()) {
      odd.insert(odd.end(), rest.begin(), rest.end());
      rest.clear();
    }
    c.add_layer(std::move(even));
    c.add_layer(std::move(odd));
    if (!rest.empty()) c.add_layer(std::move(rest));
  } else {
    // The R_XX(pi/4) gates on cycle edges all commute; run them one per
    // layer as on hardware, then close with the single merged rotation
    // layer R_y(-pi/2) on every qubit.
    for (auto [a, b] : g.edges()) c.add_layer({GateOp::rxx(a, b, kPi / 4)});
    std::vector<GateOp> close;
    for (int j = 0; j < g.n; ++j) close.push_back(GateOp::rxy(j, kPi / 2, -kPi / 2));
    c.add_layer(std::move(close));
  }
  return c;
}

ZxzDecomposition decompose_1q(const Eigen::Matrix2cd& u) {
  // Normalize to SU(2): U = e^{i delta} [[a, b], [-conj(b), conj(a)]].
  Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  Complex scale = std::sqrt(Complex(1.0, 0.0) / det);
  Complex a = u(0, 0) * scale, b = u(0, 1) * scale;
  // RZ(gamma) RXY(phi, theta) = [[cos(t/2) e^{-ig/2}, -i sin(t/2) e^{-i phi} e^{-ig/2}],
  //                              [-i sin(t/2) e^{i phi} e^{ig/2}, cos(t/2) e^{ig/2}]]
  double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  double gamma = 0, phi = 0;
  if (std::abs(a) > 1e-12) gamma = -2.0 * std::arg(a);
  if (std::abs(b) > 1e-12) {
    // b = -i sin(t/2) e^{-i(phi + gamma/2)}
    phi = -std::arg(b * Complex(0, 1)) - gamma / 2;
  }
  if (theta < 0) theta += 4 * kPi;
  return {gamma, phi, theta};
}

MeasuredCircuit measurement_circuit(const CycleGraph& g, PrepForm form, const std::string& bases) {
  if (static_cast<int>(bases.size()) != g.n)
    throw std::invalid_argument("measurement_circuit: basis pattern length mismatch");
  Circuit prep = preparation_circuit(g, form);
  BinaryVector flips(g.n);
  if (form == PrepForm::CZ) {
    Circuit c = prep;
    std::vector<GateOp> rot;
    for (int j = 0; j < g.n; ++j)
      if (bases[static_cast<size_t>(j)] != 'Z') rot.push_back(GateOp::basis_rot(j, bases[static_cast<size_t>(j)]));
    if (!rot.empty()) c.add_layer(std::move(rot));
    return {std::move(c), flips};
  }

  // Merge the preparation's closing rotation layer with the basis change.
  Circuit c(g.n);
  const auto& layers = prep.layers();
  for (size_t i = 0; i + 1 < layers.size(); ++i) c.add_layer(layers[i]);
  std::vector<GateOp> merged;
  for (int j = 0; j < g.n; ++j) {
    Eigen::Matrix2cd t = basis_rotation_matrix(bases[static_cast<size_t>(j)]) * rxy_matrix(kPi / 2, -kPi / 2);
    ZxzDecomposition d = decompose_1q(t);
    double s = std::abs(std::sin(d.theta / 2)), co = std::abs(std::cos(d.theta / 2));
    if (s < 1e-9) continue;  // diagonal: nothing to run before a Z measurement
    if (co < 1e-9) {
      flips.set(j, true);  // full xy-plane flip: classical postprocessing
      continue;
    }
    merged.push_back(GateOp::rxy(j, d.phi, d.theta));
  }
  if (!merged.empty()) c.add_layer(std::move(merged));
  return {std::move(c), flips};
}

std::string Circuit::to_json() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& layer : layers_) {
    nlohmann::ordered_json jl = nlohmann::ordered_json::array();
    for (const auto& g : layer) {
      nlohmann::ordered_json jg;
      switch (g.kind) {
        case GateKind::RZ: jg = {{"gate", "rz"}, {"targets", {g.q0}}, {"angle", g.theta}}; break;
        case GateKind::RXY:
          jg = {{"gate", "rxy"}, {"targets", {g.q0}}, {"angle", g.theta}, {"axis", g.phi}};
          break;
        case GateKind::CZ: jg = {{"gate", "cz"}, {"targets", {g.q0, g.q1}}}; break;
        case GateKind::RXX: jg = {{"gate", "rxx"}, {"targets", {g.q0, g.q1}}, {"angle", g.theta}}; break;
        case GateKind::BasisRot:
          jg = {{"gate", "basis_rot"}, {"targets", {g.q0}}, {"basis", std::string(1, g.basis)}};
          break;
      }
      jl.push_back(jg);
    }
    out.push_back(jl);
  }
  return out.dump(2);
}

Circuit Circuit::from_json(const std::string& text) {
  nlohmann::json in = nlohmann::json::parse(text);
  int n = 0;
  for (const auto& layer : in)
    for (const auto& jg : layer)
      for (const auto& t : jg.at("targets")) n = std::max(n, t.get<int>() + 1);
  Circuit c(n);
  for (const auto& layer : in) {
    std::vector<GateOp> gates;
    for (const auto& jg : layer) {
      std::string kind = jg.at("gate");
      auto targets = jg.at("targets");
      if (kind == "rz") gates.push_back(GateOp::rz(targets.at(0), jg.at("angle")));
      else if (kind == "rxy") gates.push_back(GateOp::rxy(targets.at(0), jg.at("axis"), jg.at("angle")));
      else if (kind == "cz") gates.push_back(GateOp::cz(targets.at(0), targets.at(1)));
      else if (kind == "rxx") gates.push_back(GateOp::rxx(targets.at(0), targets.at(1), jg.at("angle")));
      else if (kind == "basis_rot")
        gates.push_back(GateOp::basis_rot(targets.at(0), jg.at("basis").get<std::string>().at(0)));
      else throw std::invalid_argument("Circuit::from_json: unknown gate " + kind);
    }
    c.add_layer(std::move(gates));
  }
  return c;
}

}  // namespace cyclebell
