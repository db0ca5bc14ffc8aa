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

#include "cyclebell/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <json.hpp>

#include "cyclebell/parallel.hpp"

namespace cyclebell {

size_t MeasurementPlan::num_stabilizers() const {
  size_t c = 0;
  for (const auto& cl : cliques) c += cl.members.size();
  return c;
}

uint64_t MeasurementPlan::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](char c) {
    h ^= static_cast<uint64_t>(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  };
  for (const auto& cl : cliques) {
    for (char c : cl.bases) mix(c);
    mix('|');
    for (const auto& m : cl.members) {
      for (char c : m.op.str()) mix(c);
      mix(',');
    }
  }
  return h;
}

void MeasurementPlan::validate() const {
  std::map<uint64_t, int> seen;
  for (const auto& cl : cliques) {
    if (static_cast<int>(cl.bases.size()) != n)
      throw std::invalid_argument("MeasurementPlan: basis pattern length mismatch");
    for (size_t i = 0; i < cl.members.size(); ++i) {
      const PlanMember& m = cl.members[i];
      if (++seen[m.input.bits()] > 1)
        throw std::invalid_argument("MeasurementPlan: stabilizer appears in more than one clique");
      // The basis pattern must diagonalize the member.
      for (int j = 0; j < n; ++j) {
        char letter = m.op.letter(j);
        if (letter != 'I' && letter != cl.bases[static_cast<size_t>(j)])
          throw std::invalid_argument("MeasurementPlan: basis pattern does not diagonalize a member");
      }
      for (size_t k = i + 1; k < cl.members.size(); ++k)
        if (!m.op.locally_commutes_with(cl.members[k].op))
          throw std::invalid_argument("MeasurementPlan: clique members do not locally commute");
    }
  }
}

std::vector<SignedStabilizer> nontrivial_stabilizers(const CycleGraph& g) {
  if (g.n > 20) throw std::invalid_argument("nontrivial_stabilizers: group too large to materialize");
  std::vector<SignedStabilizer> out;
  out.reserve((size_t{1} << g.n) - 1);
  for (uint64_t bits = 1; bits < (uint64_t{1} << g.n); ++bits) {
    BinaryVector x(g.n, bits);
    out.push_back({x, cycle_stabilizer(g.n, x)});
  }
  return out;
}

MeasurementPlan greedy_clique_cover(int n, const std::vector<SignedStabilizer>& stabilizers) {
  std::vector<SignedStabilizer> order = stabilizers;
  std::stable_sort(order.begin(), order.end(), [](const SignedStabilizer& a, const SignedStabilizer& b) {
    int wa = a.op.weight(), wb = b.op.weight();
    if (wa != wb) return wa > wb;
    return a.op.body() < b.op.body();
  });

  MeasurementPlan plan;
  plan.n = n;
  std::vector<std::string> patterns;  // per clique, with '\0' for unconstrained
  for (const auto& s : stabilizers)
    if (s.op.num_qubits() != n) throw std::invalid_argument("greedy_clique_cover: dimension mismatch");

  for (const auto& s : order) {
    size_t target = patterns.size();
    for (size_t c = 0; c < patterns.size(); ++c) {
      bool fits = true;
      for (int j = 0; j < n && fits; ++j) {
        char letter = s.op.letter(j);
        fits = letter == 'I' || patterns[c][static_cast<size_t>(j)] == '\0' ||
               patterns[c][static_cast<size_t>(j)] == letter;
      }
      if (fits) {
        target = c;
        break;
      }
    }
    if (target == patterns.size()) {
      patterns.emplace_back(static_cast<size_t>(n), '\0');
      plan.cliques.emplace_back();
    }
    for (int j = 0; j < n; ++j)
      if (s.op.letter(j) != 'I') patterns[target][static_cast<size_t>(j)] = s.op.letter(j);
    plan.cliques[target].members.push_back({s.input, s.op, s.op.sign(), s.op.support()});
  }
  for (size_t c = 0; c < patterns.size(); ++c) {
    for (char& ch : patterns[c])
      if (ch == '\0') ch = 'Z';  // unconstrained qubits read out in Z
    plan.cliques[c].bases = patterns[c];
  }
  plan.validate();
  return plan;
}

ConfusionModel ConfusionModel::identity(int n) {
  std::vector<Eigen::Matrix2d> qs(static_cast<size_t>(n), Eigen::Matrix2d::Identity());
  return tensor(std::move(qs));
}

ConfusionModel ConfusionModel::uniform_flips(int n, double p01, double p10) {
  Eigen::Matrix2d m;
  m << 1 - p01, p10, p01, 1 - p10;
  return tensor(std::vector<Eigen::Matrix2d>(static_cast<size_t>(n), m));
}

ConfusionModel ConfusionModel::tensor(std::vector<Eigen::Matrix2d> per_qubit) {
  ConfusionModel c;
  c.n_ = static_cast<int>(per_qubit.size());
  c.qubit_ = std::move(per_qubit);
  c.prepare();
  return c;
}

ConfusionModel ConfusionModel::full(Eigen::MatrixXd m) {
  ConfusionModel c;
  int64_t dim = m.rows();
  if (dim != m.cols() || dim == 0 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("ConfusionModel: matrix must be square with power-of-two size");
  c.n_ = static_cast<int>(std::countr_zero(static_cast<uint64_t>(dim)));
  c.full_ = std::move(m);
  c.prepare();
  return c;
}

void ConfusionModel::prepare() {
  auto check_stochastic = [](const Eigen::MatrixXd& m) {
    for (int64_t col = 0; col < m.cols(); ++col) {
      double sum = m.col(col).sum();
      if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("ConfusionModel: columns must sum to 1");
      if (m.col(col).minCoeff() < -1e-12) throw std::invalid_argument("ConfusionModel: negative probability");
    }
  };
  if (is_tensor()) {
    qubit_inv_.clear();
    for (const auto& q : qubit_) {
      check_stochastic(q);
      double det = q.determinant();
      if (std::abs(det) < 1e-12) throw std::invalid_argument("ConfusionModel: singular per-qubit matrix");
      qubit_inv_.push_back(q.inverse());
      if (((q * qubit_inv_.back()) - Eigen::Matrix2d::Identity()).norm() > 1e-9)
        throw std::invalid_argument("ConfusionModel: inverse check failed");
    }
  } else {
    check_stochastic(full_);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(full_);
    if (!lu.isInvertible()) throw std::invalid_argument("ConfusionModel: singular confusion matrix");
    full_inv_ = lu.inverse();
    if (((full_ * full_inv_) - Eigen::MatrixXd::Identity(full_.rows(), full_.cols())).norm() > 1e-9)
      throw std::invalid_argument("ConfusionModel: inverse check failed");
  }
}

bool ConfusionModel::is_identity() const {
  if (!is_tensor()) return false;
  for (const auto& q : qubit_)
    if ((q - Eigen::Matrix2d::Identity()).norm() > 0) return false;
  return true;
}

double ConfusionModel::correction_weight(const BinaryVector& mask, const BinaryVector& b) const {
  if (is_tensor()) {
    double w = 1;
    for (int j = 0; j < n_; ++j) {
      if (!mask.get(j)) continue;  // sum over z_j of [M_j^-1] column is 1
      const Eigen::Matrix2d& inv = qubit_inv_[static_cast<size_t>(j)];
      int col = b.get(j) ? 1 : 0;
      w *= inv(0, col) - inv(1, col);
    }
    return w;
  }
  double w = 0;
  for (int64_t z = 0; z < full_inv_.rows(); ++z) {
    double term = full_inv_(z, static_cast<int64_t>(b.bits()));
    w += (std::popcount(static_cast<uint64_t>(z) & mask.bits()) & 1) ? -term : term;
  }
  return w;
}

BinaryVector ConfusionModel::sample(const BinaryVector& ideal, RngStream& rng) const {
  if (is_tensor()) {
    BinaryVector out = ideal;
    for (int j = 0; j < n_; ++j) {
      const Eigen::Matrix2d& m = qubit_[static_cast<size_t>(j)];
      int col = ideal.get(j) ? 1 : 0;
      double p_flip = m(1 - col, col);
      if (rng.event(p_flip)) out.set(j, !ideal.get(j));
    }
    return out;
  }
  double u = rng.next_double();
  double acc = 0;
  auto col = static_cast<int64_t>(ideal.bits());
  for (int64_t z = 0; z < full_.rows(); ++z) {
    acc += full_(z, col);
    if (u < acc) return BinaryVector(n_, static_cast<uint64_t>(z));
  }
  return BinaryVector(n_, static_cast<uint64_t>(full_.rows() - 1));
}

const Eigen::MatrixXd& ConfusionModel::full_matrix() const {
  if (is_tensor()) throw std::logic_error("ConfusionModel: tensor model has no materialized matrix");
  return full_;
}

Eigen::MatrixXd ConfusionModel::full_inverse() const {
  if (!is_tensor()) return full_inv_;
  int64_t dim = int64_t{1} << n_;
  Eigen::MatrixXd inv = Eigen::MatrixXd::Ones(1, 1);
  for (int j = 0; j < n_; ++j) {
    const Eigen::Matrix2d& q = qubit_inv_[static_cast<size_t>(j)];
    Eigen::MatrixXd next(inv.rows() * 2, inv.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) next.block(r * inv.rows(), c * inv.cols(), inv.rows(), inv.cols()) = q(r, c) * inv;
    inv = next;
  }
  if (inv.rows() != dim) throw std::logic_error("ConfusionModel: kron size mismatch");
  return inv;
}

std::string ConfusionModel::to_json() const {
  nlohmann::ordered_json j;
  if (is_tensor()) {
    j["kind"] = "tensor";
    j["qubits"] = nlohmann::ordered_json::array();
    for (const auto& q : qubit_)
      j["qubits"].push_back({{q(0, 0), q(0, 1)}, {q(1, 0), q(1, 1)}});
  } else {
    j["kind"] = "full";
    j["matrix"] = nlohmann::ordered_json::array();
    for (int64_t r = 0; r < full_.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int64_t c = 0; c < full_.cols(); ++c) row.push_back(full_(r, c));
      j["matrix"].push_back(row);
    }
  }
  return j.dump(2);
}

ConfusionModel ConfusionModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string kind = j.at("kind");
  if (kind == "tensor") {
    std::vector<Eigen::Matrix2d> qs;
    for (const auto& q : j.at("qubits")) {
      Eigen::Matrix2d m;
      m << q.at(0).at(0).get<double>(), q.at(0).at(1).get<double>(), q.at(1).at(0).get<double>(),
          q.at(1).at(1).get<double>();
      qs.push_back(m);
    }
    return tensor(std::move(qs));
  }
  if (kind == "uniform") {
    return uniform_flips(j.at("n").get<int>(), j.at("p01").get<double>(), j.at("p10").get<double>());
  }
  if (kind == "full") {
    const auto& rows = j.at("matrix");
    Eigen::MatrixXd m(rows.size(), rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size()) throw std::invalid_argument("ConfusionModel: ragged matrix");
      for (size_t c = 0; c < rows.size(); ++c) m(static_cast<int64_t>(r), static_cast<int64_t>(c)) = rows[r][c];
    }
    return full(std::move(m));
  }
  throw std::invalid_argument("ConfusionModel: unknown kind " + kind);
}

std::string ShotDataset::to_json(const MeasurementPlan& plan) const {
  nlohmann::ordered_json out;
  out["plan_hash"] = plan_hash;
  out["n"] = n;
  out["cliques"] = nlohmann::ordered_json::array();
  for (size_t c = 0; c < cliques.size(); ++c) {
    nlohmann::ordered_json jc;
    jc["basis"] = plan.cliques[c].bases;
    jc["shots"] = cliques[c].shots;
    nlohmann::ordered_json tallies = nlohmann::ordered_json::object();
    for (const auto& [bits, count] : cliques[c].tallies) tallies[BinaryVector(n, bits).str()] = count;
    jc["tallies"] = tallies;
    out["cliques"].push_back(jc);
  }
  return out.dump(2);
}

ShotDataset ShotDataset::from_json(const std::string& text) {
  nlohmann::json in = nlohmann::json::parse(text);
  ShotDataset d;
  d.plan_hash = in.at("plan_hash").get<uint64_t>();
  d.n = in.at("n").get<int>();
  for (const auto& jc : in.at("cliques")) {
    ShotData sd;
    sd.shots = jc.at("shots").get<int64_t>();
    for (auto it = jc.at("tallies").begin(); it != jc.at("tallies").end(); ++it)
      sd.tallies[BinaryVector::from_string(it.key()).bits()] = it.value().get<int64_t>();
    d.cliques.push_back(std::move(sd));
  }
  return d;
}

ShotDataset simulate_dataset(const MeasurementPlan& plan, const CycleGraph& graph, PrepForm form,
                             const NoiseParams& noise, int shots_per_setting, const TrajectoryRng& rng,
                             int workers, const ConfusionModel* readout) {
  if (shots_per_setting < 1) throw std::invalid_argument("simulate_dataset: need at least one shot");
  ShotDataset data;
  data.plan_hash = plan.hash();
  data.n = plan.n;
  data.cliques.resize(plan.cliques.size());
  for (size_t c = 0; c < plan.cliques.size(); ++c) {
    auto mc = measurement_circuit(graph, form, plan.cliques[c].bases);
    ShotSampler sampler(mc.circuit, noise, std::string(static_cast<size_t>(plan.n), 'Z'));
    ShotData& sd = data.cliques[c];
    sd.shots = shots_per_setting;
    std::mutex m;
    parallel_chunks(shots_per_setting, workers, [&](int64_t begin, int64_t end) {
      std::map<uint64_t, int64_t> local;
      for (int64_t k = begin; k < end; ++k) {
        RngStream stream = rng.stream(0x7040, c, static_cast<uint64_t>(k));
        BinaryVector y = sampler.sample(stream) ^ mc.flip_mask;
        if (readout && !readout->is_identity()) y = readout->sample(y, stream);
        ++local[y.bits()];
      }
      std::lock_guard<std::mutex> lock(m);
      for (auto [bits, count] : local) sd.tallies[bits] += count;
    });
  }
  return data;
}

namespace {

std::vector<std::vector<double>> member_weights(const MeasurementPlan& plan, const ShotDataset& data,
                                                const ConfusionModel* correction, size_t clique_index,
                                                std::vector<uint64_t>* keys) {
  const Clique& cl = plan.cliques[clique_index];
  const ShotData& sd = data.cliques[clique_index];
  keys->clear();
  keys->reserve(sd.tallies.size());
  for (const auto& [bits, count] : sd.tallies) keys->push_back(bits);
  std::vector<std::vector<double>> w(cl.members.size(), std::vector<double>(keys->size()));
  for (size_t s = 0; s < cl.members.size(); ++s) {
    const PlanMember& m = cl.members[s];
    for (size_t k = 0; k < keys->size(); ++k) {
      BinaryVector b(plan.n, (*keys)[k]);
      double weight;
      if (correction && !correction->is_identity()) {
        weight = m.omega * correction->correction_weight(m.mask, b);
      } else {
        weight = ((b & m.mask).parity() ? -1.0 : 1.0) * m.omega;
      }
      w[s][k] = weight;
    }
  }
  return w;
}

}  // namespace

EstimationReport estimate_expectations(const MeasurementPlan& plan, const ShotDataset& data,
                                       const ConfusionModel* correction) {
  if (data.cliques.size() != plan.cliques.size())
    throw std::invalid_argument("estimate_expectations: dataset does not match the plan");
  if (data.plan_hash != plan.hash())
    throw std::invalid_argument("estimate_expectations: dataset was collected for a different plan");
  EstimationReport report;
  report.n = plan.n;
  report.spam_corrected = correction != nullptr && !correction->is_identity();
  for (size_t c = 0; c < plan.cliques.size(); ++c) {
    const Clique& cl = plan.cliques[c];
    const ShotData& sd = data.cliques[c];
    if (sd.shots <= 0) throw std::invalid_argument("estimate_expectations: empty clique dataset");
    auto N = static_cast<double>(sd.shots);
    std::vector<uint64_t> keys;
    auto w = member_weights(plan, data, correction, c, &keys);
    std::vector<double> counts;
    counts.reserve(keys.size());
    for (uint64_t key : keys) counts.push_back(static_cast<double>(sd.tallies.at(key)));

    std::vector<double> mu(cl.members.size(), 0.0);
    for (size_t s = 0; s < cl.members.size(); ++s) {
      for (size_t k = 0; k < keys.size(); ++k) mu[s] += w[s][k] * counts[k];
      mu[s] /= N;
    }
    Eigen::MatrixXd sigma(cl.members.size(), cl.members.size());
    for (size_t s = 0; s < cl.members.size(); ++s)
      for (size_t t = s; t < cl.members.size(); ++t) {
        double m2 = 0;
        for (size_t k = 0; k < keys.size(); ++k) m2 += w[s][k] * w[t][k] * counts[k];
        m2 /= N;
        double cov = m2 - mu[s] * mu[t];
        sigma(static_cast<int64_t>(s), static_cast<int64_t>(t)) = cov;
        sigma(static_cast<int64_t>(t), static_cast<int64_t>(s)) = cov;
      }
    for (size_t s = 0; s < cl.members.size(); ++s) {
      StabilizerEstimate est;
      est.input = cl.members[s].input;
      est.pauli = cl.members[s].op.str();
      est.mu = mu[s];
      est.stderr_ = std::sqrt(std::max(0.0, sigma(static_cast<int64_t>(s), static_cast<int64_t>(s))) / N);
      est.clique = c;
      report.stabilizers.push_back(std::move(est));
    }
    report.covariance_blocks.push_back(std::move(sigma));
    report.clique_shots.push_back(sd.shots);
  }
  return report;
}

EstimationReport spam_correct(const MeasurementPlan& plan, const ShotDataset& data,
                              const ConfusionModel& confusion) {
  return estimate_expectations(plan, data, &confusion);
}

double covariance_of(const MeasurementPlan& plan, const EstimationReport& report, const BinaryVector& s,
                     const BinaryVector& t) {
  auto locate = [&](const BinaryVector& x) -> std::pair<size_t, size_t> {
    for (size_t c = 0; c < plan.cliques.size(); ++c)
      for (size_t i = 0; i < plan.cliques[c].members.size(); ++i)
        if (plan.cliques[c].members[i].input == x) return {c, i};
    throw std::invalid_argument("covariance_of: stabilizer not in the plan");
  };
  auto [cs, is] = locate(s);
  auto [ct, it] = locate(t);
  if (cs != ct)
    throw std::invalid_argument("covariance_of: stabilizers live in different cliques (independent samples)");
  return report.covariance_blocks[cs](static_cast<int64_t>(is), static_cast<int64_t>(it));
}

const StabilizerEstimate& EstimationReport::by_input(const BinaryVector& x) const {
  for (const auto& est : stabilizers)
    if (est.input == x) return est;
  throw std::invalid_argument("EstimationReport: no estimate for input " + x.str());
}

std::map<uint64_t, double> EstimationReport::values_by_input() const {
  std::map<uint64_t, double> out;
  for (const auto& est : stabilizers) out[est.input.bits()] = est.mu;
  return out;
}

FidelityWitness fidelity_and_witness(const EstimationReport& report) {
  const int n = report.n;
  uint64_t expected = (uint64_t{1} << n) - 1;
  if (report.stabilizers.size() != expected) {
    std::vector<bool> present(expected + 1, false);
    for (const auto& est : report.stabilizers) present[est.input.bits()] = true;
    std::string missing;
    for (uint64_t b = 1; b <= expected && missing.size() < 120; ++b)
      if (!present[b]) missing += " " + BinaryVector(n, b).str();
    throw std::invalid_argument("fidelity_and_witness: incomplete stabilizer coverage; missing:" + missing);
  }
  double h = std::pow(2.0, -n);
  double f = h;  // identity contributes exactly 1
  for (const auto& est : report.stabilizers) f += h * est.mu;
  double var = 0;
  for (size_t c = 0; c < report.covariance_blocks.size(); ++c) {
    const auto& block = report.covariance_blocks[c];
    var += h * h * block.sum() / static_cast<double>(report.clique_shots[c]);
  }
  FidelityWitness out;
  out.fidelity = f;
  out.fidelity_stderr = std::sqrt(std::max(0.0, var));
  out.witness = 0.5 - f;
  out.witness_stderr = out.fidelity_stderr;
  out.entanglement_detected = out.witness < 0;
  return out;
}

int64_t sampling_budget(double epsilon, double delta) {
  if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("sampling_budget: epsilon not in (0, 1]");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("sampling_budget: delta not in (0, 1)");
  return static_cast<int64_t>(std::ceil(8.0 * std::log(4.0 / delta) / (epsilon * epsilon)));
}

GamePlayReport play_with_readout(const GameInstance& game, const NoiseParams& noise,
                                 const ConfusionModel& readout, const PlayOptions& options) {
  if (options.shots_per_input < 1) throw std::invalid_argument("play_with_readout: need at least one shot");
  const int n = game.num_qubits();
  if (readout.num_qubits() != n) throw std::invalid_argument("play_with_readout: confusion size mismatch");
  CycleGraph graph(n);
  Referee referee(game);
  const auto& inputs = game.inputs.elements();
  TrajectoryRng rng(options.seed);

  GamePlayReport report;
  report.raw.per_input.resize(inputs.size());
  report.corrected.resize(inputs.size());

  for (size_t i = 0; i < inputs.size(); ++i) {
    const BinaryVector& x = inputs[i];
    auto mc = measurement_circuit(graph, options.form, quantum_bases(game.kind, x));
    ShotSampler sampler(mc.circuit, noise, std::string(static_cast<size_t>(n), 'Z'));

    const int64_t shots = options.shots_per_input;
    int64_t wins = 0;
    std::map<uint64_t, int64_t> tally;
    std::mutex m;
    parallel_chunks(shots, options.workers, [&](int64_t begin, int64_t end) {
      int64_t local_wins = 0;
      std::map<uint64_t, int64_t> local;
      for (int64_t k = begin; k < end; ++k) {
        RngStream stream = rng.stream(static_cast<uint64_t>(game.kind), i, static_cast<uint64_t>(k));
        BinaryVector y = sampler.sample(stream) ^ mc.flip_mask;
        y = readout.sample(y, stream);
        local_wins += referee.wins(i, y);
        ++local[y.bits()];
      }
      std::lock_guard<std::mutex> lock(m);
      wins += local_wins;
      for (auto [bits, c] : local) tally[bits] += c;
    });
    report.raw.per_input[i] = {x, wins, shots};

    // Per-shot correction weight: W(b) = sum_{y in Win(x)} [M^-1 delta_b](y).
    // The corrected win probability is the sample mean of W.
    std::map<uint64_t, double> weight;
    Eigen::MatrixXd inv = readout.full_inverse();
    for (const auto& [bits, count] : tally) {
      double w = 0;
      for (int64_t y = 0; y < inv.rows(); ++y)
        if (referee.wins(i, BinaryVector(n, static_cast<uint64_t>(y)))) w += inv(y, static_cast<int64_t>(bits));
      weight[bits] = w;
    }
    double mean = 0, second = 0;
    for (const auto& [bits, count] : tally) {
      mean += weight[bits] * static_cast<double>(count);
      second += weight[bits] * weight[bits] * static_cast<double>(count);
    }
    mean /= static_cast<double>(shots);
    second /= static_cast<double>(shots);
    report.corrected[i] = {x, mean,
                           std::sqrt(std::max(0.0, second - mean * mean) / static_cast<double>(shots))};
  }

  double p = 0, var = 0;
  for (const auto& stat : report.raw.per_input) {
    p += stat.rate();
    var += stat.stderr_() * stat.stderr_();
  }
  auto m = static_cast<double>(inputs.size());
  report.raw.p_hat = p / m;
  report.raw.stderr_ = std::sqrt(var) / m;

  p = var = 0;
  for (const auto& row : report.corrected) {
    p += row.rate;
    var += row.stderr_ * row.stderr_;
  }
  report.corrected_p_hat = p / m;
  report.corrected_stderr = std::sqrt(var) / m;
  return report;
}

double direct_fidelity_estimate(const CycleGraph& graph, const DirectFidelityOptions& options) {
  int64_t budget = sampling_budget(options.epsilon, options.delta);
  TrajectoryRng rng(options.seed);
  // Cache one sampler per drawn basis pattern; with n = 6 there are at
  // most 64 distinct stabilizer patterns.
  std::map<uint64_t, std::pair<ShotSampler, BinaryVector>> samplers;
  double acc = 0;
  for (int64_t k = 0; k < budget; ++k) {
    RngStream stream = rng.stream(0xdf, 0, static_cast<uint64_t>(k));
    uint64_t xbits = stream.next_u64() & ((uint64_t{1} << graph.n) - 1);
    BinaryVector x(graph.n, xbits);
    if (!x.any()) {
      acc += 1.0;  // identity stabilizer
      continue;
    }
    PauliOperator sx = cycle_stabilizer(graph.n, x);
    auto it = samplers.find(xbits);
    if (it == samplers.end()) {
      auto mc = measurement_circuit(graph, options.form, quantum_bases(GameKind::CBF, x));
      it = samplers
               .emplace(xbits, std::make_pair(ShotSampler(mc.circuit, options.noise,
                                                          std::string(static_cast<size_t>(graph.n), 'Z')),
                                              mc.flip_mask))
               .first;
    }
    BinaryVector y = it->second.first.sample(stream) ^ it->second.second;
    int parity = (y & sx.support()).parity() ? -1 : 1;
    acc += sx.sign() * parity;
  }
  return acc / static_cast<double>(budget);
}

}  // namespace cyclebell
