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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <set>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cyclebell/bounds.hpp"
#include "cyclebell/noise_fit.hpp"
#include "cyclebell/parallel.hpp"
#include "cyclebell/tomography.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace cyclebell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRefusal = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

NoiseParams load_noise(const std::string& spec) {
  if (spec == "none") return NoiseParams::zero();
  return NoiseParams::from_json(read_file(spec));
}

std::optional<ConfusionModel> load_spam(const std::string& spec, int n) {
  if (spec == "none" || spec.empty()) return std::nullopt;
  if (spec.rfind("uniform:", 0) == 0) {
    std::string rest = spec.substr(8);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--spam uniform:P01,P10 expected");
    return ConfusionModel::uniform_flips(n, std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
  }
  return ConfusionModel::from_json(read_file(spec));
}

GameInstance make_game(const std::string& game, const std::string& inputs, int n) {
  InputSet set = InputSet::named(inputs, n);
  if (game == "cbf") return GameInstance::cbf(std::move(set));
  if (game == "ss") return GameInstance::ss(std::move(set));
  throw std::invalid_argument("--game must be cbf or ss");
}

std::string format_rational(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%lld/%lld", static_cast<long long>(r.num), static_cast<long long>(r.den));
  return buf;
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// play

int run_play(const std::string& game_name, const std::string& inputs, int n, int shots, uint64_t seed,
             const std::string& noise_spec, const std::string& spam_spec, const std::string& out_dir,
             const std::string& format, int workers, bool rounds) {
  GameInstance game = make_game(game_name, inputs, n);
  NoiseParams noise = load_noise(noise_spec);
  std::optional<ConfusionModel> spam = load_spam(spam_spec, game.num_qubits());
  PlayOptions opt;
  opt.shots_per_input = shots;
  opt.seed = seed;
  opt.workers = workers;
  opt.record_rounds = rounds && !spam;

  SuccessEstimate est;
  std::optional<GamePlayReport> with_readout;
  PlayResult res;
  if (spam) {
    with_readout = play_with_readout(game, noise, *spam, opt);
    est = with_readout->raw;
  } else {
    res = play_quantum(game, noise, opt);
    est = res.estimate;
  }

  ordered_json j;
  j["game"] = game.name();
  j["shots_per_input"] = shots;
  j["seed"] = seed;
  j["noise"] = noise_spec;
  j["win_rate"] = est.p_hat;
  j["stderr"] = est.stderr_;
  if (with_readout) {
    j["spam_corrected_win_rate"] = with_readout->corrected_p_hat;
    j["spam_corrected_stderr"] = with_readout->corrected_stderr;
  }
  j["per_input"] = ordered_json::array();
  for (size_t i = 0; i < est.per_input.size(); ++i) {
    const auto& s = est.per_input[i];
    ordered_json row{{"input", s.x.str()},
                     {"wins", s.wins},
                     {"shots", s.shots},
                     {"rate", s.rate()},
                     {"stderr", s.stderr_()}};
    if (with_readout) {
      row["spam_corrected_rate"] = with_readout->corrected[i].rate;
      row["spam_corrected_stderr"] = with_readout->corrected[i].stderr_;
    }
    j["per_input"].push_back(row);
  }
  write_file(fs::path(out_dir) / "success.json", j.dump(2) + "\n");

  if (format == "csv") {
    std::string csv = with_readout ? "input,win_rate,stderr,spam_corrected_rate,spam_corrected_stderr\n"
                                   : "input,win_rate,stderr\n";
    for (size_t i = 0; i < est.per_input.size(); ++i) {
      const auto& s = est.per_input[i];
      csv += s.x.str() + "," + format_double(s.rate()) + "," + format_double(s.stderr_());
      if (with_readout)
        csv += "," + format_double(with_readout->corrected[i].rate) + "," +
               format_double(with_readout->corrected[i].stderr_);
      csv += "\n";
    }
    csv += "ALL," + format_double(est.p_hat) + "," + format_double(est.stderr_);
    if (with_readout)
      csv += "," + format_double(with_readout->corrected_p_hat) + "," +
             format_double(with_readout->corrected_stderr);
    csv += "\n";
    write_file(fs::path(out_dir) / "success.csv", csv);
  }
  if (opt.record_rounds) {
    std::string lines;
    for (const auto& r : res.rounds) {
      ordered_json rec{{"x", r.x.str()},
                       {"y", r.y.str()},
                       {"won", r.won},
                       {"strategy", r.strategy},
                       {"seed", std::to_string(seed) + "/" + r.x.str() + "/" + std::to_string(r.shot)}};
      lines += rec.dump() + "\n";
    }
    write_file(fs::path(out_dir) / "rounds.jsonl", lines);
  }
  std::printf("%s: Pr[win] = %.4f +- %.4f", game.name().c_str(), est.p_hat, est.stderr_);
  if (with_readout)
    std::printf(", SPAM-corrected %.4f +- %.4f", with_readout->corrected_p_hat,
                with_readout->corrected_stderr);
  std::printf("  (%d shots/input, seed %llu)\n", shots, static_cast<unsigned long long>(seed));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds

ordered_json witness_json(const GeometricCircuitStrategy& s) {
  ordered_json outputs = ordered_json::array();
  for (const auto& f : s.outputs) {
    std::string table;
    for (uint8_t b : f.table) table.push_back(b ? '1' : '0');
    outputs.push_back({{"depends", f.depends}, {"table", table}});
  }
  return {{"depth", s.depth}, {"fan_in", s.fan_in}, {"outputs", outputs}};
}

int run_bounds(const std::string& game_name, const std::string& inputs, int n, int depth,
               const std::string& out_dir, bool timing) {
  GameInstance game = make_game(game_name, inputs, n);
  std::vector<int> depths;
  if (depth < 0) {
    depths = {0, 1};
  } else {
    depths = {depth};
  }

  ordered_json all = ordered_json::array();
  for (int d : depths) {
    // For the scaled games the exhaustive search is replaced by the
    // Theorem-1 certificate: the obstruction proves beta_D <= 4/5, the
    // depth-0 witness attains it, and the depth-(D+1) corollary strategy
    // is perfect.
    if (game.kind == GameKind::SS && game.inputs.kind() == InputSetKind::HLFn5 && n == 6 * d && d % 2 == 1 &&
        d > 1) {
      ObstructionResult cert = parity_obstruction_check(n, d);
      GeometricCircuitStrategy next = ss_depth_plus_one_perfect_strategy(n, d);
      Rational next_rate = evaluate_strategy(next, game);
      ordered_json j;
      j["game"] = game.name();
      j["kind"] = game_name;
      j["inputs"] = inputs;
      j["n"] = n;
      j["depth"] = d;
      j["certificate"] = cert.inconsistent ? "inconsistent" : "CONSISTENT (falsifies the bound!)";
      j["beta"] = {{"num", 4}, {"den", 5}};
      j["depth_plus_one_win_rate"] = format_rational(next_rate);
      all.push_back(j);
      std::printf("%-22s depth-%d bound: 4/5 (parity obstruction: %s); depth-%d strategy wins %s\n",
                  game.name().c_str(), d, cert.inconsistent ? "inconsistent, certified" : "FAILED", d + 1,
                  format_rational(next_rate).c_str());
      continue;
    }
    BoundResult r = depth_bound(game, d);
    ordered_json j;
    j["game"] = game.name();
    j["kind"] = game_name;
    j["inputs"] = inputs;
    j["n"] = n;
    j["depth"] = d;
    j["beta"] = {{"num", r.beta.num}, {"den", r.beta.den}};
    j["beta_value"] = r.beta.value();
    j["witness"] = witness_json(r.witness);
    j["search_size"] = r.search_size;
    if (timing) j["seconds"] = r.seconds;
    all.push_back(j);
    std::printf("%-22s depth-%d bound: %s = %.4f%%  (searched %llu strategies)\n", game.name().c_str(), d,
                format_rational(r.beta).c_str(), 100 * r.beta.value(),
                static_cast<unsigned long long>(r.search_size));
  }
  write_file(fs::path(out_dir) / ("bounds_" + game_name + "_" + inputs + ".json"), all.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tomo

ordered_json report_to_json(const MeasurementPlan& plan, const EstimationReport& raw,
                            const EstimationReport* corrected, int shots, uint64_t seed) {
  FidelityWitness fw_raw = fidelity_and_witness(raw);
  ordered_json j;
  j["n"] = raw.n;
  j["settings"] = plan.num_settings();
  j["shots_per_setting"] = shots;
  j["seed"] = seed;
  j["stabilizers"] = ordered_json::array();
  for (size_t i = 0; i < raw.stabilizers.size(); ++i) {
    const auto& est = raw.stabilizers[i];
    ordered_json row{{"input", est.input.str()},
                     {"stabilizer", est.pauli},
                     {"raw", {{"value", est.mu}, {"stderr", est.stderr_}}},
                     {"setting", est.clique}};
    if (corrected)
      row["spam_corrected"] = {{"value", corrected->stabilizers[i].mu},
                               {"stderr", corrected->stabilizers[i].stderr_}};
    j["stabilizers"].push_back(row);
  }
  j["fidelity"] = {{"raw", {{"value", fw_raw.fidelity}, {"stderr", fw_raw.fidelity_stderr}}}};
  j["witness"] = {{"raw", {{"value", fw_raw.witness}, {"stderr", fw_raw.witness_stderr}}}};
  j["entanglement_detected"] = fw_raw.entanglement_detected;
  if (corrected) {
    FidelityWitness fw_c = fidelity_and_witness(*corrected);
    j["fidelity"]["spam_corrected"] = {{"value", fw_c.fidelity}, {"stderr", fw_c.fidelity_stderr}};
    j["witness"]["spam_corrected"] = {{"value", fw_c.witness}, {"stderr", fw_c.witness_stderr}};
    j["entanglement_detected"] = j["entanglement_detected"].get<bool>() || fw_c.entanglement_detected;
  }
  return j;
}

std::string report_to_csv(const EstimationReport& raw, const EstimationReport* corrected) {
  std::string csv = "input,stabilizer,raw_value,raw_stderr";
  if (corrected) csv += ",spam_corrected_value,spam_corrected_stderr";
  csv += ",setting\n";
  for (size_t i = 0; i < raw.stabilizers.size(); ++i) {
    const auto& est = raw.stabilizers[i];
    csv += est.input.str() + "," + est.pauli + "," + format_double(est.mu) + "," + format_double(est.stderr_);
    if (corrected)
      csv += "," + format_double(corrected->stabilizers[i].mu) + "," +
             format_double(corrected->stabilizers[i].stderr_);
    csv += "," + std::to_string(est.clique + 1) + "\n";
  }
  return csv;
}

int run_tomo(int n, int shots, uint64_t seed, const std::string& noise_spec, const std::string& spam_spec,
             const std::string& form_name, const std::string& out_dir, int workers) {
  CycleGraph graph(n);
  NoiseParams noise = load_noise(noise_spec);
  PrepForm form = form_name == "cz" ? PrepForm::CZ : PrepForm::RXX;
  MeasurementPlan plan = greedy_clique_cover(n, nontrivial_stabilizers(graph));
  std::optional<ConfusionModel> spam = load_spam(spam_spec, n);

  ShotDataset data =
      simulate_dataset(plan, graph, form, noise, shots, TrajectoryRng(seed), workers, spam ? &*spam : nullptr);
  EstimationReport raw = estimate_expectations(plan, data);
  std::optional<EstimationReport> corrected;
  if (spam) corrected = spam_correct(plan, data, *spam);

  ordered_json plan_json;
  plan_json["n"] = n;
  plan_json["cliques"] = ordered_json::array();
  for (const auto& cl : plan.cliques) {
    ordered_json members = ordered_json::array();
    for (const auto& m : cl.members) members.push_back({{"input", m.input.str()}, {"stabilizer", m.op.str()}});
    plan_json["cliques"].push_back({{"basis", cl.bases}, {"members", members}});
  }
  write_file(fs::path(out_dir) / "plan.json", plan_json.dump(2) + "\n");
  write_file(fs::path(out_dir) / "dataset.json", data.to_json(plan) + "\n");
  ordered_json rep = report_to_json(plan, raw, corrected ? &*corrected : nullptr, shots, seed);
  write_file(fs::path(out_dir) / "report.json", rep.dump(2) + "\n");
  write_file(fs::path(out_dir) / "report.csv", report_to_csv(raw, corrected ? &*corrected : nullptr));

  FidelityWitness fw = fidelity_and_witness(raw);
  std::printf("tomography: %zu settings x %d shots, F = %.4f +- %.4f, tr(rho W) = %.4f +- %.4f%s\n",
              plan.num_settings(), shots, fw.fidelity, fw.fidelity_stderr, fw.witness, fw.witness_stderr,
              fw.entanglement_detected ? "  [genuine multipartite entanglement detected]" : "");
  if (corrected) {
    FidelityWitness fc = fidelity_and_witness(*corrected);
    std::printf("SPAM-corrected: F = %.4f +- %.4f, tr(rho W) = %.4f +- %.4f\n", fc.fidelity,
                fc.fidelity_stderr, fc.witness, fc.witness_stderr);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

StabilizerValues load_reference(const std::string& path, const std::string& column) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return reference_values(load_reference_csv(path), column == "corrected");
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  StabilizerValues v;
  v.n = j.at("n").get<int>();
  for (const auto& row : j.at("stabilizers")) {
    const char* key = (column == "corrected" && row.contains("spam_corrected")) ? "spam_corrected" : "raw";
    v.values[BinaryVector::from_string(row.at("input").get<std::string>()).bits()] =
        row.at(key).at("value").get<double>();
  }
  v.require_complete();
  return v;
}

FitGrid default_grid() {
  // Recorded default for Fig.-4-style scans: 0-2.8% / 0-6% / 0-6% at
  // pitches 0.4% / 0.5% / 0.5% (the grid the reference device scan used is
  // not published).
  FitGrid g;
  for (int i = 0; i <= 7; ++i) g.p1d_axis.push_back(0.004 * i);
  for (int i = 0; i <= 12; ++i) g.p2xx_axis.push_back(0.005 * i);
  for (int i = 0; i <= 12; ++i) g.p2d_axis.push_back(0.005 * i);
  return g;
}

int run_fit(const std::string& reference_path, const std::string& column, const std::string& grid_path,
            uint64_t seed, const std::string& out_dir, int workers) {
  StabilizerValues reference = load_reference(reference_path, column);
  FitGrid grid = grid_path.empty() ? default_grid() : FitGrid::from_json(read_file(grid_path));
  FitResult res = grid_fit(reference, grid, seed, workers);
  write_file(fs::path(out_dir) / "fit.json", res.to_json() + "\n");
  write_file(fs::path(out_dir) / "fit.csv", res.to_csv());
  const FitPoint& best = res.points[res.best_index];
  std::printf("best fit: (p1d, p2XX, p2d) = (%.3g, %.3g, %.3g), dF = %.4f, dS = %.4f%s\n", best.p1d,
              best.p2xx, best.p2d, best.delta_f, best.delta_s,
              res.level_set_empty ? "  [warning: empty dF level set, global dF minimizer]" : "");
  std::printf("two-qubit gate infidelity p2XX + (4/5) p2d = %.4f\n", two_qubit_infidelity(res.best));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report

// Derived Table-I-style counts: settings played and distinct nontrivial
// stabilizers across the game's win conditions.
std::pair<size_t, size_t> game_counts(const GameInstance& game) {
  if (game.kind == GameKind::CBF) {
    size_t nontrivial = 0;
    for (const auto& x : game.inputs.elements()) nontrivial += x.any() || neighbor_parity(x).any();
    return {nontrivial, nontrivial};
  }
  StabilizerGroup group = StabilizerGroup::cycle(CycleGraph(game.num_qubits()));
  std::set<std::string> distinct;
  for (const auto& x : game.inputs.elements())
    for (const auto& [p, sign] : stabilizer_submeasurements(group, x))
      if (!p.is_identity()) distinct.insert(p.str());
  return {distinct.size(), game.inputs.size()};
}

int run_report(const std::string& in_dir, const std::string& out_dir) {
  // Merge whatever artifacts exist into a Table-style summary plus plot
  // data; an empty directory produces header-only files.
  ordered_json summary = ordered_json::array();
  std::string csv = "game,stabilizers,settings,depth0_bound,depth1_bound,win_rate,win_stderr\n";

  std::map<std::string, ordered_json> bounds_by_game;
  std::optional<ordered_json> tomo, success, fit;
  if (fs::exists(in_dir)) {
    for (const auto& entry : fs::directory_iterator(in_dir)) {
      std::string name = entry.path().filename().string();
      if (name.rfind("bounds_", 0) == 0 && entry.path().extension() == ".json") {
        ordered_json j = ordered_json::parse(read_file(entry.path().string()));
        for (const auto& row : j) bounds_by_game[row.at("game").get<std::string>()].push_back(row);
      } else if (name == "report.json") {
        tomo = ordered_json::parse(read_file(entry.path().string()));
      } else if (name == "success.json") {
        success = ordered_json::parse(read_file(entry.path().string()));
      } else if (name == "fit.json") {
        fit = ordered_json::parse(read_file(entry.path().string()));
      }
    }
  }

  auto bound_str = [](const ordered_json& rows, int depth) -> std::string {
    for (const auto& r : rows)
      if (r.at("depth").get<int>() == depth)
        return std::to_string(r.at("beta").at("num").get<int64_t>()) + "/" +
               std::to_string(r.at("beta").at("den").get<int64_t>());
    return "";
  };

  for (const auto& [game, rows] : bounds_by_game) {
    ordered_json row;
    row["game"] = game;
    std::string stabs, settings;
    if (rows.size() && rows.front().contains("kind")) {
      GameInstance g = make_game(rows.front().at("kind"), rows.front().at("inputs"),
                                 rows.front().at("n").get<int>());
      auto [ns, nset] = game_counts(g);
      stabs = std::to_string(ns);
      settings = std::to_string(nset);
      row["stabilizers"] = ns;
      row["settings"] = nset;
    }
    row["depth0_bound"] = bound_str(rows, 0);
    row["depth1_bound"] = bound_str(rows, 1);
    std::string win, werr;
    if (success && success->at("game") == game) {
      win = format_double(success->at("win_rate").get<double>());
      werr = format_double(success->at("stderr").get<double>());
      row["win_rate"] = success->at("win_rate");
      row["win_stderr"] = success->at("stderr");
    }
    summary.push_back(row);
    csv += game + "," + stabs + "," + settings + "," + bound_str(rows, 0) + "," + bound_str(rows, 1) + "," +
           win + "," + werr + "\n";
  }

  ordered_json merged;
  merged["games"] = summary;
  if (tomo) {
    merged["tomography"] = {{"settings", tomo->at("settings")},
                            {"shots_per_setting", tomo->at("shots_per_setting")},
                            {"fidelity", tomo->at("fidelity")},
                            {"witness", tomo->at("witness")},
                            {"entanglement_detected", tomo->at("entanglement_detected")}};
  }
  write_file(fs::path(out_dir) / "summary.json", merged.dump(2) + "\n");
  write_file(fs::path(out_dir) / "summary.csv", csv);

  // Plot data: stabilizer bar-chart rows and fit contours.
  std::string bars = "input,value,stderr\n";
  if (tomo)
    for (const auto& row : tomo->at("stabilizers"))
      bars += row.at("input").get<std::string>() + "," +
              format_double(row.at("raw").at("value").get<double>()) + "," +
              format_double(row.at("raw").at("stderr").get<double>()) + "\n";
  write_file(fs::path(out_dir) / "plot_stabilizers.csv", bars);

  std::string contours = "p1d,p2XX,p2d,delta_F,delta_S\n";
  if (fit)
    for (const auto& p : fit->at("points"))
      contours += format_double(p.at("p1d").get<double>()) + "," + format_double(p.at("p2XX").get<double>()) +
                  "," + format_double(p.at("p2d").get<double>()) + "," +
                  format_double(p.at("delta_F").get<double>()) + "," +
                  format_double(p.at("delta_S").get<double>()) + "\n";
  write_file(fs::path(out_dir) / "plot_fit.csv", contours);

  std::printf("report: %zu game rows, %s tomography, %s fit data\n", summary.size(), tomo ? "with" : "no",
              fit ? "with" : "no");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-type nonlocal games on cyclic cluster states: simulation, bounds, tomography"};
  app.require_subcommand(1);

  std::string game = "cbf", inputs = "full", noise = "none", out_dir = ".", format = "json";
  std::string spam = "none", form = "rxx", reference, column = "corrected", grid_file, in_dir = ".";
  int n = 6, shots = 1000, depth = -1, workers = 0;
  uint64_t seed = 0;
  bool rounds = false, timing = false;

  auto* play = app.add_subcommand("play", "play a nonlocal game through the noisy simulator");
  play->add_option("--game", game, "cbf|ss")->required();
  play->add_option("--inputs", inputs, "full|mermin55|hlf8|hlf5|hlfn5")->required();
  play->add_option("--n", n, "cycle size");
  play->add_option("--shots", shots, "shots per input")->required();
  play->add_option("--seed", seed)->required();
  play->add_option("--noise", noise, "noise JSON file or 'none'");
  play->add_option("--spam", spam, "readout model: none | uniform:P01,P10 | JSON file (adds the corrected column)");
  play->add_option("--out", out_dir);
  play->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  play->add_option("--workers", workers);
  play->add_flag("--rounds", rounds, "write per-round records (rounds.jsonl)");

  auto* bounds = app.add_subcommand("bounds", "exact classical bounds and certificates");
  bounds->add_option("--game", game, "cbf|ss")->required();
  bounds->add_option("--inputs", inputs)->required();
  bounds->add_option("--n", n);
  bounds->add_option("--depth", depth, "0|1|D (default: both 0 and 1)");
  bounds->add_option("--out", out_dir);
  bounds->add_flag("--timing", timing, "include wall time in the JSON output");

  auto* tomo = app.add_subcommand("tomo", "simulate the stabilizer tomography pipeline");
  tomo->add_option("--n", n);
  tomo->add_option("--shots", shots, "shots per measurement setting")->required();
  tomo->add_option("--seed", seed)->required();
  tomo->add_option("--noise", noise);
  tomo->add_option("--spam", spam, "readout model: none | uniform:P01,P10 | JSON file");
  tomo->add_option("--form", form)->check(CLI::IsMember({"rxx", "cz"}));
  tomo->add_option("--out", out_dir);
  tomo->add_option("--workers", workers);

  auto* fit = app.add_subcommand("fit", "grid-search noise characterization");
  fit->add_option("--reference", reference, "tomo report.json or reference CSV")->required();
  fit->add_option("--column", column)->check(CLI::IsMember({"raw", "corrected"}));
  fit->add_option("--grid", grid_file, "grid JSON (default: recorded Fig.4-style grid)");
  fit->add_option("--seed", seed)->required();
  fit->add_option("--out", out_dir);
  fit->add_option("--workers", workers);

  auto* report = app.add_subcommand("report", "merge artifacts into Table-style summaries and plot data");
  report->add_option("--in", in_dir, "directory with prior outputs");
  report->add_option("--out", out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (play->parsed())
      return run_play(game, inputs, n, shots, seed, noise, spam, out_dir, format, workers, rounds);
    if (bounds->parsed()) return run_bounds(game, inputs, n, depth, out_dir, timing);
    if (tomo->parsed()) return run_tomo(n, shots, seed, noise, spam, form, out_dir, workers);
    if (fit->parsed()) return run_fit(reference, column, grid_file, seed, out_dir, workers);
    if (report->parsed()) return run_report(in_dir, out_dir);
  } catch (const SearchSpaceError& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kExitRefusal;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitConfig;
}
