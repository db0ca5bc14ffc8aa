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

#include "cyclebell/noise_fit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cyclebell {

StabilizerValues StabilizerValues::from_report(const EstimationReport& report) {
  StabilizerValues v;
  v.n = report.n;
  v.values = report.values_by_input();
  v.require_complete();
  return v;
}

void StabilizerValues::require_complete() const {
  uint64_t expected = (uint64_t{1} << n) - 1;
  if (values.size() != expected || values.count(0))
    throw std::invalid_argument("StabilizerValues: need exactly the 2^n - 1 nontrivial stabilizers");
  if (values.rbegin()->first > expected)
    throw std::invalid_argument("StabilizerValues: input label out of range");
}

std::vector<ReferenceRow> load_reference_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_reference_csv: cannot open " + path);
  std::vector<ReferenceRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) throw std::runtime_error("load_reference_csv: expected 7 columns");
    ReferenceRow row;
    row.input = BinaryVector::from_string(fields[0]);
    row.stabilizer = fields[1];
    row.raw_value = std::stod(fields[2]);
    row.raw_stderr = std::stod(fields[3]);
    row.corrected_value = std::stod(fields[4]);
    row.corrected_stderr = std::stod(fields[5]);
    row.setting = std::stoi(fields[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

StabilizerValues reference_values(const std::vector<ReferenceRow>& rows, bool spam_corrected) {
  StabilizerValues v;
  if (rows.empty()) throw std::invalid_argument("reference_values: no rows");
  v.n = rows.front().input.size();
  for (const auto& r : rows) v.values[r.input.bits()] = spam_corrected ? r.corrected_value : r.raw_value;
  v.require_complete();
  return v;
}

namespace {

void check_compatible(const StabilizerValues& a, const StabilizerValues& b) {
  a.require_complete();
  b.require_complete();
  if (a.n != b.n) throw std::invalid_argument("stabilizer value sets cover different systems");
}

}  // namespace

double delta_fidelity(const StabilizerValues& a, const StabilizerValues& b) {
  check_compatible(a, b);
  double sum = 0;
  for (const auto& [key, va] : a.values) sum += va - b.values.at(key);
  return std::abs(sum) / std::pow(2.0, a.n);
}

double delta_stabilizers(const StabilizerValues& a, const StabilizerValues& b) {
  check_compatible(a, b);
  double sum = 0;
  for (const auto& [key, va] : a.values) sum += std::abs(va - b.values.at(key));
  return sum / std::pow(2.0, a.n);
}

void FitGrid::validate() const {
  auto check_axis = [](const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw std::invalid_argument(std::string("FitGrid: empty axis ") + name);
    for (size_t i = 0; i + 1 < axis.size(); ++i)
      if (!(axis[i] < axis[i + 1]))
        throw std::invalid_argument(std::string("FitGrid: axis not strictly increasing: ") + name);
    for (double v : axis)
      if (v < 0 || v > 1) throw std::invalid_argument(std::string("FitGrid: rate out of range on ") + name);
  };
  check_axis(p1d_axis, "p1d");
  check_axis(p2xx_axis, "p2XX");
  check_axis(p2d_axis, "p2d");
  if (shots_per_setting < 10000)
    throw std::invalid_argument("FitGrid: need at least 10^4 shots per setting to keep sampling error negligible");
  if (!(level_tolerance > 0)) throw std::invalid_argument("FitGrid: level tolerance must be positive");
}

std::string FitGrid::to_json() const {
  nlohmann::ordered_json j;
  j["p1d_axis"] = p1d_axis;
  j["p2XX_axis"] = p2xx_axis;
  j["p2d_axis"] = p2d_axis;
  j["shots_per_setting"] = shots_per_setting;
  j["level_tolerance"] = level_tolerance;
  j["form"] = form == PrepForm::RXX ? "rxx" : "cz";
  j["base"] = nlohmann::ordered_json::parse(base.to_json());
  return j.dump(2);
}

FitGrid FitGrid::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FitGrid g;
  g.p1d_axis = j.at("p1d_axis").get<std::vector<double>>();
  g.p2xx_axis = j.at("p2XX_axis").get<std::vector<double>>();
  g.p2d_axis = j.at("p2d_axis").get<std::vector<double>>();
  g.shots_per_setting = j.value("shots_per_setting", 10000);
  g.level_tolerance = j.value("level_tolerance", 0.005);
  if (j.contains("form")) g.form = j["form"] == "cz" ? PrepForm::CZ : PrepForm::RXX;
  if (j.contains("base")) g.base = NoiseParams::from_json(j["base"].dump());
  g.validate();
  return g;
}

std::string FitResult::to_json() const {
  nlohmann::ordered_json j;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : points)
    j["points"].push_back({{"p1d", p.p1d},
                           {"p2XX", p.p2xx},
                           {"p2d", p.p2d},
                           {"delta_F", p.delta_f},
                           {"delta_S", p.delta_s}});
  j["level_set"] = level_set;
  j["level_set_empty"] = level_set_empty;
  j["best_index"] = best_index;
  j["best"] = {{"p1d", points[best_index].p1d},
               {"p2XX", points[best_index].p2xx},
               {"p2d", points[best_index].p2d},
               {"delta_F", points[best_index].delta_f},
               {"delta_S", points[best_index].delta_s}};
  return j.dump(2);
}

std::string FitResult::to_csv() const {
  std::string out = "p1d,p2XX,p2d,delta_F,delta_S\n";
  char buf[160];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g\n", p.p1d, p.p2xx, p.p2d, p.delta_f,
                  p.delta_s);
    out += buf;
  }
  return out;
}

FitResult grid_fit(const StabilizerValues& reference, const FitGrid& grid, uint64_t seed, int workers) {
  grid.validate();
  reference.require_complete();
  const int n = reference.n;
  CycleGraph graph(n);
  MeasurementPlan plan = greedy_clique_cover(n, nontrivial_stabilizers(graph));

  FitResult result;
  size_t index = 0;
  for (double p1d : grid.p1d_axis)
    for (double p2xx : grid.p2xx_axis)
      for (double p2d : grid.p2d_axis) {
        NoiseParams np = grid.base;
        np.p1d = p1d;
        np.p2xx = p2xx;
        np.p2d = p2d;
        // Stream family keyed by the grid index so results do not depend on
        // scheduling or on which subgrid is run.
        TrajectoryRng rng(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
        ShotDataset data = simulate_dataset(plan, graph, grid.form, np, grid.shots_per_setting, rng, workers);
        StabilizerValues sim = StabilizerValues::from_report(estimate_expectations(plan, data));
        result.points.push_back(
            {p1d, p2xx, p2d, delta_fidelity(reference, sim), delta_stabilizers(reference, sim)});
        ++index;
      }

  for (size_t i = 0; i < result.points.size(); ++i)
    if (result.points[i].delta_f <= grid.level_tolerance) result.level_set.push_back(i);

  if (result.level_set.empty()) {
    result.level_set_empty = true;
    size_t best = 0;
    for (size_t i = 1; i < result.points.size(); ++i)
      if (result.points[i].delta_f < result.points[best].delta_f) best = i;
    result.best_index = best;
  } else {
    size_t best = result.level_set.front();
    for (size_t i : result.level_set)
      if (result.points[i].delta_s < result.points[best].delta_s) best = i;
    // Lexicographic tie-break is the iteration order itself.
    result.best_index = best;
  }
  result.best = grid.base;
  result.best.p1d = result.points[result.best_index].p1d;
  result.best.p2xx = result.points[result.best_index].p2xx;
  result.best.p2d = result.points[result.best_index].p2d;
  return result;
}

}  // namespace cyclebell
