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

#ifndef CYCLEBELL_NOISE_FIT_HPP
#define CYCLEBELL_NOISE_FIT_HPP

#include "cyclebell/tomography.hpp"

namespace cyclebell {

/// A complete set of nontrivial stabilizer expectation values, keyed by the
/// generator-product input x. The minimal interface both fit metrics need.
struct StabilizerValues {
  int n = 0;
  std::map<uint64_t, double> values;  // input bits -> <S_x>

  static StabilizerValues from_report(const EstimationReport& report);
  void require_complete() const;
};

/// Fixture row matching the reference CSV (Table III layout).
struct ReferenceRow {
  BinaryVector input;
  std::string stabilizer;
  double raw_value, raw_stderr;
  double corrected_value, corrected_stderr;
  int setting;
};

std::vector<ReferenceRow> load_reference_csv(const std::string& path);
StabilizerValues reference_values(const std::vector<ReferenceRow>& rows, bool spam_corrected);

/// Delta F = (1/2^n) |sum_S (<S>_a - <S>_b)|: the fidelity difference
/// (identity terms cancel).
double delta_fidelity(const StabilizerValues& a, const StabilizerValues& b);

/// Delta S = (1/2^n) sum_S |<S>_a - <S>_b|.
double delta_stabilizers(const StabilizerValues& a, const StabilizerValues& b);

/// Reported two-qubit gate infidelity: p2XX + (4/5) p2d.
inline double two_qubit_infidelity(const NoiseParams& np) { return np.p2xx + 0.8 * np.p2d; }

struct FitGrid {
  std::vector<double> p1d_axis, p2xx_axis, p2d_axis;
  int shots_per_setting = 10000;  // paper floor: sampling errors negligible
  NoiseParams base;               // fixed channels: T2, times, pc, crosstalk
  PrepForm form = PrepForm::RXX;
  double level_tolerance = 0.005;  // |Delta F| band standing in for the Fig. 4 surface

  void validate() const;
  std::string to_json() const;
  static FitGrid from_json(const std::string& text);
};

struct FitPoint {
  double p1d, p2xx, p2d;
  double delta_f, delta_s;
};

struct FitResult {
  std::vector<FitPoint> points;      // lexicographic in (p1d, p2xx, p2d)
  std::vector<size_t> level_set;     // indices with |Delta F| <= tolerance
  size_t best_index = 0;
  bool level_set_empty = false;      // fell back to the global Delta F minimizer
  NoiseParams best;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Two-stage grid characterization: simulate the full tomography pipeline at
/// every grid point, keep the |Delta F| <= tol level set, and minimize
/// Delta S on it (ties break to the smallest p1d, then p2XX, then p2d).
FitResult grid_fit(const StabilizerValues& reference, const FitGrid& grid, uint64_t seed, int workers = 0);

}  // namespace cyclebell

#endif
