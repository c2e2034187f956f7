// Copyright 2026 The rsrp-oracle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rsrp/predict.hpp"
#include "rsrp/shadowing.hpp"

namespace rsrp {

/// One held-out measurement scored against its own serving cell's fit.
struct EvalRecord {
  MeasurementId point_id = 0;
  CellId cell_id;
  double actual_rsrp_dbm = 0.0;
  double predicted_rsrp_dbm = 0.0;
  /// predicted - actual
  double error_db = 0.0;
  std::optional<double> local_sigma_db;
};

struct EvalOptions {
  /// Attach the shadowing sigma of each point's disc to its record.
  bool with_local_sigma = false;
  /// Pairing used for local sigmas and MLE weights.
  DiffOptions diff_options;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct LooResult {
  std::vector<EvalRecord> records;  // ordered by point id
  std::size_t measured_count = 0;
  std::size_t unpredictable_count = 0;

  double coverage() const noexcept {
    return measured_count == 0 ? 0.0
                               : static_cast<double>(records.size()) /
                                     static_cast<double>(measured_count);
  }
};

/// For each measured point: drop it by id, predict its own serving cell at
/// its position, and score. Points whose cell does not survive the filters
/// count against coverage only.
LooResult leave_one_out(const DriveTestDataset& dataset, const SiteIndex& sites,
                        const PipelineConfig& config, const EvalOptions& options = {});

/// Five-number summary plus mean. Quartiles interpolate linearly between
/// order statistics: q(p) = x[floor(h)] + (h - floor(h)) (x[floor(h)+1] - x[floor(h)]),
/// h = (n - 1) p.
struct BoxStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t n = 0;
};

/// Throws EmptyInput.
BoxStats box_stats(std::span<const double> values);

std::vector<double> signed_errors(std::span<const EvalRecord> records);
std::vector<double> abs_errors(std::span<const EvalRecord> records);

struct SweepAxes {
  std::vector<double> radii_m{50.0, 100.0, 200.0, 400.0};
  std::vector<std::size_t> min_points{8, 10, 12, 14};
  std::vector<double> min_dists_m{10.0, 15.0, 20.0, 25.0};
};

struct SweepRow {
  double radius_m = 0.0;
  std::size_t min_points = 0;
  double min_dist_m = 0.0;
  std::size_t n_records = 0;
  std::size_t measured_count = 0;
  double coverage = 0.0;
  /// Present when the combination produced at least one record.
  std::optional<BoxStats> abs_error;
  std::optional<BoxStats> signed_error;
};

struct SweepResult {
  SweepAxes axes;
  /// Radius-major, then min_points, then min_dist.
  std::vector<SweepRow> rows;
};

/// Full Cartesian product of the axes, each cell a leave_one_out run.
/// Throws InvalidConfig on an empty axis.
SweepResult sweep(const DriveTestDataset& dataset, const SiteIndex& sites, const SweepAxes& axes,
                  const FitBounds& bounds, FitKind fit_kind, const EvalOptions& options = {});

struct ScatterPoint {
  MeasurementId point_id = 0;
  double sigma_db = 0.0;
  double abs_error_db = 0.0;
};

struct ErrorSigmaScatter {
  std::vector<ScatterPoint> points;
  double correlation = 0.0;
  /// False when either coordinate has zero variance; correlation is then 0.
  bool correlation_defined = false;
};

/// Pairs (local sigma, |error|) for records carrying a local sigma, with
/// their Pearson correlation. Throws TooFewPoints below 3 pairs.
ErrorSigmaScatter error_vs_sigma(std::span<const EvalRecord> records);

/// Pearson correlation; nullopt when a coordinate has zero variance.
std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace rsrp
