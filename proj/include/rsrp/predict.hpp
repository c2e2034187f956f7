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
#include <vector>

#include "rsrp/data.hpp"
#include "rsrp/pathloss.hpp"
#include "rsrp/selection.hpp"
#include "rsrp/shadowing.hpp"

namespace rsrp {

/// Floor applied to per-point sigmas before they become MLE weights.
inline constexpr double kMinWeightSigmaDb = 0.1;

struct PipelineConfig {
  SelectionConfig selection;
  FitBounds bounds;
  FitKind fit_kind = FitKind::Mse;

  void validate() const {
    selection.validate();
    bounds.validate();
  }
};

struct CellPrediction {
  CellId cell_id;
  PathLossParams params;
  double predicted_rsrp_dbm = 0.0;
  std::size_t n_points = 0;
  double distance_to_site_m = 0.0;
  /// The target sat within the 1 m reference distance of the site and was
  /// evaluated at 1 m.
  bool distance_clamped = false;
};

struct PredictionResult {
  GeoPoint target;
  std::vector<CellPrediction> per_cell;  // ordered by cell id
  std::optional<CellId> headline_cell;
  std::optional<double> headline_rsrp_dbm;

  bool empty() const noexcept { return per_cell.empty(); }
};

/// Extra inputs for the MLE fit and leave-one-out runs.
struct PredictOptions {
  /// Per-point sigmas for FitKind::Mle. Points without a local value use
  /// the field's global estimate; without a field the fit is uniform.
  const LocalSigmaField* noise = nullptr;
  /// Measurement left out of the neighborhood.
  std::optional<MeasurementId> exclude;
};

/// Neighborhood, grouping, filtering and a per-cell fit, evaluated at the
/// target's distance to each site. The headline is the strongest
/// predicted cell (ties: smallest cell id). Empty when no group survives.
/// Throws UnknownCell.
PredictionResult predict_at(const GeoPoint& target, const DriveTestDataset& dataset,
                            const SiteIndex& sites, const PipelineConfig& config,
                            const PredictOptions& options = {});

/// predict_at restricted to one cell's group; absent when the group does
/// not survive the filters. Throws UnknownCell.
std::optional<CellPrediction> predict_for_cell(const GeoPoint& target, const CellId& cell_id,
                                               const DriveTestDataset& dataset,
                                               const SiteIndex& sites,
                                               const PipelineConfig& config,
                                               const PredictOptions& options = {});

/// Fits one filtered group and evaluates it at the target.
CellPrediction fit_and_predict(const CellGroup& group, const CellSite& site,
                               const GeoPoint& target, const PipelineConfig& config,
                               const LocalSigmaField* noise);

}  // namespace rsrp
