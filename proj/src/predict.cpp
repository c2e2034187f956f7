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

#include "rsrp/predict.hpp"

#include <algorithm>

#include "rsrp/errors.hpp"

namespace rsrp {

namespace {

NoiseWeights weights_for(const CellGroup& group, const LocalSigmaField* noise) {
  if (noise == nullptr) return NoiseWeights::uniform(1.0);
  const double fallback = noise->global().value_or(1.0);
  std::vector<double> sigmas;
  sigmas.reserve(group.size());
  for (const auto& p : group.points) {
    const double s = noise->at(p.measurement.id).value_or(fallback);
    sigmas.push_back(std::max(s, kMinWeightSigmaDb));
  }
  return NoiseWeights::per_point(std::move(sigmas));
}

}  // namespace

CellPrediction fit_and_predict(const CellGroup& group, const CellSite& site,
                               const GeoPoint& target, const PipelineConfig& config,
                               const LocalSigmaField* noise) {
  CellPrediction out;
  out.cell_id = group.cell_id;
  out.n_points = group.size();
  out.params = config.fit_kind == FitKind::Mle
                   ? fit_mle(group, weights_for(group, noise), config.bounds)
                   : fit_mse(group, config.bounds);
  out.distance_to_site_m = great_circle_distance(target, site.pos);
  out.distance_clamped = out.distance_to_site_m < kReferenceDistanceM;
  out.predicted_rsrp_dbm =
      predict_rsrp(out.params, std::max(out.distance_to_site_m, kReferenceDistanceM));
  return out;
}

PredictionResult predict_at(const GeoPoint& target, const DriveTestDataset& dataset,
                            const SiteIndex& sites, const PipelineConfig& config,
                            const PredictOptions& options) {
  const auto nbhd =
      select_neighborhood(target, dataset, config.selection.radius_m, options.exclude);
  const auto groups = apply_filters(group_by_cell(nbhd, sites), config.selection);

  PredictionResult result;
  result.target = target;
  for (const auto& group : groups) {
    result.per_cell.push_back(
        fit_and_predict(group, sites.at(group.cell_id), target, config, options.noise));
  }
  // Groups arrive sorted by id, so the first maximum is the tie winner.
  const auto best = std::max_element(
      result.per_cell.begin(), result.per_cell.end(),
      [](const CellPrediction& a, const CellPrediction& b) {
        return a.predicted_rsrp_dbm < b.predicted_rsrp_dbm;
      });
  if (best != result.per_cell.end()) {
    result.headline_cell = best->cell_id;
    result.headline_rsrp_dbm = best->predicted_rsrp_dbm;
  }
  return result;
}

std::optional<CellPrediction> predict_for_cell(const GeoPoint& target, const CellId& cell_id,
                                               const DriveTestDataset& dataset,
                                               const SiteIndex& sites,
                                               const PipelineConfig& config,
                                               const PredictOptions& options) {
  const auto& site = sites.at(cell_id);
  auto nbhd = select_neighborhood(target, dataset, config.selection.radius_m, options.exclude);
  std::erase_if(nbhd.members, [&](const Measurement& m) { return m.serving_cell != cell_id; });
  auto groups = apply_filters(group_by_cell(nbhd, sites), config.selection);
  if (groups.empty()) return std::nullopt;
  return fit_and_predict(groups.front(), site, target, config, options.noise);
}

}  // namespace rsrp
