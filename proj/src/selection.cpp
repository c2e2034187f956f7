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

#include "rsrp/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "rsrp/errors.hpp"

namespace rsrp {

void SelectionConfig::validate() const {
  if (!(radius_m > 0.0) || !std::isfinite(radius_m)) {
    throw InvalidConfig("radius_m must be positive, got " + std::to_string(radius_m));
  }
  if (min_points_per_cell < 2) {
    throw InvalidConfig("min_points_per_cell must be at least 2, got " +
                        std::to_string(min_points_per_cell));
  }
  if (!(min_dist_to_cell_m >= 0.0) || !std::isfinite(min_dist_to_cell_m)) {
    throw InvalidConfig("min_dist_to_cell_m must be non-negative, got " +
                        std::to_string(min_dist_to_cell_m));
  }
}

Neighborhood select_neighborhood(const GeoPoint& target, const DriveTestDataset& dataset,
                                 double radius_m, std::optional<MeasurementId> exclude) {
  if (!(radius_m > 0.0)) throw InvalidConfig("radius_m must be positive");
  Neighborhood nbhd{target, radius_m, {}};
  for (const auto& m : dataset.measurements) {
    if (!m.has_rsrp()) continue;
    if (exclude && m.id == *exclude) continue;
    if (great_circle_distance(m.pos, target) < radius_m) nbhd.members.push_back(m);
  }
  return nbhd;
}

std::vector<CellGroup> group_by_cell(const Neighborhood& nbhd, const SiteIndex& sites) {
  std::map<CellId, CellGroup> by_cell;
  for (const auto& m : nbhd.members) {
    const auto& site = sites.at(m.serving_cell);
    auto& group = by_cell[m.serving_cell];
    group.cell_id = m.serving_cell;
    group.points.push_back(GroupPoint{m, great_circle_distance(m.pos, site.pos)});
  }
  std::vector<CellGroup> groups;
  groups.reserve(by_cell.size());
  for (auto& [id, group] : by_cell) groups.push_back(std::move(group));
  return groups;
}

std::vector<CellGroup> apply_filters(std::vector<CellGroup> groups, const SelectionConfig& config) {
  std::vector<CellGroup> kept;
  kept.reserve(groups.size());
  for (auto& group : groups) {
    std::erase_if(group.points, [&](const GroupPoint& p) {
      return p.dist_to_cell_m < config.min_dist_to_cell_m;
    });
    if (group.points.size() >= config.min_points_per_cell) kept.push_back(std::move(group));
  }
  return kept;
}

}  // namespace rsrp
