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
#include "rsrp/geo.hpp"

namespace rsrp {

/// Admission parameters for the neighborhood around a prediction target.
struct SelectionConfig {
  double radius_m = 50.0;
  std::size_t min_points_per_cell = 8;
  double min_dist_to_cell_m = 10.0;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Measured points strictly inside the disc of radius_m around target.
struct Neighborhood {
  GeoPoint target;
  double radius_m = 0.0;
  std::vector<Measurement> members;
};

struct GroupPoint {
  Measurement measurement;
  double dist_to_cell_m = 0.0;
};

/// Neighborhood members served by one cell, with their distance to its site.
struct CellGroup {
  CellId cell_id;
  std::vector<GroupPoint> points;

  std::size_t size() const noexcept { return points.size(); }
};

/// Members are kept in dataset order. `exclude` drops one measurement by id
/// (leave-one-out); co-located samples with other ids stay.
Neighborhood select_neighborhood(const GeoPoint& target, const DriveTestDataset& dataset,
                                 double radius_m,
                                 std::optional<MeasurementId> exclude = std::nullopt);

/// Partitions members by serving cell. Groups are ordered by cell id.
/// Throws UnknownCell.
std::vector<CellGroup> group_by_cell(const Neighborhood& nbhd, const SiteIndex& sites);

/// Drops points closer than min_dist_to_cell_m to their antenna, then drops
/// groups left with fewer than min_points_per_cell points.
std::vector<CellGroup> apply_filters(std::vector<CellGroup> groups, const SelectionConfig& config);

}  // namespace rsrp
