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

#include <numbers>

namespace rsrp {

/// WGS84 position in decimal degrees.
struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;

  bool valid() const noexcept {
    return lat_deg >= -90.0 && lat_deg <= 90.0 && lon_deg >= -180.0 && lon_deg <= 180.0;
  }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Spherical earth used by every distance computation in the library.
struct EarthModel {
  static constexpr double radius_m = 6371000.0;
  static constexpr double deg_to_rad = std::numbers::pi / 180.0;
};

/// Great-circle distance in meters from the spherical law of cosines:
///
///   d = R_e * acos( sin(c*lat_a) sin(c*lat_b) + cos(c*lat_a) cos(c*lat_b) cos(c*(lon_a - lon_b)) )
///
/// with c the degrees-to-radians factor. The acos argument is clamped to
/// [-1, 1], so near-coincident points return 0 instead of NaN. Exactly
/// symmetric in its arguments.
double great_circle_distance(const GeoPoint& a, const GeoPoint& b) noexcept;

}  // namespace rsrp
