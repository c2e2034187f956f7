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

#include "rsrp/geo.hpp"

#include <algorithm>
#include <cmath>

namespace rsrp {

double great_circle_distance(const GeoPoint& a, const GeoPoint& b) noexcept {
  constexpr double c = EarthModel::deg_to_rad;
  const double lat_a = c * a.lat_deg;
  const double lat_b = c * b.lat_deg;
  // |dlat| and |dlon| keep the expression bitwise symmetric.
  const double dlat = c * std::abs(a.lat_deg - b.lat_deg);
  const double dlon = c * std::abs(a.lon_deg - b.lon_deg);

  // sin a sin b + cos a cos b cos dlon, written as
  // cos dlat - cos a cos b (1 - cos dlon) so identical points give exactly 1.
  const double half = std::sin(0.5 * dlon);
  const double cos_angle = std::clamp(
      std::cos(dlat) - std::cos(lat_a) * std::cos(lat_b) * 2.0 * half * half, -1.0, 1.0);
  return EarthModel::radius_m * std::acos(cos_angle);
}

}  // namespace rsrp
