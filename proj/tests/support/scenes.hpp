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

// Synthetic scenes shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "rsrp/synth.hpp"

namespace rsrp::test {

inline const GeoPoint kOrigin{35.70, 51.40};

// Local east/north offset in meters, flat-earth approximation.
inline GeoPoint offset_m(const GeoPoint& origin, double east_m, double north_m) {
  constexpr double r = 6371000.0;
  const double deg = 180.0 / std::numbers::pi;
  return {origin.lat_deg + north_m / r * deg,
          origin.lon_deg + east_m / (r * std::cos(origin.lat_deg / deg)) * deg};
}

// East-west streets from x0 to x1, one every `spacing` meters between y0
// and y1, joined at alternating ends.
inline std::vector<GeoPoint> lawnmower(double x0, double x1, double y0, double y1, double spacing) {
  std::vector<GeoPoint> route;
  bool east = true;
  for (double y = y0; y <= y1 + 1e-9; y += spacing) {
    route.push_back(offset_m(kOrigin, east ? x0 : x1, y));
    route.push_back(offset_m(kOrigin, east ? x1 : x0, y));
    east = !east;
  }
  return route;
}

inline SynthCell cell_at_origin(double p0 = -40.0, double beta = 3.5) {
  return SynthCell{"C1", kOrigin, ChannelParams{p0, beta}, std::nullopt};
}

// One cell, streets 200..800 m east, -300..300 m north, 60 m apart.
inline SynthConfig homogeneous_scene(std::uint64_t seed, double sigma_db) {
  SynthConfig cfg;
  cfg.cells = {cell_at_origin()};
  cfg.route = lawnmower(200.0, 800.0, -300.0, 300.0, 60.0);
  cfg.speed_kmh = 20.0;
  cfg.sample_interval_s = 1.0;
  cfg.sigma_db = sigma_db;
  cfg.seed = seed;
  return cfg;
}

// Straight street giving exactly `n` samples at 20 km/h / 1 s.
inline SynthConfig straight_scene(std::size_t n, std::uint64_t seed, double sigma_db) {
  SynthConfig cfg;
  cfg.cells = {cell_at_origin()};
  const double length = static_cast<double>(n - 1) * (20.0 / 3.6) + 1.0;
  cfg.route = {offset_m(kOrigin, 200.0, 100.0), offset_m(kOrigin, 200.0 + length, 100.0)};
  cfg.speed_kmh = 20.0;
  cfg.sample_interval_s = 1.0;
  cfg.sigma_db = sigma_db;
  cfg.seed = seed;
  return cfg;
}

inline double zone_split_lon() { return offset_m(kOrigin, 500.0, 0.0).lon_deg; }

// Path-loss parameters change across x = 500 m.
inline SynthConfig two_channel_zone_scene(std::uint64_t seed) {
  auto cfg = homogeneous_scene(seed, 4.0);
  cfg.cells[0].channel = ChannelParams{-40.0, 3.0};
  cfg.cells[0].zone_b_channel = ChannelParams{-30.0, 3.8};
  cfg.zone_split = ZoneSplit{ZoneSplit::Axis::Lon, zone_split_lon()};
  return cfg;
}

// Shadowing sigma 2 dB west of x = 500 m, 8 dB east of it.
inline SynthConfig two_sigma_zone_scene(std::uint64_t seed) {
  auto cfg = homogeneous_scene(seed, 2.0);
  cfg.zone_b_sigma_db = 8.0;
  cfg.zone_split = ZoneSplit{ZoneSplit::Axis::Lon, zone_split_lon()};
  return cfg;
}

}  // namespace rsrp::test
