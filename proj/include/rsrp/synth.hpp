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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "rsrp/data.hpp"
#include "rsrp/keyvalue.hpp"

namespace rsrp {

/// Seeded standard-normal source.
///
/// Stream definition, so other implementations can reproduce the
/// statistics: std::mt19937_64 seeded with `seed`; a uniform is
/// u = ((x >> 11) + 1) * 2^-53, which lies in (0, 1]; each normal variate
/// consumes two uniforms u1, u2 and is sqrt(-2 ln u1) * cos(2 pi u2)
/// (Box-Muller, cosine branch only).
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept;
  double standard_normal() noexcept;
  double normal(double sigma) noexcept { return sigma * standard_normal(); }

 private:
  std::mt19937_64 engine_;
};

struct ZoneSplit {
  enum class Axis { Lat, Lon };
  Axis axis = Axis::Lon;
  /// Points with coordinate >= threshold are in zone B.
  double threshold_deg = 0.0;

  bool in_zone_b(const GeoPoint& p) const noexcept {
    return (axis == Axis::Lat ? p.lat_deg : p.lon_deg) >= threshold_deg;
  }
};

struct ChannelParams {
  double p0_dbm = -40.0;
  double beta = 3.5;
};

struct SynthCell {
  CellId id;
  GeoPoint pos;
  ChannelParams channel;
  /// Channel inside zone B; zone A params apply when absent.
  std::optional<ChannelParams> zone_b_channel;
};

struct SynthConfig {
  std::vector<SynthCell> cells;
  /// Polyline walked at constant speed; samples are spaced by arc length.
  std::vector<GeoPoint> route;
  double speed_kmh = 20.0;
  double sample_interval_s = 1.0;
  double sigma_db = 0.0;
  std::optional<double> zone_b_sigma_db;
  std::optional<ZoneSplit> zone_split;
  std::uint64_t seed = 1;
  std::int64_t start_timestamp_ms = 0;
  /// Probability that a sample is logged without RSRP.
  double missing_rsrp_prob = 0.0;

  /// Throws InvalidConfig.
  void validate() const;
  double spacing_m() const noexcept { return speed_kmh / 3.6 * sample_interval_s; }
};

struct GroundTruthRow {
  MeasurementId point_id = 0;
  double true_mean_dbm = 0.0;
  double noise_db = 0.0;
  double true_dist_m = 0.0;
  CellId serving_cell;
};

struct SynthScene {
  DriveTestDataset dataset;
  std::vector<CellSite> sites;
  std::vector<GroundTruthRow> truth;  // one row per measurement, same order
};

/// Walks the route, serving each sample from the cell with the strongest
/// mean power, and draws RSRP = mean + N(0, sigma of the sample's zone).
/// Per sample the stream consumes one normal variate, then one uniform
/// when missing_rsrp_prob > 0. Values outside [-150, 0] dBm are logged
/// without RSRP. Throws InvalidConfig, RouteTooShort.
SynthScene generate(const SynthConfig& config);

/// Mean received power of one cell at a position.
double true_mean_rsrp(const SynthCell& cell, const GeoPoint& pos,
                      const std::optional<ZoneSplit>& split);

/// Header `point_id,true_mean_dbm,noise_db,true_dist_m,serving_cell`.
void write_ground_truth(std::ostream& out, const std::vector<GroundTruthRow>& rows);

/// Reads a simulation config:
///
///   seed = 7
///   speed_kmh = 20
///   sample_interval_s = 1
///   sigma_db = 4
///   start_timestamp_ms = 0
///   missing_rsrp_prob = 0
///   route = 35.700 51.400; 35.700 51.410; 35.705 51.410
///   cell = C1 35.702 51.405 -40 3.5          (id lat lon p0 beta; repeatable)
///   zone_split = lon 51.405                  (optional, axis lat|lon)
///   zone_b_sigma_db = 8
///   zone_b_cell = C1 -30 3.8                 (id p0 beta in zone B)
///
/// Throws InvalidConfig.
SynthConfig synth_config_from(const KeyValueFile& kv);

}  // namespace rsrp
