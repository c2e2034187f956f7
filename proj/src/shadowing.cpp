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

#include "rsrp/shadowing.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rsrp/errors.hpp"
#include "rsrp/geo.hpp"

namespace rsrp {

namespace {

// Degrees of latitude per meter, for a cheap bounding-box prefilter.
constexpr double kDegPerMeter = 1.0 / (EarthModel::radius_m * EarthModel::deg_to_rad);

bool admissible(const Measurement& a, const Measurement& b, double l_max_m, double& displacement) {
  if (!a.has_rsrp() || !b.has_rsrp() || a.serving_cell != b.serving_cell) return false;
  displacement = great_circle_distance(a.pos, b.pos);
  return displacement <= l_max_m;
}

}  // namespace

std::string_view to_string(PairingMode mode) noexcept {
  return mode == PairingMode::Overlapping ? "overlapping" : "non-overlapping";
}

void DiffOptions::validate() const {
  if (!(l_max_m > 0.0) || !std::isfinite(l_max_m)) {
    throw InvalidConfig("l_max_m must be positive, got " + std::to_string(l_max_m));
  }
}

std::vector<DiffSample> consecutive_differences(const DriveTestDataset& dataset,
                                                const DiffOptions& options) {
  options.validate();
  std::vector<DiffSample> diffs;
  const auto& ms = dataset.measurements;
  for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
    double displacement = 0.0;
    if (!admissible(ms[i], ms[i + 1], options.l_max_m, displacement)) continue;
    diffs.push_back(DiffSample{*ms[i + 1].rsrp_dbm - *ms[i].rsrp_dbm, ms[i].id, ms[i + 1].id,
                               displacement, ms[i].pos, ms[i + 1].pos});
    if (options.pairing == PairingMode::NonOverlapping) ++i;
  }
  return diffs;
}

std::vector<DiffSample> diffs_within_disc(std::span<const DiffSample> diffs, const GeoPoint& center,
                                          double radius_m) {
  std::vector<DiffSample> out;
  for (const auto& d : diffs) {
    if (great_circle_distance(d.first_pos, center) < radius_m &&
        great_circle_distance(d.second_pos, center) < radius_m) {
      out.push_back(d);
    }
  }
  return out;
}

double diff_rms(std::span<const double> values) {
  if (values.empty()) throw EmptyDiffs();
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return std::sqrt(acc / static_cast<double>(values.size()));
}

double diff_rms(std::span<const DiffSample> diffs) {
  if (diffs.empty()) throw EmptyDiffs();
  double acc = 0.0;
  for (const auto& d : diffs) acc += d.value_db * d.value_db;
  return std::sqrt(acc / static_cast<double>(diffs.size()));
}

double estimate_sigma(std::span<const double> values) {
  return diff_rms(values) / std::numbers::sqrt2;
}

double estimate_sigma(std::span<const DiffSample> diffs) {
  return diff_rms(diffs) / std::numbers::sqrt2;
}

double chi_square_quantile(double probability, double degrees_of_freedom) {
  const boost::math::chi_squared_distribution<double> dist(degrees_of_freedom);
  return boost::math::quantile(dist, probability);
}

ConfidenceInterval sigma_confidence_interval(double sigma_pd_db, std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidAlpha("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (n < 2) throw TooFewSamples("confidence interval needs at least 2 samples");
  const double dof = static_cast<double>(n - 1);
  const double a = chi_square_quantile(alpha / 2.0, dof);
  const double b = chi_square_quantile(1.0 - alpha / 2.0, dof);
  const double scaled = dof * sigma_pd_db * sigma_pd_db / 2.0;
  return ConfidenceInterval{std::sqrt(scaled / b), std::sqrt(scaled / a)};
}

ShadowingEstimate estimate_shadowing(std::span<const DiffSample> diffs, double alpha) {
  const double sigma_pd = diff_rms(diffs);
  const auto ci = sigma_confidence_interval(sigma_pd, diffs.size(), alpha);
  return ShadowingEstimate{sigma_pd / std::numbers::sqrt2, sigma_pd, diffs.size(), ci.low_db,
                           ci.high_db, 1.0 - alpha};
}

LocalSigmaField::LocalSigmaField(const DriveTestDataset& dataset, std::span<const DiffSample> diffs,
                                 double radius_m)
    : radius_m_(radius_m) {
  if (!(radius_m > 0.0)) throw InvalidConfig("radius_m must be positive");
  if (!diffs.empty()) global_ = estimate_sigma(diffs);

  const double dlat = radius_m * kDegPerMeter;
  for (const auto& m : dataset.measurements) {
    if (!m.has_rsrp()) continue;
    // Loose window: twice the longitude span at the most poleward latitude
    // the disc can reach; the exact distance test follows.
    const double lat_edge = std::min(90.0, std::abs(m.pos.lat_deg) + dlat);
    const double coslat = std::cos(lat_edge * EarthModel::deg_to_rad);
    const double dlon = coslat > 1e-6 ? 2.0 * dlat / coslat : 360.0;
    double acc = 0.0;
    std::size_t count = 0;
    for (const auto& d : diffs) {
      const auto near_box = [&](const GeoPoint& p) {
        const double raw = std::abs(p.lon_deg - m.pos.lon_deg);
        return std::abs(p.lat_deg - m.pos.lat_deg) <= dlat &&
               std::min(raw, 360.0 - raw) <= dlon;
      };
      if (!near_box(d.first_pos) || !near_box(d.second_pos)) continue;
      if (great_circle_distance(d.first_pos, m.pos) < radius_m &&
          great_circle_distance(d.second_pos, m.pos) < radius_m) {
        acc += d.value_db * d.value_db;
        ++count;
      }
    }
    if (count > 0) {
      local_.emplace(m.id, std::sqrt(acc / static_cast<double>(count)) / std::numbers::sqrt2);
    }
  }
}

std::optional<double> LocalSigmaField::at(MeasurementId id) const {
  const auto it = local_.find(id);
  if (it == local_.end()) return std::nullopt;
  return it->second;
}

}  // namespace rsrp
