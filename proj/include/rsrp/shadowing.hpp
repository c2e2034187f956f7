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
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rsrp/data.hpp"

namespace rsrp {

enum class PairingMode {
  /// Every admissible adjacent pair (i, i+1); consecutive samples share an endpoint.
  Overlapping,
  /// Disjoint pairs taken greedily along the track: (1,2), (3,4), ...
  NonOverlapping,
};

std::string_view to_string(PairingMode mode) noexcept;

struct DiffOptions {
  /// Largest displacement between the two samples of a pair.
  double l_max_m = 15.0;
  PairingMode pairing = PairingMode::Overlapping;

  void validate() const;
};

/// P_{i+1} - P_i for two temporally adjacent same-cell measurements.
struct DiffSample {
  double value_db = 0.0;
  MeasurementId first_id = 0;
  MeasurementId second_id = 0;
  double displacement_m = 0.0;
  GeoPoint first_pos;
  GeoPoint second_pos;
};

struct ConfidenceInterval {
  double low_db = 0.0;
  double high_db = 0.0;
};

struct ShadowingEstimate {
  double sigma_db = 0.0;
  /// Root mean square of the differences, the std of P^d with known zero mean.
  double sigma_pd_db = 0.0;
  std::size_t n_pairs = 0;
  double ci_low_db = 0.0;
  double ci_high_db = 0.0;
  double confidence = 0.0;
};

/// Walks the time-ordered dataset and emits one sample for each adjacent
/// pair that (a) both carry RSRP, (b) share the serving cell and (c) lie
/// within l_max_m of each other. Path loss cancels in the difference when
/// the displacement is small against the distance to the antenna, so no
/// site locations are needed.
std::vector<DiffSample> consecutive_differences(const DriveTestDataset& dataset,
                                                const DiffOptions& options = {});

/// Samples whose two endpoints both lie strictly inside the disc.
std::vector<DiffSample> diffs_within_disc(std::span<const DiffSample> diffs, const GeoPoint& center,
                                          double radius_m);

/// sqrt(sum d^2 / N). Throws EmptyDiffs.
double diff_rms(std::span<const double> values);
double diff_rms(std::span<const DiffSample> diffs);

/// sigma = sqrt(sum d^2 / (2N)), i.e. diff_rms / sqrt(2). Throws EmptyDiffs.
double estimate_sigma(std::span<const double> values);
double estimate_sigma(std::span<const DiffSample> diffs);

/// Lower-tail quantile of the chi-square distribution.
double chi_square_quantile(double probability, double degrees_of_freedom);

/// 100(1-alpha)% interval for sigma:
///   ( sqrt((n-1) s^2 / (2b)), sqrt((n-1) s^2 / (2a)) )
/// with s = sigma_pd_db, a and b the alpha/2 and 1-alpha/2 quantiles of
/// chi-square with n-1 degrees of freedom.
/// Throws InvalidAlpha, TooFewSamples (n < 2).
ConfidenceInterval sigma_confidence_interval(double sigma_pd_db, std::size_t n, double alpha);

/// Point estimate plus interval. Throws EmptyDiffs, TooFewSamples, InvalidAlpha.
ShadowingEstimate estimate_shadowing(std::span<const DiffSample> diffs, double alpha);

/// Shadowing sigma around each measured point, from the difference samples
/// falling inside the disc of radius_m centered on it. Points with no
/// sample in their disc have no entry.
class LocalSigmaField {
 public:
  LocalSigmaField() = default;
  LocalSigmaField(const DriveTestDataset& dataset, std::span<const DiffSample> diffs,
                  double radius_m);

  std::optional<double> at(MeasurementId id) const;
  /// Estimate over every sample, used where a point has no local value.
  std::optional<double> global() const noexcept { return global_; }
  double radius_m() const noexcept { return radius_m_; }
  std::size_t size() const noexcept { return local_.size(); }

 private:
  std::unordered_map<MeasurementId, double> local_;
  std::optional<double> global_;
  double radius_m_ = 0.0;
};

}  // namespace rsrp
