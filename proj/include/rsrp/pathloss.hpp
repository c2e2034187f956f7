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
#include <span>
#include <string_view>
#include <vector>

#include "rsrp/selection.hpp"

namespace rsrp {

/// Reference distance d0 of the log-distance model.
inline constexpr double kReferenceDistanceM = 1.0;

enum class FitKind { Mse, Mle };

std::string_view to_string(FitKind kind) noexcept;
/// Accepts "mse" / "mle". Throws InvalidConfig.
FitKind parse_fit_kind(std::string_view text);

/// Box on (P0, beta).
struct FitBounds {
  double p0_low = -90.0;
  double p0_high = -10.0;
  double beta_low = 1.5;
  double beta_high = 6.5;

  /// Throws InvalidConfig.
  void validate() const;
  bool contains(double p0_dbm, double beta) const noexcept {
    return p0_dbm >= p0_low && p0_dbm <= p0_high && beta >= beta_low && beta <= beta_high;
  }
};

/// Log-distance model P(d) = p0_dbm - 10 * beta * log10(d / 1 m).
struct PathLossParams {
  double p0_dbm = 0.0;
  double beta = 0.0;
  FitKind fit_kind = FitKind::Mse;
  /// Sum of (weighted) squared residuals at the fitted point.
  double residual_rss = 0.0;
  /// All group points were equidistant from the antenna, so beta is not
  /// identifiable: beta was fixed to the middle of its bounds.
  bool degenerate = false;
};

/// Per-measurement shadowing standard deviations for the weighted fit.
class NoiseWeights {
 public:
  static NoiseWeights uniform(double sigma_db);
  static NoiseWeights per_point(std::vector<double> sigmas_db);

  bool is_uniform() const noexcept { return uniform_; }
  /// Number of per-point values; 0 for a uniform weight.
  std::size_t size() const noexcept { return uniform_ ? 0 : sigmas_.size(); }
  double sigma_at(std::size_t i) const noexcept { return uniform_ ? sigmas_.front() : sigmas_[i]; }

 private:
  NoiseWeights(std::vector<double> sigmas, bool uniform);
  std::vector<double> sigmas_;
  bool uniform_ = true;
};

/// 10 * log10(d), with d clamped up to the reference distance.
double log_distance_regressor(double distance_m) noexcept;

/// Throws DistanceBelowReference when distance_m < 1.
double predict_rsrp(const PathLossParams& params, double distance_m);

struct BoxLsSolution {
  double p0_dbm = 0.0;
  double beta = 0.0;
  double objective = 0.0;
  /// The unconstrained minimizer was feasible.
  bool interior = false;
};

/// sum_i w_i * (P_i - p0 + beta * x_i)^2
double box_ls_objective(std::span<const double> targets, std::span<const double> regressors,
                        std::span<const double> weights, double p0_dbm, double beta);

/// Exact minimizer of box_ls_objective over the FitBounds box.
///
/// The problem is a convex quadratic in two variables. The closed-form
/// weighted least-squares solution is returned when feasible. Otherwise the
/// minimum lies on the boundary: each edge is a 1-D quadratic minimized by
/// clamping its stationary point, and the four corners are checked as well.
/// The lowest-objective candidate wins; ties keep the first in the order
/// beta_low, beta_high, p0_low, p0_high edges, then corners.
///
/// `weights` are inverse variances 1 / sigma_i^2. Throws TooFewPoints (< 2
/// entries), WeightLengthMismatch, SingularNormalMatrix (regressor spread
/// below 1e-9).
BoxLsSolution solve_box_ls(std::span<const double> targets, std::span<const double> regressors,
                           std::span<const double> weights, const FitBounds& bounds);

/// Unweighted box-constrained fit. Throws TooFewPoints.
PathLossParams fit_mse(const CellGroup& group, const FitBounds& bounds);

/// Inverse-variance weighted fit. Throws TooFewPoints, WeightLengthMismatch.
PathLossParams fit_mle(const CellGroup& group, const NoiseWeights& weights,
                       const FitBounds& bounds);

struct GridOptimum {
  double p0_dbm = 0.0;
  double beta = 0.0;
  double objective = 0.0;
};

/// Exhaustive search over the lattice {low + k * step} inside the box.
/// Ties go to the lowest p0, then the lowest beta. Test oracle for
/// solve_box_ls; cost is O(lattice size * N).
GridOptimum grid_oracle(std::span<const double> targets, std::span<const double> regressors,
                        std::span<const double> weights, const FitBounds& bounds, double step);
GridOptimum grid_oracle(const CellGroup& group, const FitBounds& bounds, double step);

}  // namespace rsrp
