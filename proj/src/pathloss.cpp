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

#include "rsrp/pathloss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "rsrp/errors.hpp"

namespace rsrp {

namespace {

constexpr double kSingularSpread = 1e-9;

struct Design {
  std::vector<double> targets;
  std::vector<double> regressors;
  std::vector<double> weights;
};

Design make_design(const CellGroup& group) {
  Design d;
  d.targets.reserve(group.size());
  d.regressors.reserve(group.size());
  for (const auto& p : group.points) {
    d.targets.push_back(*p.measurement.rsrp_dbm);
    d.regressors.push_back(log_distance_regressor(p.dist_to_cell_m));
  }
  return d;
}

void check_inputs(std::span<const double> targets, std::span<const double> regressors,
                  std::span<const double> weights) {
  if (targets.size() != regressors.size()) {
    throw WeightLengthMismatch("targets and regressors differ in length");
  }
  if (weights.size() != targets.size()) {
    throw WeightLengthMismatch("expected " + std::to_string(targets.size()) + " weights, got " +
                               std::to_string(weights.size()));
  }
  if (targets.size() < 2) {
    throw TooFewPoints("need at least 2 points, got " + std::to_string(targets.size()));
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error("weights must be positive and finite");
  }
}

// beta pinned to the middle of its range; p0 is the weighted mean of
// P_i + beta * x_i, clamped.
PathLossParams degenerate_fit(const Design& d, const FitBounds& bounds, FitKind kind) {
  const double beta = 0.5 * (bounds.beta_low + bounds.beta_high);
  double sw = 0.0;
  double swp = 0.0;
  for (std::size_t i = 0; i < d.targets.size(); ++i) {
    sw += d.weights[i];
    swp += d.weights[i] * (d.targets[i] + beta * d.regressors[i]);
  }
  const double p0 = std::clamp(swp / sw, bounds.p0_low, bounds.p0_high);
  return PathLossParams{p0, beta, kind,
                        box_ls_objective(d.targets, d.regressors, d.weights, p0, beta), true};
}

PathLossParams fit_design(const Design& d, const FitBounds& bounds, FitKind kind) {
  try {
    const auto sol = solve_box_ls(d.targets, d.regressors, d.weights, bounds);
    return PathLossParams{sol.p0_dbm, sol.beta, kind, sol.objective, false};
  } catch (const SingularNormalMatrix&) {
    return degenerate_fit(d, bounds, kind);
  }
}

}  // namespace

std::string_view to_string(FitKind kind) noexcept {
  return kind == FitKind::Mse ? "mse" : "mle";
}

FitKind parse_fit_kind(std::string_view text) {
  if (text == "mse") return FitKind::Mse;
  if (text == "mle") return FitKind::Mle;
  throw InvalidConfig("fit must be 'mse' or 'mle', got '" + std::string(text) + "'");
}

void FitBounds::validate() const {
  const bool finite = std::isfinite(p0_low) && std::isfinite(p0_high) && std::isfinite(beta_low) &&
                      std::isfinite(beta_high);
  if (!finite || !(p0_low < p0_high) || !(beta_low < beta_high)) {
    throw InvalidConfig("fit bounds need p0_low < p0_high and beta_low < beta_high");
  }
}

NoiseWeights::NoiseWeights(std::vector<double> sigmas, bool uniform)
    : sigmas_(std::move(sigmas)), uniform_(uniform) {
  for (double s : sigmas_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw Error("noise sigma must be positive and finite");
  }
}

NoiseWeights NoiseWeights::uniform(double sigma_db) { return NoiseWeights({sigma_db}, true); }

NoiseWeights NoiseWeights::per_point(std::vector<double> sigmas_db) {
  return NoiseWeights(std::move(sigmas_db), false);
}

double log_distance_regressor(double distance_m) noexcept {
  return 10.0 * std::log10(std::max(distance_m, kReferenceDistanceM));
}

double predict_rsrp(const PathLossParams& params, double distance_m) {
  if (!(distance_m >= kReferenceDistanceM)) throw DistanceBelowReference(distance_m);
  return params.p0_dbm - params.beta * log_distance_regressor(distance_m);
}

double box_ls_objective(std::span<const double> targets, std::span<const double> regressors,
                        std::span<const double> weights, double p0_dbm, double beta) {
  double acc = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double r = targets[i] - p0_dbm + beta * regressors[i];
    acc += weights[i] * r * r;
  }
  return acc;
}

BoxLsSolution solve_box_ls(std::span<const double> targets, std::span<const double> regressors,
                           std::span<const double> weights, const FitBounds& bounds) {
  check_inputs(targets, regressors, weights);
  bounds.validate();

  const auto [xmin, xmax] = std::minmax_element(regressors.begin(), regressors.end());
  if (*xmax - *xmin <= kSingularSpread) {
    throw SingularNormalMatrix("all regressors are equal: points are equidistant from the cell");
  }

  const std::size_t n = targets.size();
  double sw = 0.0, swx = 0.0, swp = 0.0, swxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += weights[i];
    swx += weights[i] * regressors[i];
    swp += weights[i] * targets[i];
    swxx += weights[i] * regressors[i] * regressors[i];
  }
  const double x_mean = swx / sw;
  const double p_mean = swp / sw;

  // Centered normal equations for P = a + b x; beta = -b, p0 = a.
  double cxx = 0.0, cxp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = regressors[i] - x_mean;
    cxx += weights[i] * dx * dx;
    cxp += weights[i] * dx * (targets[i] - p_mean);
  }
  const double beta_hat = -cxp / cxx;
  const double p0_hat = p_mean + beta_hat * x_mean;

  const auto objective = [&](double p0, double beta) {
    return box_ls_objective(targets, regressors, weights, p0, beta);
  };

  if (bounds.contains(p0_hat, beta_hat)) {
    return BoxLsSolution{p0_hat, beta_hat, objective(p0_hat, beta_hat), true};
  }

  // For fixed beta the optimal p0 is p_mean + beta * x_mean; for fixed p0
  // the optimal beta is -sum w x (P - p0) / sum w x^2.
  const auto p0_on_edge = [&](double beta) {
    return std::clamp(p_mean + beta * x_mean, bounds.p0_low, bounds.p0_high);
  };
  const auto beta_on_edge = [&](double p0) {
    double swxp = 0.0;
    for (std::size_t i = 0; i < n; ++i) swxp += weights[i] * regressors[i] * (targets[i] - p0);
    return std::clamp(-swxp / swxx, bounds.beta_low, bounds.beta_high);
  };

  const std::array<std::array<double, 2>, 8> candidates{{
      {p0_on_edge(bounds.beta_low), bounds.beta_low},
      {p0_on_edge(bounds.beta_high), bounds.beta_high},
      {bounds.p0_low, beta_on_edge(bounds.p0_low)},
      {bounds.p0_high, beta_on_edge(bounds.p0_high)},
      {bounds.p0_low, bounds.beta_low},
      {bounds.p0_low, bounds.beta_high},
      {bounds.p0_high, bounds.beta_low},
      {bounds.p0_high, bounds.beta_high},
  }};

  BoxLsSolution best{candidates[0][0], candidates[0][1],
                     objective(candidates[0][0], candidates[0][1]), false};
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double f = objective(candidates[k][0], candidates[k][1]);
    if (f < best.objective) best = BoxLsSolution{candidates[k][0], candidates[k][1], f, false};
  }
  return best;
}

PathLossParams fit_mse(const CellGroup& group, const FitBounds& bounds) {
  if (group.size() < 2) {
    throw TooFewPoints("cell " + group.cell_id + " has " + std::to_string(group.size()) +
                       " points, need 2");
  }
  auto design = make_design(group);
  design.weights.assign(group.size(), 1.0);
  return fit_design(design, bounds, FitKind::Mse);
}

PathLossParams fit_mle(const CellGroup& group, const NoiseWeights& weights,
                       const FitBounds& bounds) {
  if (group.size() < 2) {
    throw TooFewPoints("cell " + group.cell_id + " has " + std::to_string(group.size()) +
                       " points, need 2");
  }
  if (!weights.is_uniform() && weights.size() != group.size()) {
    throw WeightLengthMismatch("cell " + group.cell_id + ": " + std::to_string(weights.size()) +
                               " sigmas for " + std::to_string(group.size()) + " points");
  }
  auto design = make_design(group);
  design.weights.reserve(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    const double s = weights.sigma_at(i);
    design.weights.push_back(1.0 / (s * s));
  }
  return fit_design(design, bounds, FitKind::Mle);
}

GridOptimum grid_oracle(std::span<const double> targets, std::span<const double> regressors,
                        std::span<const double> weights, const FitBounds& bounds, double step) {
  if (!(step > 0.0)) throw InvalidConfig("grid step must be positive");
  const auto count = [step](double lo, double hi) {
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  };
  const std::size_t n_p0 = count(bounds.p0_low, bounds.p0_high);
  const std::size_t n_beta = count(bounds.beta_low, bounds.beta_high);

  GridOptimum best{bounds.p0_low, bounds.beta_low,
                   box_ls_objective(targets, regressors, weights, bounds.p0_low, bounds.beta_low)};
  for (std::size_t i = 0; i < n_p0; ++i) {
    const double p0 = std::min(bounds.p0_low + static_cast<double>(i) * step, bounds.p0_high);
    for (std::size_t j = 0; j < n_beta; ++j) {
      const double beta =
          std::min(bounds.beta_low + static_cast<double>(j) * step, bounds.beta_high);
      const double f = box_ls_objective(targets, regressors, weights, p0, beta);
      if (f < best.objective) best = GridOptimum{p0, beta, f};
    }
  }
  return best;
}

GridOptimum grid_oracle(const CellGroup& group, const FitBounds& bounds, double step) {
  const auto design = make_design(group);
  const std::vector<double> weights(group.size(), 1.0);
  return grid_oracle(design.targets, design.regressors, weights, bounds, step);
}

}  // namespace rsrp
