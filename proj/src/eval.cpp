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

#include "rsrp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "parallel.hpp"
#include "rsrp/errors.hpp"

namespace rsrp {

namespace {

std::vector<std::size_t> measured_indices(const DriveTestDataset& dataset) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < dataset.measurements.size(); ++i) {
    if (dataset.measurements[i].has_rsrp()) idx.push_back(i);
  }
  return idx;
}

std::unique_ptr<LocalSigmaField> make_field(const DriveTestDataset& dataset, double radius_m,
                                            FitKind kind, const EvalOptions& options) {
  if (kind != FitKind::Mle && !options.with_local_sigma) return nullptr;
  const auto diffs = consecutive_differences(dataset, options.diff_options);
  return std::make_unique<LocalSigmaField>(dataset, diffs, radius_m);
}

EvalRecord make_record(const Measurement& m, double predicted, const LocalSigmaField* field,
                       bool with_local_sigma) {
  EvalRecord r;
  r.point_id = m.id;
  r.cell_id = m.serving_cell;
  r.actual_rsrp_dbm = *m.rsrp_dbm;
  r.predicted_rsrp_dbm = predicted;
  r.error_db = predicted - *m.rsrp_dbm;
  if (with_local_sigma && field != nullptr) r.local_sigma_db = field->at(m.id);
  return r;
}

LooResult collect(std::size_t measured, std::vector<std::optional<EvalRecord>>& slots) {
  LooResult out;
  out.measured_count = measured;
  for (auto& slot : slots) {
    if (slot) out.records.push_back(std::move(*slot));
  }
  out.unpredictable_count = measured - out.records.size();
  return out;
}

// Same-cell members of one held-out point's disc, before filtering.
struct Candidate {
  std::size_t index;
  double dist_to_cell_m;
};

}  // namespace

LooResult leave_one_out(const DriveTestDataset& dataset, const SiteIndex& sites,
                        const PipelineConfig& config, const EvalOptions& options) {
  config.validate();
  const auto field = make_field(dataset, config.selection.radius_m, config.fit_kind, options);
  const auto targets = measured_indices(dataset);

  std::vector<std::optional<EvalRecord>> slots(targets.size());
  detail::parallel_for(targets.size(), options.threads, [&](std::size_t k) {
    const auto& m = dataset.measurements[targets[k]];
    const auto pred = predict_for_cell(m.pos, m.serving_cell, dataset, sites, config,
                                       PredictOptions{field.get(), m.id});
    if (pred) {
      slots[k] = make_record(m, pred->predicted_rsrp_dbm, field.get(), options.with_local_sigma);
    }
  });
  return collect(targets.size(), slots);
}

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("box_stats of an empty sample");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const auto quantile = [&](double p) {
    const double h = static_cast<double>(x.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= x.size()) return x.back();
    return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
  };
  double sum = 0.0;
  for (double v : x) sum += v;
  return BoxStats{x.front(),  quantile(0.25), quantile(0.5), quantile(0.75),
                  x.back(),   sum / static_cast<double>(x.size()), x.size()};
}

std::vector<double> signed_errors(std::span<const EvalRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.error_db);
  return out;
}

std::vector<double> abs_errors(std::span<const EvalRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(std::abs(r.error_db));
  return out;
}

SweepResult sweep(const DriveTestDataset& dataset, const SiteIndex& sites, const SweepAxes& axes,
                  const FitBounds& bounds, FitKind fit_kind, const EvalOptions& options) {
  if (axes.radii_m.empty() || axes.min_points.empty() || axes.min_dists_m.empty()) {
    throw InvalidConfig("sweep axes must be non-empty");
  }
  bounds.validate();
  const auto targets = measured_indices(dataset);

  SweepResult result{axes, {}};
  for (double radius : axes.radii_m) {
    SelectionConfig{radius, 2, 0.0}.validate();
    const auto field = make_field(dataset, radius, fit_kind, options);

    // The disc contents do not depend on the filter settings, so collect
    // each target's same-cell candidates once per radius.
    std::vector<std::vector<Candidate>> candidates(targets.size());
    detail::parallel_for(targets.size(), options.threads, [&](std::size_t k) {
      const auto& m = dataset.measurements[targets[k]];
      const auto& site = sites.at(m.serving_cell);
      for (std::size_t j = 0; j < dataset.measurements.size(); ++j) {
        const auto& other = dataset.measurements[j];
        if (!other.has_rsrp() || other.id == m.id || other.serving_cell != m.serving_cell) continue;
        if (great_circle_distance(other.pos, m.pos) < radius) {
          candidates[k].push_back(Candidate{j, great_circle_distance(other.pos, site.pos)});
        }
      }
    });

    for (std::size_t min_points : axes.min_points) {
      for (double min_dist : axes.min_dists_m) {
        const PipelineConfig config{SelectionConfig{radius, min_points, min_dist}, bounds,
                                    fit_kind};
        config.validate();
        std::vector<std::optional<EvalRecord>> slots(targets.size());
        detail::parallel_for(targets.size(), options.threads, [&](std::size_t k) {
          const auto& m = dataset.measurements[targets[k]];
          CellGroup group{m.serving_cell, {}};
          group.points.reserve(candidates[k].size());
          for (const auto& c : candidates[k]) {
            group.points.push_back(GroupPoint{dataset.measurements[c.index], c.dist_to_cell_m});
          }
          std::vector<CellGroup> one;
          one.push_back(std::move(group));
          auto kept = apply_filters(std::move(one), config.selection);
          if (kept.empty()) return;
          const auto pred =
              fit_and_predict(kept.front(), sites.at(m.serving_cell), m.pos, config, field.get());
          slots[k] = make_record(m, pred.predicted_rsrp_dbm, field.get(), options.with_local_sigma);
        });
        const auto loo = collect(targets.size(), slots);

        SweepRow row;
        row.radius_m = radius;
        row.min_points = min_points;
        row.min_dist_m = min_dist;
        row.n_records = loo.records.size();
        row.measured_count = loo.measured_count;
        row.coverage = loo.coverage();
        if (!loo.records.empty()) {
          row.abs_error = box_stats(abs_errors(loo.records));
          row.signed_error = box_stats(signed_errors(loo.records));
        }
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0.0, my = 0.0, scale_x = 0.0, scale_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
    scale_x = std::max(scale_x, std::abs(x[i]));
    scale_y = std::max(scale_y, std::abs(y[i]));
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  // Spread at rounding level counts as zero variance.
  const auto negligible = [n](double ss, double scale) {
    const double tol = 1e-12 * scale;
    return ss <= static_cast<double>(n) * tol * tol;
  };
  if (negligible(sxx, scale_x) || negligible(syy, scale_y)) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ErrorSigmaScatter error_vs_sigma(std::span<const EvalRecord> records) {
  ErrorSigmaScatter out;
  for (const auto& r : records) {
    if (r.local_sigma_db) {
      out.points.push_back(ScatterPoint{r.point_id, *r.local_sigma_db, std::abs(r.error_db)});
    }
  }
  if (out.points.size() < 3) {
    throw TooFewPoints("error_vs_sigma needs 3 records with a local sigma, got " +
                       std::to_string(out.points.size()));
  }
  std::vector<double> xs, ys;
  xs.reserve(out.points.size());
  ys.reserve(out.points.size());
  for (const auto& p : out.points) {
    xs.push_back(p.sigma_db);
    ys.push_back(p.abs_error_db);
  }
  const auto r = pearson_correlation(xs, ys);
  out.correlation_defined = r.has_value();
  out.correlation = r.value_or(0.0);
  return out;
}

}  // namespace rsrp
