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

#include "run_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "rsrp/data.hpp"
#include "rsrp/errors.hpp"

namespace rsrp::cli {

namespace {

std::string join(const auto& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
      out += format_double(v);
    } else {
      out += std::to_string(v);
    }
  }
  return out;
}

std::vector<std::size_t> to_counts(const std::vector<double>& values, std::string_view what) {
  std::vector<std::size_t> out;
  for (double v : values) {
    if (v < 0 || v != std::floor(v)) {
      throw InvalidConfig(std::string(what) + ": expected non-negative integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

constexpr std::array kKnownKeys{
    "drive_test", "cells",     "out",          "radius_m",      "min_points",
    "min_dist_m", "fit",       "p0_low",       "p0_high",       "beta_low",
    "beta_high",  "alpha",     "l_max_m",      "non_overlapping_pairs",
    "sweep_radius_m", "sweep_min_points", "sweep_min_dist_m", "seed", "threads"};

}  // namespace

void RunConfig::validate() const {
  pipeline.validate();
  diff.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidConfig("alpha must lie in (0, 1)");
  if (axes.radii_m.empty() || axes.min_points.empty() || axes.min_dists_m.empty()) {
    throw InvalidConfig("sweep axes must be non-empty");
  }
}

std::string RunConfig::canonical() const {
  std::ostringstream s;
  const auto path_or_empty = [](const auto& p) { return p ? p->generic_string() : std::string(); };
  s << "alpha = " << format_double(alpha) << '\n'
    << "beta_high = " << format_double(pipeline.bounds.beta_high) << '\n'
    << "beta_low = " << format_double(pipeline.bounds.beta_low) << '\n'
    << "cells = " << path_or_empty(cells) << '\n'
    << "drive_test = " << path_or_empty(drive_test) << '\n'
    << "fit = " << to_string(pipeline.fit_kind) << '\n'
    << "l_max_m = " << format_double(diff.l_max_m) << '\n'
    << "min_dist_m = " << format_double(pipeline.selection.min_dist_to_cell_m) << '\n'
    << "min_points = " << pipeline.selection.min_points_per_cell << '\n'
    << "non_overlapping_pairs = "
    << (diff.pairing == PairingMode::NonOverlapping ? "true" : "false") << '\n'
    << "p0_high = " << format_double(pipeline.bounds.p0_high) << '\n'
    << "p0_low = " << format_double(pipeline.bounds.p0_low) << '\n'
    << "radius_m = " << format_double(pipeline.selection.radius_m) << '\n'
    << "seed = " << seed << '\n'
    << "sweep_min_dist_m = " << join(axes.min_dists_m) << '\n'
    << "sweep_min_points = " << join(axes.min_points) << '\n'
    << "sweep_radius_m = " << join(axes.radii_m) << '\n';
  return s.str();
}

void apply_config_file(RunConfig& config, const KeyValueFile& kv) {
  for (const auto& e : kv.entries()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), e.key) == kKnownKeys.end()) {
      throw InvalidConfig(kv.source() + ":" + std::to_string(e.line_no) + ": unknown key '" +
                          e.key + "'");
    }
  }
  const auto base = std::filesystem::path(kv.source()).parent_path();
  const auto path_key = [&](std::string_view key, std::optional<std::filesystem::path>& slot) {
    if (auto v = kv.get(key)) {
      std::filesystem::path p(*v);
      slot = p.is_absolute() || base.empty() ? p : base / p;
    }
  };
  path_key("drive_test", config.drive_test);
  path_key("cells", config.cells);
  path_key("out", config.out_dir);

  auto& sel = config.pipeline.selection;
  auto& bounds = config.pipeline.bounds;
  if (auto v = kv.get_double("radius_m")) sel.radius_m = *v;
  if (auto v = kv.get_int("min_points")) {
    if (*v < 0) throw InvalidConfig("min_points must be non-negative");
    sel.min_points_per_cell = static_cast<std::size_t>(*v);
  }
  if (auto v = kv.get_double("min_dist_m")) sel.min_dist_to_cell_m = *v;
  if (auto v = kv.get("fit")) config.pipeline.fit_kind = parse_fit_kind(*v);
  if (auto v = kv.get_double("p0_low")) bounds.p0_low = *v;
  if (auto v = kv.get_double("p0_high")) bounds.p0_high = *v;
  if (auto v = kv.get_double("beta_low")) bounds.beta_low = *v;
  if (auto v = kv.get_double("beta_high")) bounds.beta_high = *v;
  if (auto v = kv.get_double("alpha")) config.alpha = *v;
  if (auto v = kv.get_double("l_max_m")) config.diff.l_max_m = *v;
  if (auto v = kv.get_bool("non_overlapping_pairs")) {
    config.diff.pairing = *v ? PairingMode::NonOverlapping : PairingMode::Overlapping;
  }
  if (auto v = kv.get("sweep_radius_m")) config.axes.radii_m = parse_double_list(*v, "sweep_radius_m");
  if (auto v = kv.get("sweep_min_points")) {
    config.axes.min_points = to_counts(parse_double_list(*v, "sweep_min_points"), "sweep_min_points");
  }
  if (auto v = kv.get("sweep_min_dist_m")) {
    config.axes.min_dists_m = parse_double_list(*v, "sweep_min_dist_m");
  }
  if (auto v = kv.get_int("seed")) config.seed = static_cast<std::uint64_t>(*v);
  if (auto v = kv.get_int("threads")) {
    if (*v < 0) throw InvalidConfig("threads must be non-negative");
    config.threads = static_cast<unsigned>(*v);
  }
}

}  // namespace rsrp::cli
