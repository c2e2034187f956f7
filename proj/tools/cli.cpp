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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "rsrp/data.hpp"
#include "rsrp/errors.hpp"
#include "rsrp/eval.hpp"
#include "rsrp/keyvalue.hpp"
#include "rsrp/predict.hpp"
#include "rsrp/report.hpp"
#include "rsrp/shadowing.hpp"
#include "rsrp/synth.hpp"
#include "run_config.hpp"

namespace rsrp::cli {

namespace {

namespace fs = std::filesystem;

// Raw flag values; unset ones leave the config-file value in place.
struct Flags {
  std::optional<std::string> drive_test, cells, config, out;
  std::optional<double> radius_m, min_dist_m, alpha, l_max_m;
  std::optional<std::size_t> min_points;
  std::optional<std::string> fit;
  bool non_overlapping_pairs = false;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> sweep_radius_m, sweep_min_points, sweep_min_dist_m;
  std::optional<double> lat, lon;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--drive-test", f.drive_test, "Drive-test CSV");
  cmd.add_option("--cells", f.cells, "Cell-site CSV");
  cmd.add_option("--config", f.config, "key = value config file");
  cmd.add_option("--out", f.out, "Output directory");
  cmd.add_option("--radius-m", f.radius_m, "Neighborhood radius (m)");
  cmd.add_option("--min-points", f.min_points, "Minimum points per cell");
  cmd.add_option("--min-dist-m", f.min_dist_m, "Minimum distance to the antenna (m)");
  cmd.add_option("--fit", f.fit, "Fit kind")->check(CLI::IsMember({"mse", "mle"}));
  cmd.add_option("--alpha", f.alpha, "Confidence-interval significance level");
  cmd.add_option("--l-max-m", f.l_max_m, "Largest displacement within a difference pair (m)");
  cmd.add_flag("--non-overlapping-pairs", f.non_overlapping_pairs,
               "Use disjoint difference pairs");
  cmd.add_option("--seed", f.seed, "RNG seed");
  cmd.add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (f.config) apply_config_file(cfg, KeyValueFile::load(*f.config));
  if (f.drive_test) cfg.drive_test = *f.drive_test;
  if (f.cells) cfg.cells = *f.cells;
  if (f.out) cfg.out_dir = *f.out;
  auto& sel = cfg.pipeline.selection;
  if (f.radius_m) sel.radius_m = *f.radius_m;
  if (f.min_points) sel.min_points_per_cell = *f.min_points;
  if (f.min_dist_m) sel.min_dist_to_cell_m = *f.min_dist_m;
  if (f.fit) cfg.pipeline.fit_kind = parse_fit_kind(*f.fit);
  if (f.alpha) cfg.alpha = *f.alpha;
  if (f.l_max_m) cfg.diff.l_max_m = *f.l_max_m;
  if (f.non_overlapping_pairs) cfg.diff.pairing = PairingMode::NonOverlapping;
  if (f.seed) cfg.seed = *f.seed;
  if (f.threads) cfg.threads = *f.threads;
  if (f.sweep_radius_m) cfg.axes.radii_m = parse_double_list(*f.sweep_radius_m, "--sweep-radius-m");
  if (f.sweep_min_points) {
    cfg.axes.min_points.clear();
    for (double v : parse_double_list(*f.sweep_min_points, "--sweep-min-points")) {
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw InvalidConfig("--sweep-min-points expects non-negative integers");
      }
      cfg.axes.min_points.push_back(static_cast<std::size_t>(v));
    }
  }
  if (f.sweep_min_dist_m) {
    cfg.axes.min_dists_m = parse_double_list(*f.sweep_min_dist_m, "--sweep-min-dist-m");
  }
  cfg.validate();
  return cfg;
}

const fs::path& require(const std::optional<fs::path>& p, const char* what) {
  if (!p) throw InvalidConfig(std::string("missing required setting: ") + what);
  return *p;
}

// Renders into memory first so the file gets identical bytes on every run.
void emit(const std::optional<fs::path>& dir, const std::string& name, std::ostream& fallback,
          const std::string& hash, const std::function<void(std::ostream&)>& body) {
  std::ostringstream buf;
  buf << provenance_line(hash) << '\n';
  body(buf);
  if (!dir) {
    fallback << buf.str();
    return;
  }
  std::error_code ec;
  fs::create_directories(*dir, ec);
  const auto path = *dir / name;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw FileError(path.string());
  file << buf.str();
  if (!file) throw FileError(path.string());
}

DriveTestDataset load_dataset(const RunConfig& cfg) {
  return load_drive_test(require(cfg.drive_test, "--drive-test"));
}

SiteIndex load_sites(const RunConfig& cfg) {
  return SiteIndex(load_cell_sites(require(cfg.cells, "--cells")));
}

int cmd_predict(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = resolve(f);
  if (!f.lat || !f.lon) throw InvalidConfig("predict needs --lat and --lon");
  const GeoPoint target{*f.lat, *f.lon};
  if (!target.valid()) throw InvalidConfig("target position outside WGS84 range");
  const auto dataset = load_dataset(cfg);
  const auto sites = load_sites(cfg);

  std::unique_ptr<LocalSigmaField> field;
  if (cfg.pipeline.fit_kind == FitKind::Mle) {
    field = std::make_unique<LocalSigmaField>(dataset, consecutive_differences(dataset, cfg.diff),
                                              cfg.pipeline.selection.radius_m);
  }
  const auto result = predict_at(target, dataset, sites, cfg.pipeline, PredictOptions{field.get(), std::nullopt});
  emit(cfg.out_dir, "prediction.jsonl", out, cfg.hash(),
       [&](std::ostream& o) { o << to_json(result).dump() << '\n'; });
  if (result.empty()) {
    err << "no cell survives the filters around the target\n";
    return kExitEmptyResult;
  }
  return kExitOk;
}

int cmd_evaluate(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = resolve(f);
  const auto& dir = require(cfg.out_dir, "--out");
  const auto dataset = load_dataset(cfg);
  const auto sites = load_sites(cfg);
  if (dataset.measured_count() == 0) throw InvalidConfig("drive-test dataset has no measured rows");

  EvalOptions opts;
  opts.with_local_sigma = true;
  opts.diff_options = cfg.diff;
  opts.threads = cfg.threads;
  const auto loo = leave_one_out(dataset, sites, cfg.pipeline, opts);
  const auto hash = cfg.hash();

  emit(dir, "evaluation.csv", out, hash, [&](std::ostream& o) { write_eval_records(o, loo.records); });
  emit(dir, "summary.csv", out, hash, [&](std::ostream& o) { write_eval_summary(o, loo); });

  ErrorSigmaScatter scatter;
  try {
    scatter = error_vs_sigma(loo.records);
  } catch (const TooFewPoints&) {
    // Fewer than three records with a local sigma: header-only scatter.
  }
  emit(dir, "scatter.csv", out, hash, [&](std::ostream& o) { write_scatter(o, scatter); });

  out << "records " << loo.records.size() << " of " << loo.measured_count << " measured points\n";
  if (loo.records.empty()) {
    err << "no measured point could be predicted\n";
    return kExitEmptyResult;
  }
  const auto abs = box_stats(abs_errors(loo.records));
  out << "mean |error| " << format_double(abs.mean) << " dB, median " << format_double(abs.median)
      << " dB\n";
  return kExitOk;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream&) {
  const auto cfg = resolve(f);
  const auto& dir = require(cfg.out_dir, "--out");
  const auto dataset = load_dataset(cfg);
  const auto sites = load_sites(cfg);
  if (dataset.measured_count() == 0) throw InvalidConfig("drive-test dataset has no measured rows");

  EvalOptions opts;
  opts.diff_options = cfg.diff;
  opts.threads = cfg.threads;
  const auto result =
      sweep(dataset, sites, cfg.axes, cfg.pipeline.bounds, cfg.pipeline.fit_kind, opts);
  emit(dir, "sweep.csv", out, cfg.hash(), [&](std::ostream& o) { write_sweep(o, result); });
  out << "sweep rows " << result.rows.size() << '\n';
  return kExitOk;
}

int cmd_sigma(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto cfg = resolve(f);
  const auto dataset = load_dataset(cfg);
  const auto diffs = consecutive_differences(dataset, cfg.diff);
  if (diffs.size() < 2) {
    err << "need at least 2 difference pairs, found " << diffs.size() << '\n';
    return kExitEmptyResult;
  }
  const auto estimate = estimate_shadowing(diffs, cfg.alpha);
  auto j = to_json(estimate);
  j["pairing"] = std::string(to_string(cfg.diff.pairing));
  j["l_max_m"] = cfg.diff.l_max_m;
  emit(cfg.out_dir, "sigma.json", out, cfg.hash(), [&](std::ostream& o) { o << j.dump() << '\n'; });
  return kExitOk;
}

int cmd_simulate(const Flags& f, std::ostream& out, std::ostream&) {
  if (!f.config) throw InvalidConfig("simulate needs --config <synth config>");
  if (!f.out) throw InvalidConfig("missing required setting: --out");
  const auto kv = KeyValueFile::load(*f.config);
  auto synth = synth_config_from(kv);
  if (f.seed) synth.seed = *f.seed;
  const auto scene = generate(synth);

  std::string canonical;
  for (const auto& e : kv.entries()) canonical += e.key + " = " + e.value + '\n';
  canonical += "seed_override = " + (f.seed ? std::to_string(*f.seed) : std::string()) + '\n';
  const auto hash = fnv1a_hex(canonical);
  const std::optional<fs::path> dir = fs::path(*f.out);

  emit(dir, "drive_test.csv", out, hash, [&](std::ostream& o) { write_drive_test(o, scene.dataset); });
  emit(dir, "cells.csv", out, hash, [&](std::ostream& o) { write_cell_sites(o, scene.sites); });
  emit(dir, "ground_truth.csv", out, hash, [&](std::ostream& o) { write_ground_truth(o, scene.truth); });
  out << "samples " << scene.dataset.size() << ", measured " << scene.dataset.measured_count()
      << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RSRP prediction from drive-test data with log-distance path-loss fits",
               "rsrp-oracle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RSRP_ORACLE_VERSION);

  Flags flags;
  auto* predict = app.add_subcommand("predict", "Predict RSRP at one position");
  add_common(*predict, flags);
  predict->add_option("--lat", flags.lat, "Target latitude (deg)")->required();
  predict->add_option("--lon", flags.lon, "Target longitude (deg)")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Leave-one-out evaluation");
  add_common(*evaluate, flags);

  auto* sweep_cmd = app.add_subcommand("sweep", "Leave-one-out over a parameter grid");
  add_common(*sweep_cmd, flags);
  sweep_cmd->add_option("--sweep-radius-m", flags.sweep_radius_m, "Radius axis, comma separated");
  sweep_cmd->add_option("--sweep-min-points", flags.sweep_min_points, "Min-points axis");
  sweep_cmd->add_option("--sweep-min-dist-m", flags.sweep_min_dist_m, "Min-distance axis");

  auto* sigma = app.add_subcommand("sigma", "Blind shadowing sigma estimate");
  add_common(*sigma, flags);

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic drive test");
  add_common(*simulate, flags);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("rsrp-oracle");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << RSRP_ORACLE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (predict->parsed()) return cmd_predict(flags, out, err);
    if (evaluate->parsed()) return cmd_evaluate(flags, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(flags, out, err);
    if (sigma->parsed()) return cmd_sigma(flags, out, err);
    if (simulate->parsed()) return cmd_simulate(flags, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace rsrp::cli
