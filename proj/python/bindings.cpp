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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

#include "rsrp/data.hpp"
#include "rsrp/errors.hpp"
#include "rsrp/eval.hpp"
#include "rsrp/geo.hpp"
#include "rsrp/pathloss.hpp"
#include "rsrp/predict.hpp"
#include "rsrp/report.hpp"
#include "rsrp/selection.hpp"
#include "rsrp/shadowing.hpp"
#include "rsrp/synth.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace rsrp;

namespace {

std::unique_ptr<LocalSigmaField> noise_field(const DriveTestDataset& dataset,
                                             const PipelineConfig& config,
                                             const DiffOptions& diff) {
  if (config.fit_kind != FitKind::Mle) return nullptr;
  return std::make_unique<LocalSigmaField>(dataset, consecutive_differences(dataset, diff),
                                           config.selection.radius_m);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
      RSRP prediction from drive-test measurements
      --------------------------------------------

      Log-distance path-loss fits per serving cell, blind shadowing
      estimation and leave-one-out evaluation.
  )pbdoc";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());

  py::class_<GeoPoint>(m, "GeoPoint")
      .def(py::init<>())
      .def(py::init([](double lat, double lon) { return GeoPoint{lat, lon}; }), py::arg("lat_deg"),
           py::arg("lon_deg"))
      .def_readwrite("lat_deg", &GeoPoint::lat_deg)
      .def_readwrite("lon_deg", &GeoPoint::lon_deg)
      .def("valid", &GeoPoint::valid)
      .def("__repr__", [](const GeoPoint& p) {
        return "GeoPoint(" + format_double(p.lat_deg) + ", " + format_double(p.lon_deg) + ")";
      });

  m.def("great_circle_distance", &great_circle_distance, py::arg("a"), py::arg("b"),
        "Great-circle distance in meters on a 6371 km sphere.");

  py::class_<Measurement>(m, "Measurement")
      .def(py::init<>())
      .def_readwrite("id", &Measurement::id)
      .def_readwrite("timestamp_ms", &Measurement::timestamp_ms)
      .def_readwrite("pos", &Measurement::pos)
      .def_readwrite("rsrp_dbm", &Measurement::rsrp_dbm)
      .def_readwrite("serving_cell", &Measurement::serving_cell);

  py::class_<CellSite>(m, "CellSite")
      .def(py::init<>())
      .def(py::init([](CellId id, GeoPoint pos) { return CellSite{std::move(id), pos}; }),
           py::arg("cell_id"), py::arg("pos"))
      .def_readwrite("cell_id", &CellSite::cell_id)
      .def_readwrite("pos", &CellSite::pos);

  py::class_<DriveTestDataset>(m, "DriveTestDataset")
      .def_readonly("measurements", &DriveTestDataset::measurements)
      .def_readonly("source_path", &DriveTestDataset::source_path)
      .def("measured_count", &DriveTestDataset::measured_count)
      .def("__len__", &DriveTestDataset::size);

  m.def("make_dataset", &make_dataset, py::arg("measurements"), py::arg("source_path") = "");
  m.def("load_drive_test",
        [](const std::filesystem::path& p) { return load_drive_test(p); }, py::arg("path"));
  m.def("load_cell_sites", &load_cell_sites, py::arg("path"));

  py::class_<SiteIndex>(m, "SiteIndex")
      .def(py::init<std::vector<CellSite>>(), py::arg("sites"))
      .def("__len__", &SiteIndex::size)
      .def("__contains__", &SiteIndex::contains);

  py::class_<SelectionConfig>(m, "SelectionConfig")
      .def(py::init<>())
      .def(py::init([](double r, std::size_t n, double d) { return SelectionConfig{r, n, d}; }),
           py::arg("radius_m") = 50.0, py::arg("min_points_per_cell") = 8,
           py::arg("min_dist_to_cell_m") = 10.0)
      .def_readwrite("radius_m", &SelectionConfig::radius_m)
      .def_readwrite("min_points_per_cell", &SelectionConfig::min_points_per_cell)
      .def_readwrite("min_dist_to_cell_m", &SelectionConfig::min_dist_to_cell_m);

  py::enum_<FitKind>(m, "FitKind").value("MSE", FitKind::Mse).value("MLE", FitKind::Mle);

  py::class_<FitBounds>(m, "FitBounds")
      .def(py::init<>())
      .def(py::init([](double a, double b, double c, double d) { return FitBounds{a, b, c, d}; }),
           py::arg("p0_low"), py::arg("p0_high"), py::arg("beta_low"), py::arg("beta_high"))
      .def_readwrite("p0_low", &FitBounds::p0_low)
      .def_readwrite("p0_high", &FitBounds::p0_high)
      .def_readwrite("beta_low", &FitBounds::beta_low)
      .def_readwrite("beta_high", &FitBounds::beta_high);

  py::class_<PathLossParams>(m, "PathLossParams")
      .def(py::init<>())
      .def(py::init([](double p0, double beta) {
             return PathLossParams{p0, beta, FitKind::Mse, 0.0, false};
           }),
           py::arg("p0_dbm"), py::arg("beta"))
      .def_readwrite("p0_dbm", &PathLossParams::p0_dbm)
      .def_readwrite("beta", &PathLossParams::beta)
      .def_readonly("fit_kind", &PathLossParams::fit_kind)
      .def_readonly("residual_rss", &PathLossParams::residual_rss)
      .def_readonly("degenerate", &PathLossParams::degenerate);

  m.def("predict_rsrp", &predict_rsrp, py::arg("params"), py::arg("distance_m"));

  py::class_<BoxLsSolution>(m, "BoxLsSolution")
      .def_readonly("p0_dbm", &BoxLsSolution::p0_dbm)
      .def_readonly("beta", &BoxLsSolution::beta)
      .def_readonly("objective", &BoxLsSolution::objective)
      .def_readonly("interior", &BoxLsSolution::interior);

  m.def(
      "solve_box_ls",
      [](const std::vector<double>& targets, const std::vector<double>& regressors,
         std::optional<std::vector<double>> weights, const FitBounds& bounds) {
        const auto w = weights.value_or(std::vector<double>(targets.size(), 1.0));
        return solve_box_ls(targets, regressors, w, bounds);
      },
      py::arg("targets"), py::arg("regressors"), py::arg("weights") = py::none(),
      py::arg("bounds") = FitBounds{},
      "Box-constrained weighted least squares for P = p0 - beta * x; weights are 1/sigma^2.");

  m.def("estimate_sigma",
        [](const std::vector<double>& diffs) { return estimate_sigma(std::span<const double>(diffs)); },
        py::arg("diffs"));
  m.def(
      "sigma_confidence_interval",
      [](double sigma_pd, std::size_t n, double alpha) {
        const auto ci = sigma_confidence_interval(sigma_pd, n, alpha);
        return py::make_tuple(ci.low_db, ci.high_db);
      },
      py::arg("sigma_pd_db"), py::arg("n"), py::arg("alpha") = 0.05);
  m.def("chi_square_quantile", &chi_square_quantile, py::arg("probability"),
        py::arg("degrees_of_freedom"));

  py::enum_<PairingMode>(m, "PairingMode")
      .value("OVERLAPPING", PairingMode::Overlapping)
      .value("NON_OVERLAPPING", PairingMode::NonOverlapping);

  py::class_<DiffOptions>(m, "DiffOptions")
      .def(py::init([](double l_max, PairingMode mode) { return DiffOptions{l_max, mode}; }),
           py::arg("l_max_m") = 15.0, py::arg("pairing") = PairingMode::Overlapping)
      .def_readwrite("l_max_m", &DiffOptions::l_max_m)
      .def_readwrite("pairing", &DiffOptions::pairing);

  py::class_<ShadowingEstimate>(m, "ShadowingEstimate")
      .def_readonly("sigma_db", &ShadowingEstimate::sigma_db)
      .def_readonly("sigma_pd_db", &ShadowingEstimate::sigma_pd_db)
      .def_readonly("n_pairs", &ShadowingEstimate::n_pairs)
      .def_readonly("ci_low_db", &ShadowingEstimate::ci_low_db)
      .def_readonly("ci_high_db", &ShadowingEstimate::ci_high_db)
      .def_readonly("confidence", &ShadowingEstimate::confidence);

  m.def(
      "estimate_shadowing",
      [](const DriveTestDataset& dataset, const DiffOptions& options, double alpha) {
        const auto diffs = consecutive_differences(dataset, options);
        return estimate_shadowing(diffs, alpha);
      },
      py::arg("dataset"), py::arg("options") = DiffOptions{}, py::arg("alpha") = 0.05);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init([](SelectionConfig s, FitBounds b, FitKind k) {
             return PipelineConfig{s, b, k};
           }),
           py::arg("selection") = SelectionConfig{}, py::arg("bounds") = FitBounds{},
           py::arg("fit_kind") = FitKind::Mse)
      .def_readwrite("selection", &PipelineConfig::selection)
      .def_readwrite("bounds", &PipelineConfig::bounds)
      .def_readwrite("fit_kind", &PipelineConfig::fit_kind);

  m.def(
      "predict_at",
      [](const GeoPoint& target, const DriveTestDataset& dataset, const SiteIndex& sites,
         const PipelineConfig& config, const DiffOptions& diff) {
        const auto field = noise_field(dataset, config, diff);
        const auto result = predict_at(target, dataset, sites, config, PredictOptions{field.get(), std::nullopt});
        return to_json(result).dump();
      },
      py::arg("target"), py::arg("dataset"), py::arg("sites"),
      py::arg("config") = PipelineConfig{}, py::arg("diff_options") = DiffOptions{},
      "Prediction record as a JSON string.");

  py::class_<EvalRecord>(m, "EvalRecord")
      .def_readonly("point_id", &EvalRecord::point_id)
      .def_readonly("cell_id", &EvalRecord::cell_id)
      .def_readonly("actual_rsrp_dbm", &EvalRecord::actual_rsrp_dbm)
      .def_readonly("predicted_rsrp_dbm", &EvalRecord::predicted_rsrp_dbm)
      .def_readonly("error_db", &EvalRecord::error_db)
      .def_readonly("local_sigma_db", &EvalRecord::local_sigma_db);

  py::class_<LooResult>(m, "LooResult")
      .def_readonly("records", &LooResult::records)
      .def_readonly("measured_count", &LooResult::measured_count)
      .def_readonly("unpredictable_count", &LooResult::unpredictable_count)
      .def("coverage", &LooResult::coverage);

  m.def(
      "leave_one_out",
      [](const DriveTestDataset& dataset, const SiteIndex& sites, const PipelineConfig& config,
         bool with_local_sigma) {
        EvalOptions opts;
        opts.with_local_sigma = with_local_sigma;
        py::gil_scoped_release release;
        return leave_one_out(dataset, sites, config, opts);
      },
      py::arg("dataset"), py::arg("sites"), py::arg("config") = PipelineConfig{},
      py::arg("with_local_sigma") = false);

  py::class_<BoxStats>(m, "BoxStats")
      .def_readonly("min", &BoxStats::min)
      .def_readonly("q1", &BoxStats::q1)
      .def_readonly("median", &BoxStats::median)
      .def_readonly("q3", &BoxStats::q3)
      .def_readonly("max", &BoxStats::max)
      .def_readonly("mean", &BoxStats::mean)
      .def_readonly("n", &BoxStats::n);

  m.def("box_stats",
        [](const std::vector<double>& v) { return box_stats(std::span<const double>(v)); },
        py::arg("values"));

  py::class_<SweepAxes>(m, "SweepAxes")
      .def(py::init<>())
      .def_readwrite("radii_m", &SweepAxes::radii_m)
      .def_readwrite("min_points", &SweepAxes::min_points)
      .def_readwrite("min_dists_m", &SweepAxes::min_dists_m);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("radius_m", &SweepRow::radius_m)
      .def_readonly("min_points", &SweepRow::min_points)
      .def_readonly("min_dist_m", &SweepRow::min_dist_m)
      .def_readonly("n_records", &SweepRow::n_records)
      .def_readonly("coverage", &SweepRow::coverage)
      .def_readonly("abs_error", &SweepRow::abs_error);

  m.def(
      "sweep",
      [](const DriveTestDataset& dataset, const SiteIndex& sites, const SweepAxes& axes,
         const FitBounds& bounds, FitKind kind) {
        py::gil_scoped_release release;
        return sweep(dataset, sites, axes, bounds, kind).rows;
      },
      py::arg("dataset"), py::arg("sites"), py::arg("axes") = SweepAxes{},
      py::arg("bounds") = FitBounds{}, py::arg("fit_kind") = FitKind::Mse);

  py::class_<SynthCell>(m, "SynthCell")
      .def(py::init([](CellId id, GeoPoint pos, double p0, double beta) {
             return SynthCell{std::move(id), pos, ChannelParams{p0, beta}, std::nullopt};
           }),
           py::arg("cell_id"), py::arg("pos"), py::arg("p0_dbm"), py::arg("beta"))
      .def_readwrite("id", &SynthCell::id)
      .def_readwrite("pos", &SynthCell::pos);

  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("cells", &SynthConfig::cells)
      .def_readwrite("route", &SynthConfig::route)
      .def_readwrite("speed_kmh", &SynthConfig::speed_kmh)
      .def_readwrite("sample_interval_s", &SynthConfig::sample_interval_s)
      .def_readwrite("sigma_db", &SynthConfig::sigma_db)
      .def_readwrite("seed", &SynthConfig::seed)
      .def_readwrite("start_timestamp_ms", &SynthConfig::start_timestamp_ms)
      .def_readwrite("missing_rsrp_prob", &SynthConfig::missing_rsrp_prob);

  py::class_<GroundTruthRow>(m, "GroundTruthRow")
      .def_readonly("point_id", &GroundTruthRow::point_id)
      .def_readonly("true_mean_dbm", &GroundTruthRow::true_mean_dbm)
      .def_readonly("noise_db", &GroundTruthRow::noise_db)
      .def_readonly("true_dist_m", &GroundTruthRow::true_dist_m)
      .def_readonly("serving_cell", &GroundTruthRow::serving_cell);

  m.def(
      "generate",
      [](const SynthConfig& config) {
        auto scene = generate(config);
        return py::make_tuple(std::move(scene.dataset), std::move(scene.sites),
                              std::move(scene.truth));
      },
      py::arg("config"), "Returns (dataset, sites, ground_truth).");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
