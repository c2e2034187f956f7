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

#include "rsrp/report.hpp"

#include <cmath>
#include <ostream>

namespace rsrp {

namespace {

void write_stats(std::ostream& out, const BoxStats& s) {
  out << format_double(s.min) << ',' << format_double(s.q1) << ',' << format_double(s.median)
      << ',' << format_double(s.q3) << ',' << format_double(s.max);
}

}  // namespace

std::string provenance_line(std::string_view config_hash) {
  return std::string("# rsrp-oracle ") + RSRP_ORACLE_VERSION + " config-hash=" +
         std::string(config_hash);
}

nlohmann::ordered_json to_json(const PredictionResult& result) {
  nlohmann::ordered_json j;
  j["target"] = {{"lat", result.target.lat_deg}, {"lon", result.target.lon_deg}};
  j["headline_cell"] = result.headline_cell ? nlohmann::ordered_json(*result.headline_cell)
                                            : nlohmann::ordered_json(nullptr);
  j["headline_rsrp_dbm"] = result.headline_rsrp_dbm
                               ? nlohmann::ordered_json(*result.headline_rsrp_dbm)
                               : nlohmann::ordered_json(nullptr);
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : result.per_cell) {
    cells.push_back({{"cell_id", c.cell_id},
                     {"p0_dbm", c.params.p0_dbm},
                     {"beta", c.params.beta},
                     {"degenerate", c.params.degenerate},
                     {"n_points", c.n_points},
                     {"predicted_rsrp_dbm", c.predicted_rsrp_dbm}});
  }
  j["cells"] = std::move(cells);
  return j;
}

nlohmann::ordered_json to_json(const ShadowingEstimate& e) {
  return {{"sigma_db", e.sigma_db},     {"sigma_pd_db", e.sigma_pd_db},
          {"n_pairs", e.n_pairs},       {"ci_low_db", e.ci_low_db},
          {"ci_high_db", e.ci_high_db}, {"confidence", e.confidence}};
}

void write_eval_records(std::ostream& out, std::span<const EvalRecord> records) {
  out << "point_id,cell_id,actual_rsrp_dbm,predicted_rsrp_dbm,error_db,local_sigma_db\n";
  for (const auto& r : records) {
    out << r.point_id << ',' << r.cell_id << ',' << format_double(r.actual_rsrp_dbm) << ','
        << format_double(r.predicted_rsrp_dbm) << ',' << format_double(r.error_db) << ',';
    if (r.local_sigma_db) out << format_double(*r.local_sigma_db);
    out << '\n';
  }
}

void write_eval_summary(std::ostream& out, const LooResult& loo) {
  out << "distribution,n,coverage,mean,min,q1,median,q3,max\n";
  if (loo.records.empty()) return;
  const auto emit = [&](std::string_view name, const BoxStats& s) {
    out << name << ',' << s.n << ',' << format_double(loo.coverage()) << ','
        << format_double(s.mean) << ',';
    write_stats(out, s);
    out << '\n';
  };
  emit("abs", box_stats(abs_errors(loo.records)));
  emit("signed", box_stats(signed_errors(loo.records)));
}

void write_sweep(std::ostream& out, const SweepResult& result) {
  out << "radius_m,min_points,min_dist_m,n_records,coverage,mean_abs_err_db,min,q1,median,q3,max\n";
  for (const auto& row : result.rows) {
    out << format_double(row.radius_m) << ',' << row.min_points << ','
        << format_double(row.min_dist_m) << ',' << row.n_records << ','
        << format_double(row.coverage) << ',';
    if (row.abs_error) {
      out << format_double(row.abs_error->mean) << ',';
      write_stats(out, *row.abs_error);
    } else {
      out << ",,,,,";
    }
    out << '\n';
  }
}

void write_scatter(std::ostream& out, const ErrorSigmaScatter& scatter) {
  out << "point_id,sigma_db,abs_error_db\n";
  for (const auto& p : scatter.points) {
    out << p.point_id << ',' << format_double(p.sigma_db) << ',' << format_double(p.abs_error_db)
        << '\n';
  }
}

}  // namespace rsrp
