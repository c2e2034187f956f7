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

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rsrp/eval.hpp"
#include "rsrp/predict.hpp"
#include "rsrp/shadowing.hpp"

namespace rsrp {

/// `# rsrp-oracle <version> config-hash=<hex>`
std::string provenance_line(std::string_view config_hash);

/// {target:{lat,lon}, headline_cell, headline_rsrp_dbm,
///  cells:[{cell_id, p0_dbm, beta, degenerate, n_points, predicted_rsrp_dbm}]}
/// Absent headline fields are null.
nlohmann::ordered_json to_json(const PredictionResult& result);

nlohmann::ordered_json to_json(const ShadowingEstimate& estimate);

/// point_id,cell_id,actual_rsrp_dbm,predicted_rsrp_dbm,error_db,local_sigma_db
void write_eval_records(std::ostream& out, std::span<const EvalRecord> records);

/// distribution,n,coverage,mean,min,q1,median,q3,max with one `abs` and one
/// `signed` row.
void write_eval_summary(std::ostream& out, const LooResult& loo);

/// radius_m,min_points,min_dist_m,n_records,coverage,mean_abs_err_db,min,q1,median,q3,max
/// Statistics are of |error|; they are empty for combinations without records.
void write_sweep(std::ostream& out, const SweepResult& result);

/// point_id,sigma_db,abs_error_db
void write_scatter(std::ostream& out, const ErrorSigmaScatter& scatter);

}  // namespace rsrp
