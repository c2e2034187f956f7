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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsrp/geo.hpp"

namespace rsrp {

/// Serving-cell identifier. Opaque: only identity matters.
using CellId = std::string;
using MeasurementId = std::uint64_t;

inline constexpr double kRsrpMinDbm = -150.0;
inline constexpr double kRsrpMaxDbm = 0.0;

/// One drive-test sample. An absent rsrp_dbm marks a position that was
/// logged without a power measurement.
struct Measurement {
  MeasurementId id = 0;
  std::int64_t timestamp_ms = 0;
  GeoPoint pos;
  std::optional<double> rsrp_dbm;
  CellId serving_cell;

  bool has_rsrp() const noexcept { return rsrp_dbm.has_value(); }
  friend bool operator==(const Measurement&, const Measurement&) = default;
};

struct CellSite {
  CellId cell_id;
  GeoPoint pos;

  friend bool operator==(const CellSite&, const CellSite&) = default;
};

/// Time-ordered measurements. Ids are the positions in that order.
struct DriveTestDataset {
  std::vector<Measurement> measurements;
  std::string source_path;

  std::size_t size() const noexcept { return measurements.size(); }
  std::size_t measured_count() const noexcept;
};

/// Sorts by timestamp (stable) and renumbers ids 0..n-1 in that order.
DriveTestDataset make_dataset(std::vector<Measurement> measurements, std::string source_path = {});

/// A rejected input row, reported instead of thrown when the caller asks
/// for lenient loading.
struct RowIssue {
  std::size_t line_no = 0;
  std::string message;
};

/// Drive-test CSV: header `timestamp_ms,lat_deg,lon_deg,rsrp_dbm,cell_id`.
/// Lines starting with `#` and blank lines are ignored.
///
/// With `issues == nullptr` the first bad row throws (MalformedRow,
/// OutOfRange); otherwise bad rows are skipped and recorded, so that
/// data rows == measurements + issues.
DriveTestDataset read_drive_test(std::istream& in, std::string source,
                                 std::vector<RowIssue>* issues = nullptr);
DriveTestDataset load_drive_test(const std::filesystem::path& path,
                                 std::vector<RowIssue>* issues = nullptr);
void write_drive_test(std::ostream& out, const DriveTestDataset& dataset);

/// Cell-site CSV: header `cell_id,lat_deg,lon_deg`.
std::vector<CellSite> read_cell_sites(std::istream& in, const std::string& source);
std::vector<CellSite> load_cell_sites(const std::filesystem::path& path);
void write_cell_sites(std::ostream& out, const std::vector<CellSite>& sites);

/// Lookup table over a site database with unique ids.
class SiteIndex {
 public:
  SiteIndex() = default;
  /// Throws DuplicateCellId.
  explicit SiteIndex(std::vector<CellSite> sites);

  const CellSite* find(const CellId& id) const noexcept;
  /// Throws UnknownCell.
  const CellSite& at(const CellId& id) const;
  bool contains(const CellId& id) const noexcept { return find(id) != nullptr; }
  std::size_t size() const noexcept { return sites_.size(); }
  const std::vector<CellSite>& sites() const noexcept { return sites_; }

 private:
  std::vector<CellSite> sites_;
  std::map<CellId, std::size_t, std::less<>> by_id_;
};

/// Shortest round-trip decimal form, used by every text writer.
std::string format_double(double v);

}  // namespace rsrp
