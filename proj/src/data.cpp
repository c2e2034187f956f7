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

#include "rsrp/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "rsrp/errors.hpp"
#include "text_util.hpp"

namespace rsrp {

namespace {

constexpr std::string_view kDriveTestHeader = "timestamp_ms,lat_deg,lon_deg,rsrp_dbm,cell_id";
constexpr std::string_view kCellSiteHeader = "cell_id,lat_deg,lon_deg";

// Reads the next line that is neither blank nor a `#` comment.
bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    return true;
  }
  return false;
}

void expect_header(std::istream& in, std::size_t& line_no, std::string_view expected,
                   const std::string& source) {
  std::string line;
  if (!next_content_line(in, line, line_no)) {
    throw SchemaMismatch(source + ": missing header, expected '" + std::string(expected) + "'");
  }
  if (detail::trim(line) != expected) {
    throw SchemaMismatch(source + ": header '" + line + "' does not match '" +
                         std::string(expected) + "'");
  }
}

GeoPoint parse_position(std::string_view lat, std::string_view lon, std::size_t line_no) {
  GeoPoint p;
  if (!detail::parse_double(lat, p.lat_deg)) throw MalformedRow(line_no, "bad lat_deg");
  if (!detail::parse_double(lon, p.lon_deg)) throw MalformedRow(line_no, "bad lon_deg");
  if (!p.valid()) {
    throw OutOfRange(line_no, "position (" + std::string(lat) + ", " + std::string(lon) +
                                  ") outside WGS84 range");
  }
  return p;
}

Measurement parse_measurement(std::string_view line, std::size_t line_no) {
  const auto fields = detail::split(line, ',');
  if (fields.size() != 5) {
    throw MalformedRow(line_no, "expected 5 fields, got " + std::to_string(fields.size()));
  }
  Measurement m;
  if (!detail::parse_int(detail::trim(fields[0]), m.timestamp_ms)) {
    throw MalformedRow(line_no, "bad timestamp_ms");
  }
  if (m.timestamp_ms < 0) throw OutOfRange(line_no, "negative timestamp_ms");
  m.pos = parse_position(detail::trim(fields[1]), detail::trim(fields[2]), line_no);

  const auto rsrp_field = detail::trim(fields[3]);
  if (!rsrp_field.empty()) {
    double v = 0.0;
    if (!detail::parse_double(rsrp_field, v)) throw MalformedRow(line_no, "bad rsrp_dbm");
    if (!(v >= kRsrpMinDbm && v <= kRsrpMaxDbm)) {
      throw OutOfRange(line_no, "rsrp_dbm " + std::string(rsrp_field) + " outside [-150, 0]");
    }
    m.rsrp_dbm = v;
  }
  m.serving_cell = std::string(detail::trim(fields[4]));
  if (m.rsrp_dbm && m.serving_cell.empty()) {
    throw MalformedRow(line_no, "measured row without cell_id");
  }
  return m;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path.string());
  return in;
}

}  // namespace

std::size_t DriveTestDataset::measured_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      measurements.begin(), measurements.end(), [](const Measurement& m) { return m.has_rsrp(); }));
}

DriveTestDataset make_dataset(std::vector<Measurement> measurements, std::string source_path) {
  std::stable_sort(measurements.begin(), measurements.end(),
                   [](const Measurement& a, const Measurement& b) {
                     return a.timestamp_ms < b.timestamp_ms;
                   });
  for (std::size_t i = 0; i < measurements.size(); ++i) measurements[i].id = i;
  return DriveTestDataset{std::move(measurements), std::move(source_path)};
}

DriveTestDataset read_drive_test(std::istream& in, std::string source,
                                 std::vector<RowIssue>* issues) {
  std::size_t line_no = 0;
  expect_header(in, line_no, kDriveTestHeader, source);

  std::vector<Measurement> rows;
  std::string line;
  while (next_content_line(in, line, line_no)) {
    try {
      rows.push_back(parse_measurement(line, line_no));
    } catch (const RowError& e) {
      if (issues == nullptr) throw;
      issues->push_back(RowIssue{e.line_no(), e.what()});
    }
  }
  return make_dataset(std::move(rows), std::move(source));
}

DriveTestDataset load_drive_test(const std::filesystem::path& path, std::vector<RowIssue>* issues) {
  auto in = open_input(path);
  return read_drive_test(in, path.string(), issues);
}

void write_drive_test(std::ostream& out, const DriveTestDataset& dataset) {
  out << kDriveTestHeader << '\n';
  for (const auto& m : dataset.measurements) {
    out << m.timestamp_ms << ',' << format_double(m.pos.lat_deg) << ','
        << format_double(m.pos.lon_deg) << ',';
    if (m.rsrp_dbm) out << format_double(*m.rsrp_dbm);
    out << ',' << m.serving_cell << '\n';
  }
}

std::vector<CellSite> read_cell_sites(std::istream& in, const std::string& source) {
  std::size_t line_no = 0;
  expect_header(in, line_no, kCellSiteHeader, source);

  std::vector<CellSite> sites;
  std::string line;
  while (next_content_line(in, line, line_no)) {
    const auto fields = detail::split(line, ',');
    if (fields.size() != 3) {
      throw MalformedRow(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    }
    CellSite site;
    site.cell_id = std::string(detail::trim(fields[0]));
    if (site.cell_id.empty()) throw MalformedRow(line_no, "empty cell_id");
    site.pos = parse_position(detail::trim(fields[1]), detail::trim(fields[2]), line_no);
    sites.push_back(std::move(site));
  }
  // Validates uniqueness.
  SiteIndex index(sites);
  return sites;
}

std::vector<CellSite> load_cell_sites(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_cell_sites(in, path.string());
}

void write_cell_sites(std::ostream& out, const std::vector<CellSite>& sites) {
  out << kCellSiteHeader << '\n';
  for (const auto& s : sites) {
    out << s.cell_id << ',' << format_double(s.pos.lat_deg) << ',' << format_double(s.pos.lon_deg)
        << '\n';
  }
}

SiteIndex::SiteIndex(std::vector<CellSite> sites) : sites_(std::move(sites)) {
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (!by_id_.emplace(sites_[i].cell_id, i).second) throw DuplicateCellId(sites_[i].cell_id);
  }
}

const CellSite* SiteIndex::find(const CellId& id) const noexcept {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &sites_[it->second];
}

const CellSite& SiteIndex::at(const CellId& id) const {
  if (const auto* site = find(id)) return *site;
  throw UnknownCell(id);
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace rsrp
