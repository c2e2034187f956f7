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

#include "rsrp/synth.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "rsrp/errors.hpp"
#include "rsrp/pathloss.hpp"
#include "text_util.hpp"

namespace rsrp {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 to_unit(const GeoPoint& p) {
  const double lat = p.lat_deg * EarthModel::deg_to_rad;
  const double lon = p.lon_deg * EarthModel::deg_to_rad;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

GeoPoint from_unit(const Vec3& v) {
  const double lat = std::atan2(v[2], std::hypot(v[0], v[1]));
  const double lon = std::atan2(v[1], v[0]);
  return {lat / EarthModel::deg_to_rad, lon / EarthModel::deg_to_rad};
}

// Point a fraction f of the way along the great circle from a to b.
GeoPoint slerp(const GeoPoint& a, const GeoPoint& b, double f) {
  const Vec3 u = to_unit(a);
  const Vec3 v = to_unit(b);
  const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  const Vec3 cross{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                   u[0] * v[1] - u[1] * v[0]};
  const double omega = std::atan2(std::hypot(cross[0], cross[1], cross[2]), dot);
  if (omega < 1e-15) return a;
  const double wa = std::sin((1.0 - f) * omega) / std::sin(omega);
  const double wb = std::sin(f * omega) / std::sin(omega);
  return from_unit({wa * u[0] + wb * v[0], wa * u[1] + wb * v[1], wa * u[2] + wb * v[2]});
}

std::vector<GeoPoint> sample_route(const std::vector<GeoPoint>& route, double spacing_m) {
  std::vector<double> seg_len;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < route.size(); ++k) {
    seg_len.push_back(great_circle_distance(route[k], route[k + 1]));
    total += seg_len.back();
  }
  const auto n = static_cast<std::size_t>(std::floor(total / spacing_m + 1e-9)) + 1;
  std::vector<GeoPoint> samples;
  samples.reserve(n);
  std::size_t seg = 0;
  double seg_start = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) * spacing_m;
    while (seg + 1 < seg_len.size() && s > seg_start + seg_len[seg]) {
      seg_start += seg_len[seg];
      ++seg;
    }
    const double f = seg_len[seg] > 0.0 ? std::min((s - seg_start) / seg_len[seg], 1.0) : 0.0;
    samples.push_back(slerp(route[seg], route[seg + 1], f));
  }
  return samples;
}

CellId parse_token(std::string_view t) { return CellId(detail::trim(t)); }

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  for (auto t : detail::split(s, ' ')) {
    t = detail::trim(t);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

double number(std::string_view t, const std::string& what) {
  double v = 0.0;
  if (!detail::parse_double(t, v)) throw InvalidConfig(what + ": not a number: '" + std::string(t) + "'");
  return v;
}

}  // namespace

double NormalSource::uniform() noexcept {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double NormalSource::standard_normal() noexcept {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SynthConfig::validate() const {
  if (cells.empty()) throw InvalidConfig("simulation needs at least one cell");
  for (const auto& c : cells) {
    if (c.id.empty()) throw InvalidConfig("cell with empty id");
    if (!c.pos.valid()) throw InvalidConfig("cell " + c.id + " position out of range");
    const auto finite = [](const ChannelParams& p) {
      return std::isfinite(p.p0_dbm) && std::isfinite(p.beta);
    };
    if (!finite(c.channel) || (c.zone_b_channel && !finite(*c.zone_b_channel))) {
      throw InvalidConfig("cell " + c.id + " has non-finite channel parameters");
    }
  }
  SiteIndex unique_ids([this] {
    std::vector<CellSite> s;
    for (const auto& c : cells) s.push_back(CellSite{c.id, c.pos});
    return s;
  }());
  if (route.size() < 2) throw RouteTooShort("route needs at least 2 vertices");
  for (const auto& p : route) {
    if (!p.valid()) throw InvalidConfig("route vertex out of range");
  }
  if (!(speed_kmh > 0.0 && speed_kmh <= 40.0)) {
    throw InvalidConfig("speed_kmh must lie in (0, 40], got " + std::to_string(speed_kmh));
  }
  if (!(sample_interval_s > 0.0) || !std::isfinite(sample_interval_s)) {
    throw InvalidConfig("sample_interval_s must be positive");
  }
  if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db) ||
      (zone_b_sigma_db && !(*zone_b_sigma_db >= 0.0 && std::isfinite(*zone_b_sigma_db)))) {
    throw InvalidConfig("sigma_db must be finite and non-negative");
  }
  if (!(missing_rsrp_prob >= 0.0 && missing_rsrp_prob < 1.0)) {
    throw InvalidConfig("missing_rsrp_prob must lie in [0, 1)");
  }
  if (start_timestamp_ms < 0) throw InvalidConfig("start_timestamp_ms must be non-negative");
}

double true_mean_rsrp(const SynthCell& cell, const GeoPoint& pos,
                      const std::optional<ZoneSplit>& split) {
  const bool zone_b = split && split->in_zone_b(pos) && cell.zone_b_channel;
  const auto& ch = zone_b ? *cell.zone_b_channel : cell.channel;
  const double d = great_circle_distance(pos, cell.pos);
  return ch.p0_dbm - ch.beta * log_distance_regressor(d);
}

SynthScene generate(const SynthConfig& config) {
  config.validate();
  const auto positions = sample_route(config.route, config.spacing_m());
  if (positions.size() < 2) {
    throw RouteTooShort("route yields " + std::to_string(positions.size()) +
                        " sample(s) at spacing " + std::to_string(config.spacing_m()) + " m");
  }

  NormalSource rng(config.seed);
  SynthScene scene;
  for (const auto& c : config.cells) scene.sites.push_back(CellSite{c.id, c.pos});

  std::vector<Measurement> ms;
  ms.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto& pos = positions[i];
    std::size_t serving = 0;
    double best = true_mean_rsrp(config.cells[0], pos, config.zone_split);
    for (std::size_t k = 1; k < config.cells.size(); ++k) {
      const double v = true_mean_rsrp(config.cells[k], pos, config.zone_split);
      if (v > best) {
        best = v;
        serving = k;
      }
    }
    const bool zone_b = config.zone_split && config.zone_split->in_zone_b(pos);
    const double sigma = zone_b && config.zone_b_sigma_db ? *config.zone_b_sigma_db : config.sigma_db;
    const double noise = rng.normal(sigma);
    const bool dropped = config.missing_rsrp_prob > 0.0 && rng.uniform() <= config.missing_rsrp_prob;

    Measurement m;
    m.id = i;
    m.timestamp_ms = config.start_timestamp_ms +
                     std::llround(static_cast<double>(i) * config.sample_interval_s * 1000.0);
    m.pos = pos;
    m.serving_cell = config.cells[serving].id;
    const double rsrp = best + noise;
    if (!dropped && rsrp >= kRsrpMinDbm && rsrp <= kRsrpMaxDbm) m.rsrp_dbm = rsrp;
    ms.push_back(std::move(m));

    scene.truth.push_back(GroundTruthRow{i, best, noise,
                                         great_circle_distance(pos, config.cells[serving].pos),
                                         config.cells[serving].id});
  }
  scene.dataset = make_dataset(std::move(ms), "synthetic:seed=" + std::to_string(config.seed));
  return scene;
}

void write_ground_truth(std::ostream& out, const std::vector<GroundTruthRow>& rows) {
  out << "point_id,true_mean_dbm,noise_db,true_dist_m,serving_cell\n";
  for (const auto& r : rows) {
    out << r.point_id << ',' << format_double(r.true_mean_dbm) << ',' << format_double(r.noise_db)
        << ',' << format_double(r.true_dist_m) << ',' << r.serving_cell << '\n';
  }
}

SynthConfig synth_config_from(const KeyValueFile& kv) {
  SynthConfig cfg;
  if (auto v = kv.get_int("seed")) cfg.seed = static_cast<std::uint64_t>(*v);
  if (auto v = kv.get_double("speed_kmh")) cfg.speed_kmh = *v;
  if (auto v = kv.get_double("sample_interval_s")) cfg.sample_interval_s = *v;
  if (auto v = kv.get_double("sigma_db")) cfg.sigma_db = *v;
  if (auto v = kv.get_double("zone_b_sigma_db")) cfg.zone_b_sigma_db = *v;
  if (auto v = kv.get_int("start_timestamp_ms")) cfg.start_timestamp_ms = *v;
  if (auto v = kv.get_double("missing_rsrp_prob")) cfg.missing_rsrp_prob = *v;

  if (auto route = kv.get("route")) {
    for (auto vertex : detail::split(*route, ';')) {
      if (detail::trim(vertex).empty()) continue;
      const auto t = tokens(vertex);
      if (t.size() != 2) throw InvalidConfig("route vertex needs 'lat lon': '" + std::string(vertex) + "'");
      cfg.route.push_back({number(t[0], "route lat"), number(t[1], "route lon")});
    }
  }
  for (const auto& line : kv.get_all("cell")) {
    const auto t = tokens(line);
    if (t.size() != 5) throw InvalidConfig("cell needs 'id lat lon p0_dbm beta': '" + line + "'");
    cfg.cells.push_back(SynthCell{parse_token(t[0]),
                                  {number(t[1], "cell lat"), number(t[2], "cell lon")},
                                  {number(t[3], "cell p0_dbm"), number(t[4], "cell beta")},
                                  std::nullopt});
  }
  if (auto split = kv.get("zone_split")) {
    const auto t = tokens(*split);
    if (t.size() != 2 || (t[0] != "lat" && t[0] != "lon")) {
      throw InvalidConfig("zone_split needs 'lat|lon threshold_deg'");
    }
    cfg.zone_split = ZoneSplit{t[0] == "lat" ? ZoneSplit::Axis::Lat : ZoneSplit::Axis::Lon,
                               number(t[1], "zone_split threshold")};
  }
  for (const auto& line : kv.get_all("zone_b_cell")) {
    const auto t = tokens(line);
    if (t.size() != 3) throw InvalidConfig("zone_b_cell needs 'id p0_dbm beta': '" + line + "'");
    const auto id = parse_token(t[0]);
    bool found = false;
    for (auto& c : cfg.cells) {
      if (c.id == id) {
        c.zone_b_channel = ChannelParams{number(t[1], "zone_b p0_dbm"), number(t[2], "zone_b beta")};
        found = true;
      }
    }
    if (!found) throw InvalidConfig("zone_b_cell names unknown cell '" + id + "'");
  }
  for (const auto& e : kv.entries()) {
    static constexpr std::array known{"seed",         "speed_kmh",         "sample_interval_s",
                                      "sigma_db",     "zone_b_sigma_db",   "start_timestamp_ms",
                                      "missing_rsrp_prob", "route",        "cell",
                                      "zone_split",   "zone_b_cell"};
    if (std::find(known.begin(), known.end(), e.key) == known.end()) {
      throw InvalidConfig(kv.source() + ":" + std::to_string(e.line_no) + ": unknown key '" +
                          e.key + "'");
    }
  }
  return cfg;
}

}  // namespace rsrp
