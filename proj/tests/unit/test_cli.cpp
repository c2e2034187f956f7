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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "rsrp/keyvalue.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using rsrp::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("rsrp-cli-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// One cell at the origin, a 600 m east-west street 100 m north of it.
const char* kSynth =
    "seed = 4\n"
    "sigma_db = SIGMA\n"
    "route = 35.70090 51.40221; 35.70090 51.40885\n"
    "cell = C1 35.70 51.40 -40 3.5\n";

// Street 2 km north of the cell, so consecutive distances barely change.
const char* kFarSynth =
    "seed = 5\n"
    "sigma_db = SIGMA\n"
    "route = 35.71800 51.39500; 35.71800 51.40500\n"
    "cell = C1 35.70 51.40 -10 3.5\n";

fs::path simulate(const TempDir& tmp, const std::string& sigma, const std::string& name = "sim",
                  const char* templ = kSynth) {
  std::string text = templ;
  text.replace(text.find("SIGMA"), 5, sigma);
  const auto conf = tmp.path / (name + ".conf");
  write(conf, text);
  const auto dir = tmp.path / name;
  const auto r = call({"simulate", "--config", conf.string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  return dir;
}

std::string strip_comment_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line + '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("simulate writes three files with provenance") {
  TempDir tmp;
  const auto dir = simulate(tmp, "4");
  for (const char* name : {"drive_test.csv", "cells.csv", "ground_truth.csv"}) {
    const auto text = slurp(dir / name);
    CHECK(text.rfind("# rsrp-oracle 0.1.0 config-hash=", 0) == 0);
  }
  const auto again = simulate(tmp, "4", "sim2");
  CHECK(slurp(dir / "drive_test.csv") == slurp(again / "drive_test.csv"));
}

TEST_CASE("invalid synth config is an input error") {
  TempDir tmp;
  write(tmp.path / "bad.conf", "seed = 1\nspeed_kmh = 90\nroute = 0 0; 0 1\ncell = A 0 0 -40 3\n");
  CHECK(call({"simulate", "--config", (tmp.path / "bad.conf").string(), "--out",
              (tmp.path / "o").string()})
            .code == 2);
  write(tmp.path / "bad2.conf", "mystery = 1\n");
  CHECK(call({"simulate", "--config", (tmp.path / "bad2.conf").string(), "--out",
              (tmp.path / "o").string()})
            .code == 2);
}

TEST_CASE("predict") {
  TempDir tmp;
  const auto dir = simulate(tmp, "0");
  const auto dt = (dir / "drive_test.csv").string();
  const auto cells = (dir / "cells.csv").string();

  SUBCASE("near data gives a headline") {
    const auto r = call({"predict", "--drive-test", dt, "--cells", cells, "--lat", "35.7009",
                         "--lon", "51.4050"});
    REQUIRE(r.code == 0);
    const auto body = strip_comment_lines(r.out);
    const auto j = nlohmann::json::parse(body);
    CHECK(j["headline_cell"] == "C1");
    CHECK(j["cells"].size() == 1);
    CHECK(j["cells"][0]["beta"].get<double>() == doctest::Approx(3.5).epsilon(1e-9));
    CHECK(j["target"]["lat"].get<double>() == 35.7009);
  }
  SUBCASE("empty region") {
    const auto r = call({"predict", "--drive-test", dt, "--cells", cells, "--lat", "10", "--lon",
                         "10", "--out", (tmp.path / "p").string()});
    CHECK(r.code == 3);
    const auto j = nlohmann::json::parse(strip_comment_lines(slurp(tmp.path / "p" / "prediction.jsonl")));
    CHECK(j["headline_cell"].is_null());
    CHECK(j["cells"].empty());
  }
  SUBCASE("missing cell file names the path") {
    const auto r = call({"predict", "--drive-test", dt, "--cells", "/no/such/cells.csv", "--lat",
                         "35.7", "--lon", "51.4"});
    CHECK(r.code == 2);
    CHECK(r.err.find("/no/such/cells.csv") != std::string::npos);
  }
  SUBCASE("bad flag values") {
    CHECK(call({"predict", "--drive-test", dt, "--cells", cells, "--lat", "95", "--lon", "0"}).code ==
          2);
    CHECK(call({"predict", "--drive-test", dt, "--cells", cells, "--lat", "35.7", "--lon", "51.4",
                "--fit", "ols"})
              .code == 2);
    CHECK(call({"predict", "--drive-test", dt, "--cells", cells}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
  }
}

TEST_CASE("evaluate") {
  TempDir tmp;
  SUBCASE("noiseless input is exact") {
    const auto dir = simulate(tmp, "0");
    const auto out = tmp.path / "eval";
    const auto r = call({"evaluate", "--drive-test", (dir / "drive_test.csv").string(), "--cells",
                         (dir / "cells.csv").string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    std::istringstream summary(strip_comment_lines(slurp(out / "summary.csv")));
    std::string header, abs_row;
    std::getline(summary, header);
    std::getline(summary, abs_row);
    CHECK(header == "distribution,n,coverage,mean,min,q1,median,q3,max");
    REQUIRE(abs_row.rfind("abs,", 0) == 0);
    std::istringstream fields(abs_row);
    std::string name, n, coverage, mean;
    std::getline(fields, name, ',');
    std::getline(fields, n, ',');
    std::getline(fields, coverage, ',');
    std::getline(fields, mean, ',');
    CHECK(std::stod(mean) < 1e-6);
    CHECK(fs::exists(out / "evaluation.csv"));
    CHECK(fs::exists(out / "scatter.csv"));
  }
  SUBCASE("noisy input reports n equal to the record count") {
    const auto dir = simulate(tmp, "4");
    const auto out = tmp.path / "eval";
    REQUIRE(call({"evaluate", "--drive-test", (dir / "drive_test.csv").string(), "--cells",
                  (dir / "cells.csv").string(), "--out", out.string()})
                .code == 0);
    const auto records = strip_comment_lines(slurp(out / "evaluation.csv"));
    const auto n_records =
        static_cast<std::size_t>(std::count(records.begin(), records.end(), '\n')) - 1;
    const auto summary = strip_comment_lines(slurp(out / "summary.csv"));
    CHECK(summary.find("abs," + std::to_string(n_records) + ",") != std::string::npos);
  }
  SUBCASE("empty dataset") {
    write(tmp.path / "empty.csv", "timestamp_ms,lat_deg,lon_deg,rsrp_dbm,cell_id\n");
    write(tmp.path / "cells.csv", "cell_id,lat_deg,lon_deg\nA,0,0\n");
    CHECK(call({"evaluate", "--drive-test", (tmp.path / "empty.csv").string(), "--cells",
                (tmp.path / "cells.csv").string(), "--out", (tmp.path / "o").string()})
              .code == 2);
  }
}

TEST_CASE("sweep") {
  TempDir tmp;
  const auto dir = simulate(tmp, "4");
  const std::vector<std::string> base{"sweep", "--drive-test", (dir / "drive_test.csv").string(),
                                      "--cells", (dir / "cells.csv").string()};
  const auto rows = [](const fs::path& file) {
    const auto body = strip_comment_lines(slurp(file));
    return static_cast<std::size_t>(std::count(body.begin(), body.end(), '\n')) - 1;
  };
  SUBCASE("single combination") {
    auto args = base;
    args.insert(args.end(), {"--sweep-radius-m", "60", "--sweep-min-points", "8",
                             "--sweep-min-dist-m", "10", "--out", (tmp.path / "one").string()});
    REQUIRE(call(args).code == 0);
    CHECK(rows(tmp.path / "one" / "sweep.csv") == 1);
  }
  SUBCASE("default grid, identical bytes on re-run") {
    auto a = base, b = base;
    a.insert(a.end(), {"--sweep-radius-m", "50", "--out", (tmp.path / "a").string()});
    b.insert(b.end(), {"--sweep-radius-m", "50", "--out", (tmp.path / "b").string(), "--threads", "3"});
    REQUIRE(call(a).code == 0);
    REQUIRE(call(b).code == 0);
    CHECK(rows(tmp.path / "a" / "sweep.csv") == 16);
    CHECK(slurp(tmp.path / "a" / "sweep.csv") == slurp(tmp.path / "b" / "sweep.csv"));
  }
  SUBCASE("config file with flag override") {
    write(tmp.path / "run.conf", "radius_m = 80\nfit = mle\nsweep_radius_m = 50, 100\n"
                                 "sweep_min_points = 8\nsweep_min_dist_m = 10 20\n");
    auto args = base;
    args.insert(args.end(), {"--config", (tmp.path / "run.conf").string(), "--out",
                             (tmp.path / "c").string(), "--sweep-min-points", "8,12"});
    REQUIRE(call(args).code == 0);
    CHECK(rows(tmp.path / "c" / "sweep.csv") == 8);
  }
  SUBCASE("unknown config key") {
    write(tmp.path / "bad.conf", "radius = 80\n");
    auto args = base;
    args.insert(args.end(), {"--config", (tmp.path / "bad.conf").string(), "--out",
                             (tmp.path / "d").string()});
    CHECK(call(args).code == 2);
  }
}

TEST_CASE("sigma") {
  TempDir tmp;
  SUBCASE("zero noise") {
    const auto dir = simulate(tmp, "0", "far", kFarSynth);
    const auto r = call({"sigma", "--drive-test", (dir / "drive_test.csv").string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(strip_comment_lines(r.out));
    // Only the path-loss change between neighbouring samples remains.
    CHECK(j["sigma_db"].get<double>() < 0.01);
    CHECK(j["n_pairs"].get<std::size_t>() > 100);
  }
  SUBCASE("sigma 6 lies in its interval") {
    const auto dir = simulate(tmp, "6");
    const auto r = call({"sigma", "--drive-test", (dir / "drive_test.csv").string(),
                         "--non-overlapping-pairs", "--out", (tmp.path / "s").string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(strip_comment_lines(slurp(tmp.path / "s" / "sigma.json")));
    CHECK(j["ci_low_db"].get<double>() <= 6.0);
    CHECK(j["ci_high_db"].get<double>() >= 6.0);
    CHECK(j["pairing"] == "non-overlapping");
  }
  SUBCASE("fewer than two pairs") {
    write(tmp.path / "dt.csv",
          "timestamp_ms,lat_deg,lon_deg,rsrp_dbm,cell_id\n0,35.7,51.4,-80,A\n1000,35.70001,51.4,-81,A\n");
    CHECK(call({"sigma", "--drive-test", (tmp.path / "dt.csv").string()}).code == 3);
  }
}

TEST_CASE("config hash ignores output location and thread count") {
  rsrp::cli::RunConfig a, b;
  a.out_dir = "/tmp/x";
  b.out_dir = "/tmp/y";
  b.threads = 7;
  CHECK(a.hash() == b.hash());
  b.pipeline.selection.radius_m = 60.0;
  CHECK(a.hash() != b.hash());
}
