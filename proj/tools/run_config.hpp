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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "rsrp/eval.hpp"
#include "rsrp/keyvalue.hpp"
#include "rsrp/predict.hpp"
#include "rsrp/shadowing.hpp"

namespace rsrp::cli {

/// Effective settings of one CLI invocation: config file first, flags on top.
struct RunConfig {
  std::optional<std::filesystem::path> drive_test;
  std::optional<std::filesystem::path> cells;
  std::optional<std::filesystem::path> out_dir;
  PipelineConfig pipeline;
  DiffOptions diff;
  double alpha = 0.05;
  SweepAxes axes;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  /// Throws InvalidConfig.
  void validate() const;

  /// Sorted `key = value` lines of every setting that can change output
  /// bytes (the output directory and thread count are left out).
  std::string canonical() const;
  std::string hash() const { return fnv1a_hex(canonical()); }
};

/// Applies the keys of a run-config file. Relative paths resolve against
/// the file's directory. Throws InvalidConfig on unknown keys or bad values.
void apply_config_file(RunConfig& config, const KeyValueFile& kv);

}  // namespace rsrp::cli
