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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsrp {

/// Flat `key = value` text. `#` starts a comment line; keys may repeat.
class KeyValueFile {
 public:
  struct Entry {
    std::string key;
    std::string value;
    std::size_t line_no = 0;
  };

  /// Throws InvalidConfig on a line without '='.
  static KeyValueFile parse(std::istream& in, const std::string& source);
  /// Throws FileError, InvalidConfig.
  static KeyValueFile load(const std::filesystem::path& path);

  /// Last value for the key.
  std::optional<std::string> get(std::string_view key) const;
  std::vector<std::string> get_all(std::string_view key) const;
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const std::string& source() const noexcept { return source_; }

  std::optional<double> get_double(std::string_view key) const;
  std::optional<long long> get_int(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;

 private:
  std::vector<Entry> entries_;
  std::string source_;
};

/// Comma- or whitespace-separated numbers. Throws InvalidConfig.
std::vector<double> parse_double_list(std::string_view text, std::string_view what);

/// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace rsrp
