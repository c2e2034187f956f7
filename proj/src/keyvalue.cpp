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

#include "rsrp/keyvalue.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>

#include "rsrp/errors.hpp"
#include "text_util.hpp"

namespace rsrp {

KeyValueFile KeyValueFile::parse(std::istream& in, const std::string& source) {
  KeyValueFile kv;
  kv.source_ = source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidConfig(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = detail::trim(body.substr(0, eq));
    if (key.empty()) throw InvalidConfig(source + ":" + std::to_string(line_no) + ": empty key");
    kv.entries_.push_back(
        Entry{std::string(key), std::string(detail::trim(body.substr(eq + 1))), line_no});
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path.string());
  return parse(in, path.string());
}

std::optional<std::string> KeyValueFile::get(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->key == key) return it->value;
  }
  return std::nullopt;
}

std::vector<std::string> KeyValueFile::get_all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (e.key == key) out.push_back(e.value);
  }
  return out;
}

std::optional<double> KeyValueFile::get_double(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  double out = 0.0;
  if (!detail::parse_double(*v, out)) {
    throw InvalidConfig(source_ + ": '" + std::string(key) + "' is not a number: " + *v);
  }
  return out;
}

std::optional<long long> KeyValueFile::get_int(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  long long out = 0;
  if (!detail::parse_int(std::string_view(*v), out)) {
    throw InvalidConfig(source_ + ": '" + std::string(key) + "' is not an integer: " + *v);
  }
  return out;
}

std::optional<bool> KeyValueFile::get_bool(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw InvalidConfig(source_ + ": '" + std::string(key) + "' is not a boolean: " + *v);
}

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::string normalized(text);
  for (auto& c : normalized) {
    if (c == ',' || c == '\t') c = ' ';
  }
  for (auto token : detail::split(normalized, ' ')) {
    token = detail::trim(token);
    if (token.empty()) continue;
    double v = 0.0;
    if (!detail::parse_double(token, v)) {
      throw InvalidConfig(std::string(what) + ": not a number: '" + std::string(token) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rsrp
