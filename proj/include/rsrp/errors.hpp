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
#include <stdexcept>
#include <string>

namespace rsrp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with caller-supplied input: files, rows, configuration values.
/// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class FileError : public InputError {
 public:
  explicit FileError(const std::string& path)
      : InputError("cannot open file: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class SchemaMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// A row-level failure carrying the 1-based physical line number.
class RowError : public InputError {
 public:
  RowError(const std::string& kind, std::size_t line_no, const std::string& detail)
      : InputError(kind + " at line " + std::to_string(line_no) + ": " + detail),
        line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class MalformedRow : public RowError {
 public:
  MalformedRow(std::size_t line_no, const std::string& detail)
      : RowError("malformed row", line_no, detail) {}
};

class OutOfRange : public RowError {
 public:
  OutOfRange(std::size_t line_no, const std::string& detail)
      : RowError("value out of range", line_no, detail) {}
};

class DuplicateCellId : public InputError {
 public:
  explicit DuplicateCellId(const std::string& cell_id)
      : InputError("duplicate cell_id: " + cell_id), cell_id_(cell_id) {}
  const std::string& cell_id() const noexcept { return cell_id_; }

 private:
  std::string cell_id_;
};

class UnknownCell : public InputError {
 public:
  explicit UnknownCell(const std::string& cell_id)
      : InputError("serving cell has no site record: " + cell_id), cell_id_(cell_id) {}
  const std::string& cell_id() const noexcept { return cell_id_; }

 private:
  std::string cell_id_;
};

class InvalidConfig : public InputError {
 public:
  using InputError::InputError;
};

class DistanceBelowReference : public Error {
 public:
  explicit DistanceBelowReference(double distance_m)
      : Error("distance " + std::to_string(distance_m) + " m is below the 1 m reference distance") {}
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class WeightLengthMismatch : public Error {
 public:
  using Error::Error;
};

class SingularNormalMatrix : public Error {
 public:
  using Error::Error;
};

class EmptyDiffs : public Error {
 public:
  EmptyDiffs() : Error("no difference samples") {}
};

class InvalidAlpha : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class RouteTooShort : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace rsrp
