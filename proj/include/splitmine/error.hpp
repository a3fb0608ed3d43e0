// Copyright 2026 The Splitmine Authors
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
#include <stdexcept>
#include <string>

namespace splitmine {

/// Base class for all errors raised by the library. Messages are single-line
/// so the CLI can forward them verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Bad configuration: unknown format tag, unreadable auxiliary file,
/// inconsistent option values.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

/// Malformed input data, carrying a position. Line-oriented inputs report a
/// 1-based line number; the XML reader reports a byte offset and the element
/// path at the point of failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::uint64_t line)
      : Error(message + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  ParseError(const std::string& message, std::uint64_t byte_offset,
             const std::string& element_path)
      : Error(message + " (byte " + std::to_string(byte_offset) + ", at " +
              (element_path.empty() ? std::string("<root>") : element_path) +
              ")"),
        byte_offset_(byte_offset),
        element_path_(element_path) {}

  const char* kind() const noexcept override { return "parse"; }

  std::uint64_t line() const { return line_; }
  std::uint64_t byte_offset() const { return byte_offset_; }
  const std::string& element_path() const { return element_path_; }

 private:
  std::uint64_t line_ = 0;
  std::uint64_t byte_offset_ = 0;
  std::string element_path_;
};

/// Structurally valid input that violates an operation's precondition, e.g. a
/// predictions file shorter than the benchmark or partition sizes exceeding
/// the corpus.
class InputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "input"; }
};

}  // namespace splitmine
