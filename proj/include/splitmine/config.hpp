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

// Flat key=value configuration files and run manifests. The same format is
// used for both so a manifest diffs cleanly against the config that
// produced it.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "splitmine/error.hpp"

namespace splitmine {

/// key=value per line; '#' starts a comment unless it appears in a value;
/// keys are trimmed, values keep interior spaces. Later keys override.
inline std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::uint64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value", line_number);
    std::size_t key_end = line.find_last_not_of(" \t", eq == 0 ? 0 : eq - 1);
    if (eq == 0 || key_end == std::string::npos || key_end < first)
      throw ParseError("empty key", line_number);
    std::string key = line.substr(first, key_end - first + 1);
    std::string value = line.substr(eq + 1);
    out[std::move(key)] = std::move(value);
  }
  return out;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  return parse_config(in);
}

/// FNV-1a 64-bit over a whole stream; the manifest's input fingerprint.
inline std::uint64_t fnv1a64(std::istream& in) {
  std::uint64_t hash = 14695981039346656037ULL;
  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 1099511628211ULL;
    }
    if (n < static_cast<std::streamsize>(sizeof buffer)) break;
  }
  return hash;
}

inline std::string to_hex(std::uint64_t v) {
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[v & 0xF];
    v >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

/// Shortest decimal form that round-trips, for config echo in manifests.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

/// Manifest entries are written in the given order, key=value, LF.
inline void write_manifest(std::ostream& out,
                           const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

/// A streambuf wrapper that folds every byte it passes through into an
/// FNV-1a digest, so a dump can be fingerprinted in the same pass that
/// parses it.
class DigestingBuf : public std::streambuf {
 public:
  explicit DigestingBuf(std::streambuf& source) : source_(source) {}

  std::uint64_t digest() const { return hash_; }

 protected:
  int underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    std::streamsize n = source_.sgetn(buffer_, sizeof buffer_);
    if (n <= 0) return traits_type::eof();
    for (std::streamsize i = 0; i < n; ++i) {
      hash_ ^= static_cast<unsigned char>(buffer_[i]);
      hash_ *= 1099511628211ULL;
    }
    setg(buffer_, buffer_, buffer_ + n);
    return traits_type::to_int_type(*gptr());
  }

 private:
  std::streambuf& source_;
  std::uint64_t hash_ = 14695981039346656037ULL;
  char buffer_[1 << 16];
};

}  // namespace splitmine
