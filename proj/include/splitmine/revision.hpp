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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace splitmine {

/// One revision of one page. Text is raw wikitext; empty text is a blanking
/// edit and is retained.
struct RawRevision {
  long long page_id = 0;
  std::string page_title;
  long long revision_id = 0;
  long long timestamp = 0;  // seconds since the Unix epoch, UTC
  std::string wikitext;
};

/// A page with its full revision history, ordered by (timestamp,
/// revision_id) ascending.
struct PageRevisionStream {
  long long page_id = 0;
  std::string page_title;
  std::vector<RawRevision> revisions;
};

/// Parses an ISO-8601 UTC instant with seconds precision
/// ("2006-01-02T15:04:05Z") into epoch seconds.
inline std::optional<long long> parse_timestamp(std::string_view iso) {
  if (iso.size() != 20 || iso[4] != '-' || iso[7] != '-' || iso[10] != 'T' ||
      iso[13] != ':' || iso[16] != ':' || iso[19] != 'Z')
    return std::nullopt;
  auto digits = [&](int from, int len, long long& out) {
    out = 0;
    for (int i = from; i < from + len; ++i) {
      if (iso[i] < '0' || iso[i] > '9') return false;
      out = out * 10 + (iso[i] - '0');
    }
    return true;
  };
  long long y, mo, d, h, mi, s;
  if (!digits(0, 4, y) || !digits(5, 2, mo) || !digits(8, 2, d) || !digits(11, 2, h) ||
      !digits(14, 2, mi) || !digits(17, 2, s))
    return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
    return std::nullopt;
  // Days since epoch from civil date (Gregorian, proleptic).
  long long yy = y - (mo <= 2 ? 1 : 0);
  long long era = (yy >= 0 ? yy : yy - 399) / 400;
  long long yoe = yy - era * 400;
  long long doy = (153 * (mo + (mo > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  long long days = era * 146097 + doe - 719468;
  return ((days * 24 + h) * 60 + mi) * 60 + s;
}

inline void sort_revisions(PageRevisionStream& page) {
  std::sort(page.revisions.begin(), page.revisions.end(),
            [](const RawRevision& a, const RawRevision& b) {
              return std::pair(a.timestamp, a.revision_id) <
                     std::pair(b.timestamp, b.revision_id);
            });
}

/// Consecutive revision pairs (r_i, r_{i+1}); n revisions yield n-1 pairs.
inline std::vector<std::pair<const RawRevision*, const RawRevision*>> adjacent_pairs(
    const PageRevisionStream& page) {
  std::vector<std::pair<const RawRevision*, const RawRevision*>> pairs;
  if (page.revisions.size() < 2) return pairs;
  pairs.reserve(page.revisions.size() - 1);
  for (std::size_t i = 0; i + 1 < page.revisions.size(); ++i)
    pairs.emplace_back(&page.revisions[i], &page.revisions[i + 1]);
  return pairs;
}

}  // namespace splitmine
