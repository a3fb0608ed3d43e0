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

// Corpus assembly: similarity thresholding, per-complex-sentence argmax
// selection, noise filtering, seeded partitioning, TSV serialization and
// corpus statistics.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "splitmine/error.hpp"
#include "splitmine/mining.hpp"

namespace splitmine {

struct PartitionSizes {
  long long tune = 5000;
  long long validation = 5000;
  long long test = 5000;
};

struct MinerConfig {
  double delta = 0.2;                 // minimum filter BLEU for each simple side
  int max_consecutive_repeats = 3;    // more repeats than this is vandalism noise
  int max_token_length = 25;          // characters; longer tokens are noise
  std::string profanity_path;         // optional token blocklist, one per line
  PartitionSizes partition_sizes;
  std::uint64_t rng_seed = 0;
  std::string delimiter = " <::> ";   // joins the two simple sentences in TSV
};

struct Provenance {
  long long page_id = 0;
  long long older_revision_id = 0;
  long long newer_revision_id = 0;
  Direction direction = Direction::split;

  bool operator==(const Provenance&) const = default;
};

/// An accepted corpus record: one complex sentence and its two-sentence
/// rewrite.
struct SplitExample {
  Sentence complex;
  std::array<Sentence, 2> simples;
  Provenance provenance;

  bool operator==(const SplitExample&) const = default;
};

/// Keeps candidates whose two filter scores are both at least delta (the
/// discard rule is strictly "less than delta"). Order preserved.
inline std::vector<SplitCandidate> threshold_filter(std::vector<SplitCandidate> candidates,
                                                    double delta) {
  std::vector<SplitCandidate> kept;
  kept.reserve(candidates.size());
  for (auto& c : candidates)
    if (c.bleu_c_s1 >= delta && c.bleu_c_s2 >= delta) kept.push_back(std::move(c));
  return kept;
}

/// Groups candidates by exact complex token sequence across the whole mined
/// stream and keeps, per group, the candidate maximizing
/// bleu_c_s1 + bleu_c_s2. Ties break to the lexicographically first
/// provenance (page_id, older revision id, S1 position). Output is sorted by
/// (page_id, revision pair, C position).
inline std::vector<SplitCandidate> select_best(std::vector<SplitCandidate> candidates) {
  std::unordered_map<std::string, std::size_t> best;  // complex key -> index
  auto tie_key = [](const SplitCandidate& c) {
    return std::tuple(c.page_id, c.older_revision_id, c.simple_position);
  };
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::string key = candidates[i].complex.raw();
    auto [it, inserted] = best.try_emplace(key, i);
    if (inserted) continue;
    const SplitCandidate& incumbent = candidates[it->second];
    const SplitCandidate& challenger = candidates[i];
    double old_sum = incumbent.bleu_c_s1 + incumbent.bleu_c_s2;
    double new_sum = challenger.bleu_c_s1 + challenger.bleu_c_s2;
    if (new_sum > old_sum || (new_sum == old_sum && tie_key(challenger) < tie_key(incumbent)))
      it->second = i;
  }
  std::vector<SplitCandidate> out;
  out.reserve(best.size());
  std::vector<std::size_t> indices;
  indices.reserve(best.size());
  for (const auto& [key, idx] : best) indices.push_back(idx);
  std::sort(indices.begin(), indices.end());
  for (std::size_t idx : indices) out.push_back(std::move(candidates[idx]));
  std::stable_sort(out.begin(), out.end(), [](const SplitCandidate& a, const SplitCandidate& b) {
    return std::tuple(a.page_id, a.older_revision_id, a.newer_revision_id, a.complex_position) <
           std::tuple(b.page_id, b.older_revision_id, b.newer_revision_id, b.complex_position);
  });
  return out;
}

namespace detail {

inline std::size_t utf8_length(std::string_view token) {
  std::size_t n = 0;
  for (unsigned char c : token)
    if ((c & 0xC0) != 0x80) ++n;  // skip continuation bytes
  return n;
}

inline std::string ascii_fold(std::string_view token) {
  std::string out(token);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

/// The three vandalism-noise rules, loaded once per run. Matching is per
/// token: runs of identical consecutive tokens, over-long tokens, and exact
/// (case-folded) membership in the profanity list.
class NoiseRules {
 public:
  static NoiseRules load(const MinerConfig& cfg) {
    NoiseRules rules;
    rules.max_consecutive_repeats_ = cfg.max_consecutive_repeats;
    rules.max_token_length_ = cfg.max_token_length;
    if (!cfg.profanity_path.empty()) {
      std::ifstream in(cfg.profanity_path);
      if (!in) throw ConfigError("cannot read profanity list: " + cfg.profanity_path);
      std::string line;
      while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        rules.profanity_.insert(detail::ascii_fold(line.substr(b, e - b + 1)));
      }
    }
    return rules;
  }

  bool keep(const SplitCandidate& candidate) const {
    return keep(candidate.complex) && keep(candidate.simple_1) && keep(candidate.simple_2);
  }

  bool keep(const Sentence& s) const {
    int run = 0;
    const std::string* prev = nullptr;
    for (const std::string& tok : s.tokens) {
      run = (prev && *prev == tok) ? run + 1 : 1;
      if (run > max_consecutive_repeats_) return false;
      if (detail::utf8_length(tok) > static_cast<std::size_t>(max_token_length_)) return false;
      if (!profanity_.empty() && profanity_.count(detail::ascii_fold(tok))) return false;
      prev = &tok;
    }
    return true;
  }

 private:
  int max_consecutive_repeats_ = 3;
  int max_token_length_ = 25;
  std::unordered_set<std::string> profanity_;
};

/// Per-item noise predicate, true when the candidate should be kept.
inline bool noise_filter(const SplitCandidate& candidate, const NoiseRules& rules) {
  return rules.keep(candidate);
}

inline SplitExample to_example(SplitCandidate candidate) {
  SplitExample ex;
  ex.complex = std::move(candidate.complex);
  ex.simples = {std::move(candidate.simple_1), std::move(candidate.simple_2)};
  ex.provenance = {candidate.page_id, candidate.older_revision_id,
                   candidate.newer_revision_id, candidate.direction};
  return ex;
}

struct CorpusPartitions {
  std::vector<SplitExample> train;
  std::vector<SplitExample> tune;
  std::vector<SplitExample> validation;
  std::vector<SplitExample> test;
};

namespace detail {

// Portable bounded draw: std::uniform_int_distribution is implementation
// defined, and partitions must reproduce bit-for-bit everywhere.
inline std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t threshold = (~std::uint64_t{0} - n + 1) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

template <typename T>
inline void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i)
    std::swap(items[i - 1], items[bounded_random(rng, i)]);
}

}  // namespace detail

/// Seeded uniform shuffle, then the first blocks go to tune, validation and
/// test, the remainder to train. The shuffle operates on unique-complex
/// groups so every distinct complex sentence lands in exactly one partition;
/// with a deduplicated corpus the block sizes are exact.
inline CorpusPartitions partition(const std::vector<SplitExample>& examples,
                                  const MinerConfig& cfg) {
  const PartitionSizes sizes = cfg.partition_sizes;
  long long reserved = sizes.tune + sizes.validation + sizes.test;
  if (static_cast<long long>(examples.size()) < reserved)
    throw InputError("partition sizes require " + std::to_string(reserved) +
                     " examples, corpus has " + std::to_string(examples.size()) +
                     " (short by " + std::to_string(reserved - (long long)examples.size()) + ")");

  // Group indices by complex sentence, keeping first-appearance order.
  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::string, std::size_t> group_of;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const std::string key = examples[i].complex.raw();
    auto [it, inserted] = group_of.try_emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  detail::seeded_shuffle(groups, cfg.rng_seed);

  CorpusPartitions parts;
  struct Block {
    std::vector<SplitExample>* out;
    long long want;
    const char* name;
  };
  Block blocks[] = {{&parts.tune, sizes.tune, "tune"},
                    {&parts.validation, sizes.validation, "validation"},
                    {&parts.test, sizes.test, "test"},
                    {&parts.train, -1, "train"}};
  std::size_t g = 0;
  for (const Block& block : blocks) {
    long long taken = 0;
    while (g < groups.size() && (block.want < 0 || taken < block.want)) {
      long long size = static_cast<long long>(groups[g].size());
      if (block.want >= 0 && taken + size > block.want)
        throw InputError(std::string("duplicate complex sentences straddle the ") + block.name +
                         " partition boundary; deduplicate the corpus first");
      for (std::size_t idx : groups[g]) block.out->push_back(examples[idx]);
      taken += size;
      ++g;
    }
    if (block.want >= 0 && taken != block.want)
      throw InputError(std::string("cannot fill the ") + block.name + " partition exactly");
  }
  return parts;
}

/// One example per line: complex tokens space-joined, TAB, the two simple
/// sentences space-joined with the delimiter between them. UTF-8, LF.
inline void serialize(const std::vector<SplitExample>& examples, std::ostream& out,
                      const std::string& delimiter = " <::> ") {
  for (const SplitExample& ex : examples) {
    out << ex.complex.raw() << '\t' << ex.simples[0].raw() << delimiter << ex.simples[1].raw()
        << '\n';
  }
}

inline std::vector<SplitExample> deserialize(std::istream& in,
                                             const std::string& delimiter = " <::> ") {
  std::vector<SplitExample> examples;
  std::string line;
  std::uint64_t line_number = 0;
  auto parse_tokens = [&](std::string_view text) {
    Sentence s;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t space = text.find(' ', start);
      std::string_view tok = text.substr(start, space == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : space - start);
      if (tok.empty())
        throw ParseError("empty token (double space or empty field)", line_number);
      s.tokens.emplace_back(tok);
      if (space == std::string_view::npos) break;
      start = space + 1;
    }
    return s;
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError("empty line", line_number);
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected exactly one TAB, found none",
                                                   line_number);
    if (line.find('\t', tab + 1) != std::string::npos)
      throw ParseError("expected exactly one TAB, found more", line_number);
    std::string_view complex_side(line.data(), tab);
    std::string_view simple_side(line.data() + tab + 1, line.size() - tab - 1);
    std::size_t delim = simple_side.find(delimiter);
    if (delim == std::string_view::npos)
      throw ParseError("simple side lacks the delimiter \"" + delimiter + "\"", line_number);
    if (simple_side.find(delimiter, delim + delimiter.size()) != std::string_view::npos)
      throw ParseError("simple side has more than one delimiter", line_number);
    SplitExample ex;
    ex.complex = parse_tokens(complex_side);
    ex.simples[0] = parse_tokens(simple_side.substr(0, delim));
    ex.simples[1] = parse_tokens(simple_side.substr(delim + delimiter.size()));
    examples.push_back(std::move(ex));
  }
  return examples;
}

/// Counts and uniques of complex sentences, simple sentences, and the tokens
/// appearing across the distinct complex sentences.
struct CorpusStats {
  long long complex_count = 0;
  long long complex_unique = 0;
  long long simple_count = 0;
  long long simple_unique = 0;
  long long token_count = 0;
  long long token_unique = 0;
};

inline CorpusStats compute_stats(const std::vector<SplitExample>& examples) {
  CorpusStats stats;
  std::unordered_set<std::string> complexes;
  std::unordered_set<std::string> simples;
  std::unordered_set<std::string> token_types;
  for (const SplitExample& ex : examples) {
    ++stats.complex_count;
    stats.simple_count += 2;
    if (complexes.insert(ex.complex.raw()).second) {
      stats.token_count += static_cast<long long>(ex.complex.tokens.size());
      for (const std::string& tok : ex.complex.tokens) token_types.insert(tok);
    }
    for (const Sentence& s : ex.simples) simples.insert(s.raw());
  }
  stats.complex_unique = static_cast<long long>(complexes.size());
  stats.simple_unique = static_cast<long long>(simples.size());
  stats.token_unique = static_cast<long long>(token_types.size());
  return stats;
}

/// Plain-text stats table: rows C, S', t with Count/Unique columns.
inline std::string format_stats(const CorpusStats& stats) {
  std::ostringstream out;
  auto row = [&](const char* label, long long count, long long unique) {
    out << label << '\t' << count << '\t' << unique << '\n';
  };
  out << "\tCount\tUnique\n";
  row("C", stats.complex_count, stats.complex_unique);
  row("S'", stats.simple_count, stats.simple_unique);
  row("t", stats.token_count, stats.token_unique);
  return out.str();
}

}  // namespace splitmine
