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

// BLEU scoring over pre-tokenized sentences. N-gram counts are kept as exact
// integer rationals; floating point enters only when the final score is
// assembled, so aggregation order cannot perturb results.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitmine/error.hpp"

namespace splitmine {

enum class Smoothing {
  none,                 // zero precisions make the score ill-defined (flagged)
  add1_from_order_2,    // add 1 to numerator and denominator for orders >= 2
  skip_missing_orders,  // orders with zero denominator leave the geometric mean
};

inline const char* to_string(Smoothing s) {
  switch (s) {
    case Smoothing::none: return "none";
    case Smoothing::add1_from_order_2: return "add1-from-order-2";
    case Smoothing::skip_missing_orders: return "skip-missing-orders";
  }
  return "?";
}

inline Smoothing parse_smoothing(const std::string& name) {
  if (name == "none") return Smoothing::none;
  if (name == "add1-from-order-2" || name == "add1") return Smoothing::add1_from_order_2;
  if (name == "skip-missing-orders" || name == "skip") return Smoothing::skip_missing_orders;
  throw ConfigError("unknown smoothing mode: " + name);
}

struct BleuConfig {
  int max_order = 4;
  Smoothing smoothing = Smoothing::none;
  bool case_sensitive = true;
};

struct Rational {
  long long num = 0;
  long long den = 0;
};

struct BleuReport {
  double score = 0.0;
  std::vector<Rational> precisions;  // raw modified precisions, orders 1..max_order
  double brevity_penalty = 1.0;
  long long hyp_length = 0;
  long long ref_length = 0;  // closest-reference effective length
  bool ill_defined = false;  // smoothing=none hit a zero precision
};

namespace detail {

// Joining with a space is injective here: tokens never contain whitespace.
inline std::string ngram_key(std::span<const std::string> toks, std::size_t pos, int n,
                             bool case_sensitive) {
  std::string key;
  for (int k = 0; k < n; ++k) {
    if (k > 0) key.push_back(' ');
    if (case_sensitive) {
      key.append(toks[pos + k]);
    } else {
      for (char c : toks[pos + k])
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return key;
}

inline std::unordered_map<std::string, long long> ngram_counts(std::span<const std::string> toks,
                                                               int n, bool case_sensitive) {
  std::unordered_map<std::string, long long> counts;
  if (static_cast<int>(toks.size()) >= n)
    for (std::size_t i = 0; i + n <= toks.size(); ++i)
      ++counts[ngram_key(toks, i, n, case_sensitive)];
  return counts;
}

}  // namespace detail

/// Modified n-gram precision: clipped matches over hypothesis n-gram count.
/// Each hypothesis n-gram type is clipped against the maximum count seen in
/// any single reference. Denominator is 0 when the hypothesis is shorter
/// than n.
inline Rational modified_precision(std::span<const std::string> hyp,
                                   const std::vector<std::span<const std::string>>& refs, int n,
                                   bool case_sensitive = true) {
  Rational r;
  r.den = std::max<long long>(0, static_cast<long long>(hyp.size()) - n + 1);
  if (r.den == 0) return r;
  auto hyp_counts = detail::ngram_counts(hyp, n, case_sensitive);
  std::unordered_map<std::string, long long> clip;
  for (const auto& ref : refs)
    for (const auto& [gram, count] : detail::ngram_counts(ref, n, case_sensitive)) {
      auto& best = clip[gram];
      best = std::max(best, count);
    }
  for (const auto& [gram, count] : hyp_counts) {
    auto it = clip.find(gram);
    if (it != clip.end()) r.num += std::min(count, it->second);
  }
  return r;
}

/// Per-order match counts plus length bookkeeping. Forms a commutative
/// monoid under +=, so corpus aggregation may be parallelized and still
/// yield bit-identical scores.
struct BleuCounts {
  std::vector<Rational> orders;  // orders[k] covers n = k+1
  long long hyp_length = 0;
  long long ref_length = 0;

  BleuCounts& operator+=(const BleuCounts& other) {
    if (orders.size() < other.orders.size()) orders.resize(other.orders.size());
    for (std::size_t i = 0; i < other.orders.size(); ++i) {
      orders[i].num += other.orders[i].num;
      orders[i].den += other.orders[i].den;
    }
    hyp_length += other.hyp_length;
    ref_length += other.ref_length;
    return *this;
  }
};

/// Counts one hypothesis against its references. The effective reference
/// length is the closest to the hypothesis length, ties going to the shorter.
inline BleuCounts count_bleu(std::span<const std::string> hyp,
                             const std::vector<std::span<const std::string>>& refs,
                             const BleuConfig& cfg) {
  BleuCounts c;
  c.orders.resize(cfg.max_order);
  for (int n = 1; n <= cfg.max_order; ++n)
    c.orders[n - 1] = modified_precision(hyp, refs, n, cfg.case_sensitive);
  c.hyp_length = static_cast<long long>(hyp.size());
  long long best = static_cast<long long>(refs.front().size());
  for (const auto& ref : refs) {
    long long len = static_cast<long long>(ref.size());
    long long d_new = std::llabs(len - c.hyp_length);
    long long d_old = std::llabs(best - c.hyp_length);
    if (d_new < d_old || (d_new == d_old && len < best)) best = len;
  }
  c.ref_length = best;
  return c;
}

/// Turns aggregated counts into a score: geometric mean of per-order
/// precisions under cfg.smoothing, times the brevity penalty
/// exp(1 - ref_len/hyp_len) when the hypothesis is short.
inline BleuReport finalize_bleu(const BleuCounts& counts, const BleuConfig& cfg) {
  BleuReport report;
  report.precisions = counts.orders;
  report.hyp_length = counts.hyp_length;
  report.ref_length = counts.ref_length;
  if (counts.hyp_length > 0 && counts.hyp_length < counts.ref_length)
    report.brevity_penalty =
        std::exp(1.0 - static_cast<double>(counts.ref_length) / counts.hyp_length);

  double log_sum = 0.0;
  int counted = 0;
  bool zero = false;
  for (std::size_t i = 0; i < counts.orders.size(); ++i) {
    long long num = counts.orders[i].num;
    long long den = counts.orders[i].den;
    if (cfg.smoothing == Smoothing::add1_from_order_2 && i > 0) {
      num += 1;
      den += 1;
    }
    if (cfg.smoothing == Smoothing::skip_missing_orders && den == 0) continue;
    if (num == 0) {
      zero = true;
      ++counted;
      continue;
    }
    log_sum += std::log(static_cast<double>(num) / static_cast<double>(den));
    ++counted;
  }
  if (zero || counted == 0) {
    report.score = 0.0;
    report.ill_defined = (cfg.smoothing == Smoothing::none);
    return report;
  }
  report.score = report.brevity_penalty * std::exp(log_sum / counted);
  return report;
}

/// Sentence-level BLEU of one hypothesis against one or more references.
inline BleuReport sentence_bleu(std::span<const std::string> hyp,
                                const std::vector<std::span<const std::string>>& refs,
                                const BleuConfig& cfg = BleuConfig{}) {
  if (hyp.empty()) throw InputError("sentence_bleu: empty hypothesis");
  if (refs.empty()) throw InputError("sentence_bleu: no references");
  return finalize_bleu(count_bleu(hyp, refs, cfg), cfg);
}

struct BleuItem {
  std::vector<std::string> hyp;
  std::vector<std::vector<std::string>> refs;
};

/// Corpus-level BLEU: numerators and denominators are micro-aggregated per
/// order across the corpus before the geometric mean; the brevity penalty
/// uses summed hypothesis and summed closest-reference lengths.
inline BleuReport corpus_bleu(const std::vector<BleuItem>& items,
                              const BleuConfig& cfg = BleuConfig{}) {
  if (items.empty()) throw InputError("corpus_bleu: empty corpus");
  BleuCounts total;
  total.orders.resize(cfg.max_order);
  for (const BleuItem& item : items) {
    if (item.hyp.empty()) throw InputError("corpus_bleu: empty hypothesis");
    if (item.refs.empty()) throw InputError("corpus_bleu: item without references");
    std::vector<std::span<const std::string>> refs(item.refs.begin(), item.refs.end());
    total += count_bleu(item.hyp, refs, cfg);
  }
  return finalize_bleu(total, cfg);
}

/// The mining filter score: BLEU of a candidate simple sentence against the
/// complex sentence as sole reference. Case-sensitive, order 4, with orders
/// that have no n-grams skipped so short sentences stay well-defined.
inline double filter_bleu(std::span<const std::string> complex_tokens,
                          std::span<const std::string> simple_tokens) {
  BleuConfig cfg;
  cfg.max_order = 4;
  cfg.smoothing = Smoothing::skip_missing_orders;
  cfg.case_sensitive = true;
  return sentence_bleu(simple_tokens, {complex_tokens}, cfg).score;
}

}  // namespace splitmine
