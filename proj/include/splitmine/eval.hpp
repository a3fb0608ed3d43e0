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

// Split-and-rephrase evaluation: the Source and SplitHalf baselines,
// multi-reference corpus BLEU, macro-averaged sentence BLEU (unsmoothed, to
// stay comparable with prior reporting, so the zero-precision pitfall is
// surfaced as a count), and the two length statistics.

#include <cstdint>
#include <iomanip>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "splitmine/bleu.hpp"
#include "splitmine/corpus.hpp"
#include "splitmine/sentence.hpp"

namespace splitmine {

/// One benchmark item: a complex sentence with one or more reference
/// decompositions, each a sequence of sentences.
struct EvalInstance {
  Sentence complex;
  std::vector<std::vector<Sentence>> references;
};

/// A system output for one instance.
using Prediction = std::vector<Sentence>;

struct EvalReport {
  double corpus_bleu_pct = 0.0;
  double macro_sbleu_pct = 0.0;
  double sents_per_complex = 0.0;  // #S/C, micro-average
  double tokens_per_simple = 0.0;  // #T/S, micro-average
  long long instance_count = 0;
  long long sbleu_ill_defined_count = 0;  // instances hitting a zero precision
};

/// The unmodified input as a one-sentence prediction.
inline Prediction baseline_source(const Sentence& complex) { return {complex}; }

/// Deterministic two-way split: first ceil(n/2) tokens plus an appended
/// period, then the remaining floor(n/2) tokens.
inline Prediction baseline_split_half(const Sentence& complex) {
  std::size_t n = complex.tokens.size();
  if (n < 2)
    throw InputError("split-half needs at least 2 tokens, got " + std::to_string(n));
  std::size_t first = (n + 1) / 2;
  Sentence head, tail;
  head.tokens.assign(complex.tokens.begin(), complex.tokens.begin() + first);
  head.tokens.push_back(".");
  tail.tokens.assign(complex.tokens.begin() + first, complex.tokens.end());
  return {std::move(head), std::move(tail)};
}

namespace detail {

inline std::vector<std::string> flatten(const std::vector<Sentence>& sentences) {
  std::vector<std::string> tokens;
  for (const Sentence& s : sentences) tokens.insert(tokens.end(), s.tokens.begin(), s.tokens.end());
  return tokens;
}

}  // namespace detail

/// Scores predictions against a benchmark. For BLEU, each prediction's
/// sentences are flattened into one token sequence and compared against all
/// references likewise flattened; the corpus score is micro-aggregated under
/// cfg, while macro sBLEU is the unsmoothed per-instance mean.
inline EvalReport evaluate(const std::vector<Prediction>& predictions,
                           const std::vector<EvalInstance>& instances,
                           const BleuConfig& cfg = BleuConfig{}) {
  if (predictions.size() != instances.size())
    throw InputError("got " + std::to_string(predictions.size()) + " predictions for " +
                     std::to_string(instances.size()) + " instances");
  if (instances.empty()) throw InputError("empty evaluation set");

  std::vector<BleuItem> items;
  items.reserve(instances.size());
  long long total_sentences = 0;
  long long total_tokens = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    BleuItem item;
    item.hyp = detail::flatten(predictions[i]);
    for (const auto& ref : instances[i].references) item.refs.push_back(detail::flatten(ref));
    total_sentences += static_cast<long long>(predictions[i].size());
    total_tokens += static_cast<long long>(item.hyp.size());
    items.push_back(std::move(item));
  }

  EvalReport report;
  report.instance_count = static_cast<long long>(instances.size());
  report.corpus_bleu_pct = corpus_bleu(items, cfg).score * 100.0;

  BleuConfig sbleu_cfg = cfg;
  sbleu_cfg.smoothing = Smoothing::none;
  double sum = 0.0;
  for (const BleuItem& item : items) {
    std::vector<std::span<const std::string>> refs(item.refs.begin(), item.refs.end());
    BleuReport r = sentence_bleu(item.hyp, refs, sbleu_cfg);
    sum += r.score;
    if (r.ill_defined) ++report.sbleu_ill_defined_count;
  }
  report.macro_sbleu_pct = sum / static_cast<double>(items.size()) * 100.0;

  report.sents_per_complex =
      static_cast<double>(total_sentences) / static_cast<double>(report.instance_count);
  report.tokens_per_simple =
      total_sentences == 0 ? 0.0
                           : static_cast<double>(total_tokens) / static_cast<double>(total_sentences);
  return report;
}

enum class BenchmarkFormat { wikisplit_tsv, websplit_multiref };

inline BenchmarkFormat parse_benchmark_format(const std::string& name) {
  if (name == "wikisplit-tsv") return BenchmarkFormat::wikisplit_tsv;
  if (name == "websplit-multiref") return BenchmarkFormat::websplit_multiref;
  throw ConfigError("unknown benchmark format: " + name);
}

/// Reads a benchmark file. wikisplit-tsv yields single-reference instances
/// from the corpus TSV; websplit-multiref expects per line a complex
/// sentence followed by tab-separated references, each reference's sentences
/// joined by the delimiter.
inline std::vector<EvalInstance> read_benchmark(std::istream& in, BenchmarkFormat format,
                                                const std::string& delimiter = " <::> ") {
  std::vector<EvalInstance> instances;
  if (format == BenchmarkFormat::wikisplit_tsv) {
    for (SplitExample& ex : deserialize(in, delimiter)) {
      EvalInstance inst;
      inst.complex = std::move(ex.complex);
      inst.references.push_back({std::move(ex.simples[0]), std::move(ex.simples[1])});
      instances.push_back(std::move(inst));
    }
    return instances;
  }

  std::string line;
  std::uint64_t line_number = 0;
  auto parse_sentence = [&](std::string_view text) {
    Sentence s;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t space = text.find(' ', start);
      std::string_view tok = text.substr(
          start, space == std::string_view::npos ? std::string_view::npos : space - start);
      if (tok.empty()) throw ParseError("empty token", line_number);
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
    std::vector<std::string_view> fields;
    std::string_view view = line;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = view.find('\t', start);
      fields.push_back(view.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                        : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2)
      throw ParseError("expected a complex sentence and at least one reference", line_number);
    EvalInstance inst;
    inst.complex = parse_sentence(fields[0]);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      std::vector<Sentence> ref;
      std::string_view rest = fields[f];
      for (;;) {
        std::size_t d = rest.find(delimiter);
        ref.push_back(parse_sentence(d == std::string_view::npos ? rest : rest.substr(0, d)));
        if (d == std::string_view::npos) break;
        rest = rest.substr(d + delimiter.size());
      }
      inst.references.push_back(std::move(ref));
    }
    instances.push_back(std::move(inst));
  }
  return instances;
}

/// Plain-text report, percent scale with one decimal to match the usual
/// table formatting.
inline std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1);
  out << "instances     " << report.instance_count << "\n";
  out << "corpus BLEU   " << report.corpus_bleu_pct << "\n";
  out << "macro sBLEU   " << report.macro_sbleu_pct;
  if (report.sbleu_ill_defined_count > 0)
    out << "  (" << report.sbleu_ill_defined_count << " ill-defined: zero precision unsmoothed)";
  out << "\n";
  out << "#S/C          " << report.sents_per_complex << "\n";
  out << "#T/S          " << report.tokens_per_simple << "\n";
  return out.str();
}

/// Single-line JSON record with field names matching EvalReport.
inline std::string report_json(const EvalReport& report) {
  nlohmann::json j{{"corpus_bleu_pct", report.corpus_bleu_pct},
                   {"macro_sbleu_pct", report.macro_sbleu_pct},
                   {"sents_per_complex", report.sents_per_complex},
                   {"tokens_per_simple", report.tokens_per_simple},
                   {"instance_count", report.instance_count},
                   {"sbleu_ill_defined_count", report.sbleu_ill_defined_count}};
  return j.dump();
}

}  // namespace splitmine
