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

// splitmine: mine split-and-rephrase rewrites out of wiki revision
// histories, and evaluate split quality.
//
//   splitmine mine      --input dump.xml --format mediawiki-xml --output corpus.tsv
//   splitmine stats     --input corpus.tsv
//   splitmine eval      --input bench.tsv --baseline source
//   splitmine partition --input corpus.tsv --output corpus --seed 1
//
// Every run that writes files also writes a key=value manifest with the
// effective configuration, an input fingerprint, and per-stage counts.
// Configuration file (--config or $SPLITMINE_CONFIG) uses the same flat
// key=value format; explicit command-line flags take precedence.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "splitmine/config.hpp"
#include "splitmine/corpus.hpp"
#include "splitmine/dump_reader.hpp"
#include "splitmine/eval.hpp"
#include "splitmine/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using namespace splitmine;

constexpr const char* kConfigEnvVar = "SPLITMINE_CONFIG";

// Stages every output as <path>.tmp and renames only when the whole run
// succeeded, so failures never leave partial files behind.
class OutputStager {
 public:
  ~OutputStager() {
    for (const auto& [tmp, final_path] : staged_) {
      std::error_code ec;
      fs::remove(tmp, ec);
      (void)final_path;
    }
  }

  std::ofstream& open(const std::string& final_path) {
    std::string tmp = final_path + ".tmp";
    auto stream = std::make_unique<std::ofstream>(tmp, std::ios::binary);
    if (!*stream) throw ConfigError("cannot write output file: " + final_path);
    staged_.emplace_back(tmp, final_path);
    streams_.push_back(std::move(stream));
    return *streams_.back();
  }

  void commit() {
    for (auto& stream : streams_) {
      stream->flush();
      if (!*stream) throw Error("failed writing an output file");
      stream->close();
    }
    for (auto& [tmp, final_path] : staged_) fs::rename(tmp, final_path);
    staged_.clear();
  }

 private:
  std::vector<std::pair<std::string, std::string>> staged_;
  std::vector<std::unique_ptr<std::ofstream>> streams_;
};

// Values from the config file fill in any option the user did not pass on
// the command line.
class ConfigLayer {
 public:
  ConfigLayer(CLI::App* cmd, const std::string& config_flag_value) : cmd_(cmd) {
    std::string path = config_flag_value;
    if (path.empty()) {
      if (const char* env = std::getenv(kConfigEnvVar); env && *env) path = env;
    }
    if (!path.empty()) values_ = parse_config_file(path);
    path_ = path;
  }

  const std::string& path() const { return path_; }

  template <typename T>
  void fill(const std::string& flag, const std::string& key, T& out) {
    auto it = values_.find(key);
    if (it == values_.end() || cmd_->count(flag) > 0) return;
    if constexpr (std::is_same_v<T, std::string>) {
      out = it->second;
    } else if constexpr (std::is_same_v<T, bool>) {
      const std::string& v = it->second;
      if (v == "true" || v == "1") out = true;
      else if (v == "false" || v == "0") out = false;
      else throw ConfigError("config key " + key + " expects true/false, got '" + v + "'");
    } else {
      std::istringstream in(it->second);
      in >> out;
      if (in.fail() || in.peek() != EOF)
        throw ConfigError("config key " + key + " has a malformed value '" + it->second + "'");
    }
  }

 private:
  CLI::App* cmd_;
  std::map<std::string, std::string> values_;
  std::string path_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read input file: " + path);
  return in;
}

struct MineArgs {
  std::string input, output, config;
  std::string format = "jsonl";
  std::string stage = "corpus";
  std::string abbreviations, profanity;
  std::string delimiter = " <::> ";
  double delta = 0.2;
  std::uint64_t seed = 0;
  int workers = 1;
  int max_repeats = 3;
  int max_token_length = 25;
  bool all_namespaces = false;
};

int run_mine(CLI::App* cmd, MineArgs& args) {
  ConfigLayer config(cmd, args.config);
  config.fill("--format", "format", args.format);
  config.fill("--stage", "stage", args.stage);
  config.fill("--delta", "delta", args.delta);
  config.fill("--seed", "seed", args.seed);
  config.fill("--workers", "workers", args.workers);
  config.fill("--abbrev", "abbreviations", args.abbreviations);
  config.fill("--profanity", "profanity", args.profanity);
  config.fill("--delimiter", "delimiter", args.delimiter);
  config.fill("--max-repeats", "max_consecutive_repeats", args.max_repeats);
  config.fill("--max-token-length", "max_token_length", args.max_token_length);
  bool namespace_filter = !args.all_namespaces;
  config.fill("--all-namespaces", "namespace_filter", namespace_filter);
  if (args.workers < 1) throw ConfigError("workers must be >= 1");
  if (args.delta < 0.0 || args.delta > 1.0) throw ConfigError("delta must be in [0,1]");
  if (args.stage != "corpus" && args.stage != "candidates")
    throw ConfigError("unknown stage: " + args.stage);

  PipelineOptions options;
  options.format = parse_dump_format(args.format);
  options.ingest.main_namespace_only = namespace_filter;
  options.miner.delta = args.delta;
  options.miner.max_consecutive_repeats = args.max_repeats;
  options.miner.max_token_length = args.max_token_length;
  options.miner.profanity_path = args.profanity;
  options.miner.rng_seed = args.seed;
  options.miner.delimiter = args.delimiter;
  options.workers = args.workers;
  options.abbreviations_path = args.abbreviations;
  options.progress = &std::cerr;

  std::ifstream file = open_input(args.input);
  DigestingBuf digest_buf(*file.rdbuf());
  std::istream in(&digest_buf);

  StageCounts counts;
  OutputStager outputs;
  std::ofstream& out = outputs.open(args.output);
  if (args.stage == "candidates") {
    auto candidates = mine_candidates(in, options, counts);
    for (const SplitCandidate& c : candidates) {
      out << c.complex.raw() << '\t' << c.simple_1.raw() << args.delimiter
          << c.simple_2.raw() << '\t' << format_double(c.bleu_c_s1) << '\t'
          << format_double(c.bleu_c_s2) << '\t' << c.page_id << '\t'
          << c.older_revision_id << '\t' << c.newer_revision_id << '\t'
          << to_string(c.direction) << '\n';
    }
  } else {
    auto examples = mine_corpus(in, options, counts);
    serialize(examples, out, args.delimiter);
  }

  // Drain whatever the parser did not need so the digest covers the file.
  char sink[1 << 16];
  while (in.read(sink, sizeof sink) || in.gcount() > 0)
    if (in.gcount() < static_cast<std::streamsize>(sizeof sink)) break;

  std::ofstream& manifest = outputs.open(args.output + ".manifest");
  write_manifest(manifest,
                 {{"command", "mine"},
                  {"input", args.input},
                  {"input_fnv1a64", to_hex(digest_buf.digest())},
                  {"output", args.output},
                  {"format", args.format},
                  {"stage", args.stage},
                  {"namespace_filter", namespace_filter ? "true" : "false"},
                  {"delta", format_double(args.delta)},
                  {"max_consecutive_repeats", std::to_string(args.max_repeats)},
                  {"max_token_length", std::to_string(args.max_token_length)},
                  {"profanity", args.profanity},
                  {"abbreviations", args.abbreviations},
                  {"delimiter", args.delimiter},
                  {"seed", std::to_string(args.seed)},
                  {"workers", std::to_string(args.workers)},
                  {"config", config.path()},
                  {"pages", std::to_string(counts.ingest.pages)},
                  {"pages_skipped", std::to_string(counts.ingest.skipped_pages)},
                  {"revisions", std::to_string(counts.ingest.revisions)},
                  {"revisions_skipped", std::to_string(counts.ingest.skipped_revisions)},
                  {"revision_pairs", std::to_string(counts.revision_pairs)},
                  {"candidates", std::to_string(counts.candidates)},
                  {"after_threshold", std::to_string(counts.after_threshold)},
                  {"after_noise", std::to_string(counts.after_noise)},
                  {"examples", std::to_string(counts.examples)}});
  outputs.commit();
  return 0;
}

struct StatsArgs {
  std::string input, config;
  std::string delimiter = " <::> ";
};

int run_stats(CLI::App* cmd, StatsArgs& args) {
  ConfigLayer config(cmd, args.config);
  config.fill("--delimiter", "delimiter", args.delimiter);
  std::ifstream in = open_input(args.input);
  auto examples = deserialize(in, args.delimiter);
  std::cout << format_stats(compute_stats(examples));
  return 0;
}

struct EvalArgs {
  std::string input, config, output;
  std::string format = "wikisplit-tsv";
  std::string baseline, predictions;
  std::string smoothing = "none";
  std::string delimiter = " <::> ";
};

std::vector<Prediction> read_predictions(const std::string& path, const std::string& delimiter) {
  std::ifstream in = open_input(path);
  std::vector<Prediction> out;
  std::string line;
  std::uint64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError("empty prediction line", line_number);
    Prediction pred;
    std::string_view rest = line;
    for (;;) {
      std::size_t d = rest.find(delimiter);
      std::string_view piece = d == std::string_view::npos ? rest : rest.substr(0, d);
      Sentence s;
      s.tokens = tokenize(piece);
      if (s.tokens.empty()) throw ParseError("empty sentence in prediction", line_number);
      pred.push_back(std::move(s));
      if (d == std::string_view::npos) break;
      rest = rest.substr(d + delimiter.size());
    }
    out.push_back(std::move(pred));
  }
  return out;
}

int run_eval(CLI::App* cmd, EvalArgs& args) {
  ConfigLayer config(cmd, args.config);
  config.fill("--format", "format", args.format);
  config.fill("--baseline", "baseline", args.baseline);
  config.fill("--smoothing", "smoothing", args.smoothing);
  config.fill("--delimiter", "delimiter", args.delimiter);
  if (args.baseline.empty() == args.predictions.empty())
    throw ConfigError("exactly one of --baseline and --predictions is required");

  std::ifstream in = open_input(args.input);
  auto instances = read_benchmark(in, parse_benchmark_format(args.format), args.delimiter);

  std::vector<Prediction> predictions;
  if (!args.baseline.empty()) {
    predictions.reserve(instances.size());
    for (const EvalInstance& inst : instances) {
      if (args.baseline == "source") {
        predictions.push_back(baseline_source(inst.complex));
      } else if (args.baseline == "split-half") {
        predictions.push_back(baseline_split_half(inst.complex));
      } else {
        throw ConfigError("unknown baseline: " + args.baseline);
      }
    }
  } else {
    predictions = read_predictions(args.predictions, args.delimiter);
  }

  BleuConfig cfg;
  cfg.smoothing = parse_smoothing(args.smoothing);
  EvalReport report = evaluate(predictions, instances, cfg);
  std::cout << format_report(report);
  std::cout << report_json(report) << "\n";

  if (!args.output.empty()) {
    OutputStager outputs;
    outputs.open(args.output) << report_json(report) << "\n";
    write_manifest(outputs.open(args.output + ".manifest"),
                   {{"command", "eval"},
                    {"input", args.input},
                    {"output", args.output},
                    {"format", args.format},
                    {"baseline", args.baseline},
                    {"predictions", args.predictions},
                    {"smoothing", args.smoothing},
                    {"delimiter", args.delimiter},
                    {"instances", std::to_string(report.instance_count)}});
    outputs.commit();
  }
  return 0;
}

struct PartitionArgs {
  std::string input, output, config;
  std::string delimiter = " <::> ";
  std::uint64_t seed = 0;
  long long tune = 5000, validation = 5000, test = 5000;
};

int run_partition(CLI::App* cmd, PartitionArgs& args) {
  ConfigLayer config(cmd, args.config);
  config.fill("--seed", "seed", args.seed);
  config.fill("--delimiter", "delimiter", args.delimiter);
  config.fill("--tune-size", "tune_size", args.tune);
  config.fill("--validation-size", "validation_size", args.validation);
  config.fill("--test-size", "test_size", args.test);
  if (args.tune < 0 || args.validation < 0 || args.test < 0)
    throw ConfigError("partition sizes must be >= 0");

  std::ifstream file = open_input(args.input);
  DigestingBuf digest_buf(*file.rdbuf());
  std::istream in(&digest_buf);
  auto examples = deserialize(in, args.delimiter);

  MinerConfig miner;
  miner.partition_sizes = {args.tune, args.validation, args.test};
  miner.rng_seed = args.seed;
  CorpusPartitions parts = partition(examples, miner);

  OutputStager outputs;
  struct Piece {
    const char* name;
    const std::vector<SplitExample>* examples;
  };
  for (const Piece& piece : {Piece{"train", &parts.train}, Piece{"tune", &parts.tune},
                             Piece{"validation", &parts.validation}, Piece{"test", &parts.test}})
    serialize(*piece.examples, outputs.open(args.output + "." + piece.name + ".tsv"),
              args.delimiter);

  write_manifest(outputs.open(args.output + ".manifest"),
                 {{"command", "partition"},
                  {"input", args.input},
                  {"input_fnv1a64", to_hex(digest_buf.digest())},
                  {"output", args.output},
                  {"delimiter", args.delimiter},
                  {"seed", std::to_string(args.seed)},
                  {"tune_size", std::to_string(args.tune)},
                  {"validation_size", std::to_string(args.validation)},
                  {"test_size", std::to_string(args.test)},
                  {"train_examples", std::to_string(parts.train.size())},
                  {"examples", std::to_string(examples.size())}});
  outputs.commit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mine and evaluate split-and-rephrase sentence pairs"};
  app.require_subcommand(1);

  MineArgs mine_args;
  CLI::App* mine = app.add_subcommand("mine", "mine a revision-history dump into a corpus");
  mine->add_option("--input", mine_args.input, "dump file (decompressed)")->required();
  mine->add_option("--output", mine_args.output, "output TSV path")->required();
  mine->add_option("--format", mine_args.format, "dump format: mediawiki-xml or jsonl");
  mine->add_option("--delta", mine_args.delta, "minimum filter BLEU for both simple sides");
  mine->add_option("--seed", mine_args.seed, "seed recorded for downstream partitioning");
  mine->add_option("--workers", mine_args.workers, "mining threads");
  mine->add_option("--stage", mine_args.stage, "write 'corpus' (default) or raw 'candidates'");
  mine->add_option("--config", mine_args.config, "key=value config file");
  mine->add_option("--abbrev", mine_args.abbreviations, "abbreviation list file");
  mine->add_option("--profanity", mine_args.profanity, "profanity token list file");
  mine->add_option("--delimiter", mine_args.delimiter, "simple-side delimiter token");
  mine->add_option("--max-repeats", mine_args.max_repeats, "max identical consecutive tokens");
  mine->add_option("--max-token-length", mine_args.max_token_length, "max token length (chars)");
  mine->add_flag("--all-namespaces", mine_args.all_namespaces,
                 "mine every namespace, not just main");

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "corpus statistics for a TSV corpus");
  stats->add_option("--input", stats_args.input, "corpus TSV")->required();
  stats->add_option("--config", stats_args.config, "key=value config file");
  stats->add_option("--delimiter", stats_args.delimiter, "simple-side delimiter token");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score baselines or predictions on a benchmark");
  eval->add_option("--input", eval_args.input, "benchmark file")->required();
  eval->add_option("--format", eval_args.format,
                   "benchmark format: wikisplit-tsv or websplit-multiref");
  eval->add_option("--baseline", eval_args.baseline, "source or split-half");
  eval->add_option("--predictions", eval_args.predictions, "predictions file, one per instance");
  eval->add_option("--smoothing", eval_args.smoothing,
                   "corpus BLEU smoothing: none, add1-from-order-2, skip-missing-orders");
  eval->add_option("--output", eval_args.output, "also write the JSON report here");
  eval->add_option("--config", eval_args.config, "key=value config file");
  eval->add_option("--delimiter", eval_args.delimiter, "sentence delimiter in files");

  PartitionArgs part_args;
  CLI::App* part =
      app.add_subcommand("partition", "split a corpus into train/tune/validation/test");
  part->add_option("--input", part_args.input, "corpus TSV")->required();
  part->add_option("--output", part_args.output, "output prefix")->required();
  part->add_option("--seed", part_args.seed, "shuffle seed");
  part->add_option("--tune-size", part_args.tune, "tune partition size");
  part->add_option("--validation-size", part_args.validation, "validation partition size");
  part->add_option("--test-size", part_args.test, "test partition size");
  part->add_option("--config", part_args.config, "key=value config file");
  part->add_option("--delimiter", part_args.delimiter, "simple-side delimiter token");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mine->parsed()) return run_mine(mine, mine_args);
    if (stats->parsed()) return run_stats(stats, stats_args);
    if (eval->parsed()) return run_eval(eval, eval_args);
    if (part->parsed()) return run_partition(part, part_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
