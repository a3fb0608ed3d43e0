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

// The end-to-end miner. Pages are independent units of work: a single
// reader thread streams them off the dump, a pool of workers normalizes and
// mines each page, and results are reassembled in reading order, so the
// output is byte-identical for any worker count. The per-complex-sentence
// argmax is the pipeline's one global barrier and runs after the pool
// drains.

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "splitmine/corpus.hpp"
#include "splitmine/dump_reader.hpp"
#include "splitmine/mining.hpp"

namespace splitmine {

struct PipelineOptions {
  DumpFormat format = DumpFormat::jsonl;
  IngestOptions ingest;
  MinerConfig miner;
  int workers = 1;
  std::string abbreviations_path;   // empty: built-in English list
  std::ostream* progress = nullptr; // one counter line per 10k pages
};

struct StageCounts {
  IngestCounters ingest;
  long long revision_pairs = 0;
  long long candidates = 0;       // raw mined, both directions
  long long after_threshold = 0;
  long long after_noise = 0;
  long long examples = 0;         // after per-complex argmax
};

/// Mines every page of a dump and returns the raw scored candidates in page
/// reading order. Parallel over pages; deterministic.
inline std::vector<SplitCandidate> mine_candidates(std::istream& in,
                                                   const PipelineOptions& options,
                                                   StageCounts& counts) {
  SentenceSplitter splitter = options.abbreviations_path.empty()
                                  ? SentenceSplitter()
                                  : SentenceSplitter::from_file(options.abbreviations_path);
  const int workers = std::max(1, options.workers);
  const std::size_t queue_bound = static_cast<std::size_t>(workers) * 4 + 4;

  struct Task {
    std::uint64_t seq;
    PageRevisionStream page;
  };
  std::deque<Task> queue;
  bool input_done = false;
  std::mutex queue_mu;
  std::condition_variable queue_has_room, queue_has_work;

  std::mutex results_mu;
  std::vector<std::pair<std::uint64_t, std::vector<SplitCandidate>>> results;
  long long pair_count = 0;
  std::exception_ptr worker_error;

  auto worker = [&] {
    try {
      for (;;) {
        Task task;
        {
          std::unique_lock lock(queue_mu);
          queue_has_work.wait(lock, [&] { return !queue.empty() || input_done; });
          if (queue.empty()) return;
          task = std::move(queue.front());
          queue.pop_front();
        }
        queue_has_room.notify_one();
        auto cands = mine_page(task.page, splitter);
        long long pairs = task.page.revisions.empty()
                              ? 0
                              : static_cast<long long>(task.page.revisions.size()) - 1;
        {
          std::lock_guard lock(results_mu);
          pair_count += pairs;
          if (!cands.empty()) results.emplace_back(task.seq, std::move(cands));
        }
      }
    } catch (...) {
      std::lock_guard lock(results_mu);
      if (!worker_error) worker_error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);

  DumpReader reader(in, options.format, options.ingest);
  std::exception_ptr reader_error;
  std::uint64_t seq = 0;
  try {
    while (auto page = reader.next()) {
      {
        std::unique_lock lock(queue_mu);
        queue_has_room.wait(lock, [&] { return queue.size() < queue_bound; });
        queue.push_back(Task{seq, std::move(*page)});
      }
      queue_has_work.notify_one();
      ++seq;
      if (options.progress && seq % 10000 == 0)
        *options.progress << "pages=" << seq << "\n";
    }
  } catch (...) {
    reader_error = std::current_exception();
  }
  {
    std::lock_guard lock(queue_mu);
    input_done = true;
  }
  queue_has_work.notify_all();
  for (auto& t : pool) t.join();
  if (reader_error) std::rethrow_exception(reader_error);
  if (worker_error) std::rethrow_exception(worker_error);

  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SplitCandidate> out;
  for (auto& [unused_seq, cands] : results)
    for (auto& c : cands) out.push_back(std::move(c));
  // Merge contract: page_id order, preserving per-page candidate order.
  std::stable_sort(out.begin(), out.end(), [](const SplitCandidate& a, const SplitCandidate& b) {
    return a.page_id < b.page_id;
  });

  counts.ingest = reader.counters();
  counts.revision_pairs = pair_count;
  counts.candidates = static_cast<long long>(out.size());
  return out;
}

/// Full pipeline: mine, delta-threshold, noise-filter, then the global
/// per-complex-sentence argmax. Output sorted by (page, revision pair, C
/// position); each distinct complex sentence appears exactly once.
inline std::vector<SplitExample> mine_corpus(std::istream& in, const PipelineOptions& options,
                                             StageCounts& counts) {
  NoiseRules rules = NoiseRules::load(options.miner);  // fail fast on a bad list
  std::vector<SplitCandidate> cands = mine_candidates(in, options, counts);
  cands = threshold_filter(std::move(cands), options.miner.delta);
  counts.after_threshold = static_cast<long long>(cands.size());
  std::erase_if(cands, [&](const SplitCandidate& c) { return !rules.keep(c); });
  counts.after_noise = static_cast<long long>(cands.size());
  cands = select_best(std::move(cands));
  counts.examples = static_cast<long long>(cands.size());
  std::vector<SplitExample> examples;
  examples.reserve(cands.size());
  for (auto& c : cands) examples.push_back(to_example(std::move(c)));
  return examples;
}

}  // namespace splitmine
