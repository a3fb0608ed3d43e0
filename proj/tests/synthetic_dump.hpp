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

// Seeded generator of toy revision-history dumps in the JSONL fixture
// format. Pages get a mix of edits: genuine splits with varying degrees of
// rephrasing (so filter scores spread over [0,1]), join-direction edits,
// no-op edits, and vandalism that the noise rules should drop. Test-only.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace synthetic {

struct DumpOptions {
  int pages = 100;
  int revisions_per_page = 2;
  unsigned seed = 1;
};

class Generator {
 public:
  explicit Generator(unsigned seed) : rng_(seed) {}

  std::string word() {
    static const char* stems[] = {"river",  "bridge", "valley", "castle", "meadow",
                                  "harbor", "temple", "market", "garden", "tower"};
    return std::string(stems[rng_() % 10]) + std::to_string(rng_() % 50);
  }

  std::string upper_word() {
    std::string w = word();
    w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }

  // A plain sentence: uppercase start, period end.
  std::string sentence(int min_words, int max_words) {
    int n = min_words + static_cast<int>(rng_() % (max_words - min_words + 1));
    std::string out = upper_word();
    for (int i = 1; i < n; ++i) out += " " + word();
    return out + ".";
  }

  std::vector<std::string> words_of(const std::string& sentence_text) {
    std::vector<std::string> out;
    std::istringstream in(sentence_text);
    std::string w;
    while (in >> w) out.push_back(w);
    if (!out.empty() && out.back().back() == '.') out.back().pop_back();
    return out;
  }

  std::string join_period(const std::vector<std::string>& words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) out += " ";
      out += words[i];
    }
    return out + ".";
  }

  // Rewrites `complex_text` into two sentences that keep the trigram
  // anchors. `rephrase` in [0,3] controls how much new material is added or
  // replaced, which spreads the filter BLEU scores.
  std::pair<std::string, std::string> split_rewrite(const std::string& complex_text,
                                                    int rephrase) {
    std::vector<std::string> words = words_of(complex_text);
    std::size_t cut = 3 + rng_() % (words.size() - 5);  // keep >=3 head, >=2 tail
    std::vector<std::string> head(words.begin(), words.begin() + cut);
    std::vector<std::string> tail(words.begin() + cut, words.end());
    for (int i = 0; i < rephrase; ++i) {
      head.push_back(word());
      tail.insert(tail.begin(), word());
    }
    // The second sentence must start a new sentence in the page text, so it
    // gets an uppercase lead-in; the miner does not care, the sentence
    // splitter does.
    tail.insert(tail.begin(), "It" + std::to_string(rng_() % 20));
    return {join_period(head), join_period(tail)};
  }

  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937 rng_;
};

// One JSONL record.
inline std::string record(long long page, const std::string& title, long long rev, int month,
                          const std::string& text) {
  nlohmann::json j{{"page_id", page},
                   {"page_title", title},
                   {"revision_id", rev},
                   {"timestamp", "200" + std::to_string(1 + month / 12) + "-" +
                                     (month % 12 + 1 < 10 ? "0" : "") +
                                     std::to_string(month % 12 + 1) + "-01T00:00:00Z"},
                   {"text", text}};
  return j.dump() + "\n";
}

inline std::string join_text(const std::vector<std::string>& sentences) {
  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i) out += " ";
    out += sentences[i];
  }
  return out;
}

/// Generates a dump whose pages exercise splits, joins, no-ops and noise.
inline std::string generate_dump(const DumpOptions& options) {
  Generator gen(options.seed);
  std::string dump;
  for (int p = 1; p <= options.pages; ++p) {
    std::string title = "Page " + std::to_string(p);
    std::vector<std::string> base;
    int context = 1 + static_cast<int>(gen.next() % 3);
    for (int s = 0; s < context; ++s) base.push_back(gen.sentence(4, 9));
    std::string complex_text = gen.sentence(8, 16);
    std::size_t complex_at = gen.next() % (base.size() + 1);
    base.insert(base.begin() + complex_at, complex_text);

    int kind = static_cast<int>(gen.next() % 10);
    std::vector<std::string> edited = base;
    if (kind < 6) {  // split edit, varying rephrase degree
      auto [s1, s2] = gen.split_rewrite(complex_text, static_cast<int>(gen.next() % 4));
      edited[complex_at] = s1;
      edited.insert(edited.begin() + complex_at + 1, s2);
    } else if (kind < 7) {  // vandalism: token spam that noise rules drop
      auto [s1, s2] = gen.split_rewrite(complex_text, 0);
      std::string spam = gen.word();
      // The spam run goes mid-sentence so the trigram anchors still hold and
      // only the noise rules reject the candidate.
      std::vector<std::string> s2_words = gen.words_of(s2);
      s2_words.insert(s2_words.begin() + 1, 4, spam);
      edited[complex_at] = s1;
      edited.insert(edited.begin() + complex_at + 1, gen.join_period(s2_words));
    } else if (kind < 8) {  // unrelated small edit
      edited.push_back(gen.sentence(4, 8));
    }
    // else: no edit at all

    bool joined_order = kind < 6 && gen.next() % 5 == 0;  // some joins
    std::vector<std::string> first = joined_order ? edited : base;
    std::vector<std::string> second = joined_order ? base : edited;

    dump += record(p, title, p * 100 + 1, 1, join_text(first));
    dump += record(p, title, p * 100 + 2, 2, join_text(second));
    for (int r = 3; r <= options.revisions_per_page; ++r) {
      // Later revisions tweak an unrelated sentence.
      std::vector<std::string> later = second;
      later.push_back(gen.sentence(4, 8));
      second = later;
      dump += record(p, title, p * 100 + r, r, join_text(later));
    }
  }
  return dump;
}

}  // namespace synthetic
