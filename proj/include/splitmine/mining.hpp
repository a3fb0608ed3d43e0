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

// The split detector. Adjacent snapshots of a page are compared for a
// sentence C present on one side only, rewritten on the other side as two
// adjacent sentences (S1, S2) that are themselves new. Anchoring: C and S1
// share their first three tokens, C and S2 share their last three, and S1
// and S2 end differently. Both temporal directions are searched, since page
// histories contain joins as well as splits.

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "splitmine/bleu.hpp"
#include "splitmine/sentence.hpp"

namespace splitmine {

enum class Direction {
  split,  // C lives in the older snapshot, (S1, S2) in the newer
  join,   // C lives in the newer snapshot, (S1, S2) in the older
};

inline const char* to_string(Direction d) {
  return d == Direction::split ? "split" : "join";
}

struct SplitCandidate {
  Sentence complex;
  Sentence simple_1;
  Sentence simple_2;
  double bleu_c_s1 = 0.0;
  double bleu_c_s2 = 0.0;
  long long page_id = 0;
  long long older_revision_id = 0;
  long long newer_revision_id = 0;
  Direction direction = Direction::split;
  // Positions in their snapshots; the deterministic tie-break for argmax
  // selection and the emission order both key off these.
  int complex_position = 0;
  int simple_position = 0;
};

/// The anchoring conditions: trigram prefix shared by C and S1, trigram
/// suffix shared by C and S2, S1 and S2 with different suffixes, and enough
/// tokens on every side for those trigrams to exist (C strictly longer than
/// a bare trigram). Length shortfalls return false.
inline bool trigram_conditions(const Sentence& c, const Sentence& s1, const Sentence& s2) {
  const auto& ct = c.tokens;
  const auto& t1 = s1.tokens;
  const auto& t2 = s2.tokens;
  if (ct.size() < 4 || t1.size() < 3 || t2.size() < 3) return false;
  for (int i = 0; i < 3; ++i)
    if (ct[i] != t1[i]) return false;  // C and S1 share the trigram prefix
  for (int i = 1; i <= 3; ++i)
    if (ct[ct.size() - i] != t2[t2.size() - i]) return false;  // C and S2 share the suffix
  for (int i = 1; i <= 3; ++i)
    if (t1[t1.size() - i] != t2[t2.size() - i]) return true;  // suffixes must differ
  return false;
}

namespace detail {

inline std::string prefix_key(const Sentence& s) {
  return s.tokens[0] + ' ' + s.tokens[1] + ' ' + s.tokens[2];
}

inline std::string suffix_key(const Sentence& s) {
  std::size_t n = s.tokens.size();
  return s.tokens[n - 3] + ' ' + s.tokens[n - 2] + ' ' + s.tokens[n - 1];
}

inline std::unordered_set<std::string> sentence_keys(const SnapshotSentences& snap) {
  std::unordered_set<std::string> keys;
  keys.reserve(snap.sentences.size() * 2);
  for (const Sentence& s : snap.sentences) keys.insert(s.raw());
  return keys;
}

// One direction of the search: sentences unique to `c_side`, rewritten in
// `s_side` as an adjacent pair of sentences that are new there too.
inline void mine_direction(const SnapshotSentences& c_side, const SnapshotSentences& s_side,
                           Direction direction, long long older_id, long long newer_id,
                           std::vector<SplitCandidate>& out) {
  if (c_side.sentences.empty() || s_side.sentences.size() < 2) return;
  auto c_keys = sentence_keys(c_side);
  auto s_keys = sentence_keys(s_side);

  // Adjacent pairs (j, j+1) in s_side where both sentences are absent from
  // c_side and long enough, indexed by S1's trigram prefix.
  std::unordered_map<std::string, std::vector<int>> by_prefix;
  for (int j = 0; j + 1 < static_cast<int>(s_side.sentences.size()); ++j) {
    const Sentence& s1 = s_side.sentences[j];
    const Sentence& s2 = s_side.sentences[j + 1];
    if (s1.tokens.size() < 3 || s2.tokens.size() < 3) continue;
    if (c_keys.count(s1.raw()) || c_keys.count(s2.raw())) continue;
    by_prefix[prefix_key(s1)].push_back(j);
  }
  if (by_prefix.empty()) return;

  for (int ci = 0; ci < static_cast<int>(c_side.sentences.size()); ++ci) {
    const Sentence& c = c_side.sentences[ci];
    if (c.tokens.size() < 4) continue;
    if (s_keys.count(c.raw())) continue;  // unchanged sentence, not an edit
    auto it = by_prefix.find(prefix_key(c));
    if (it == by_prefix.end()) continue;
    for (int j : it->second) {
      const Sentence& s1 = s_side.sentences[j];
      const Sentence& s2 = s_side.sentences[j + 1];
      if (!trigram_conditions(c, s1, s2)) continue;
      SplitCandidate cand;
      cand.complex = c;
      cand.simple_1 = s1;
      cand.simple_2 = s2;
      cand.bleu_c_s1 = filter_bleu(c.tokens, s1.tokens);
      cand.bleu_c_s2 = filter_bleu(c.tokens, s2.tokens);
      cand.page_id = c_side.page_id;
      cand.older_revision_id = older_id;
      cand.newer_revision_id = newer_id;
      cand.direction = direction;
      cand.complex_position = ci;
      cand.simple_position = j;
      out.push_back(std::move(cand));
    }
  }
}

}  // namespace detail

/// Mines one adjacent snapshot pair in both temporal directions. Candidates
/// carry their filter BLEU scores and are emitted per direction in
/// (position of C, position of S1) order, split direction first.
inline std::vector<SplitCandidate> mine_pair(const SnapshotSentences& older,
                                             const SnapshotSentences& newer) {
  std::vector<SplitCandidate> out;
  detail::mine_direction(older, newer, Direction::split, older.revision_id, newer.revision_id,
                         out);
  detail::mine_direction(newer, older, Direction::join, older.revision_id, newer.revision_id,
                         out);
  return out;
}

/// Mines every adjacent revision pair of one page. Snapshot sentence lists
/// are computed once per revision.
inline std::vector<SplitCandidate> mine_page(const PageRevisionStream& page,
                                             const SentenceSplitter& splitter) {
  std::vector<SplitCandidate> out;
  if (page.revisions.size() < 2) return out;
  std::vector<SnapshotSentences> snaps;
  snaps.reserve(page.revisions.size());
  for (const RawRevision& rev : page.revisions) snaps.push_back(snapshot_sentences(rev, splitter));
  for (std::size_t i = 0; i + 1 < snaps.size(); ++i) {
    auto pair_cands = mine_pair(snaps[i], snaps[i + 1]);
    for (auto& c : pair_cands) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace splitmine
