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

// Sentence segmentation and tokenization. Both are deliberately rule-based
// and deterministic: the mining heuristic depends on exact token matches, so
// there is no unicode normalization beyond what entity decoding already did.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "splitmine/error.hpp"
#include "splitmine/revision.hpp"
#include "splitmine/wikitext.hpp"

namespace splitmine {

/// A tokenized sentence. The detokenized surface form is the single-space
/// join of the tokens; since tokens never contain whitespace, that join is
/// also a collision-free key.
struct Sentence {
  std::vector<std::string> tokens;

  std::string raw() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out.append(tokens[i]);
    }
    return out;
  }

  bool operator==(const Sentence&) const = default;
};

namespace detail {

// Clause and terminal punctuation split into standalone tokens when it
// flanks a word. The horizontal ellipsis is a single three-byte character.
inline std::size_t punct_prefix_len(std::string_view chunk) {
  if (chunk.empty()) return 0;
  switch (chunk.front()) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '"':
      return 1;
    default:
      break;
  }
  if (chunk.size() >= 3 && chunk.substr(0, 3) == "…") return 3;
  return 0;
}

}  // namespace detail

/// Whitespace-splits one sentence, then peels terminal/clause punctuation
/// (. , ; : ! ? ( ) " and the ellipsis) off token edges. Internal hyphens,
/// apostrophes and digits stay attached ("1927-28", "creature's"). Case is
/// preserved.
inline std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t start = i;
    while (i < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    if (i == start) continue;
    std::string_view chunk = sentence.substr(start, i - start);

    // Leading punctuation.
    for (std::size_t n; (n = detail::punct_prefix_len(chunk)) > 0;) {
      tokens.emplace_back(chunk.substr(0, n));
      chunk.remove_prefix(n);
    }
    // Trailing punctuation, collected back to front.
    std::vector<std::string> tail;
    for (;;) {
      std::size_t n = 0;
      if (!chunk.empty()) {
        char last = chunk.back();
        switch (last) {
          case '.': case ',': case ';': case ':': case '!': case '?':
          case '(': case ')': case '"':
            n = 1;
            break;
          default:
            if (chunk.size() >= 3 && chunk.substr(chunk.size() - 3) == "…") n = 3;
        }
      }
      if (n == 0) break;
      tail.emplace_back(chunk.substr(chunk.size() - n));
      chunk.remove_suffix(n);
    }
    if (!chunk.empty()) tokens.emplace_back(chunk);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) tokens.push_back(std::move(*it));
  }
  return tokens;
}

/// Rule-based sentence boundary detector. Splits at . ! ? followed by
/// whitespace and an uppercase letter, digit, or opening quote, unless the
/// word before a period is a known abbreviation or a single-capital initial.
class SentenceSplitter {
 public:
  SentenceSplitter() : abbreviations_(default_abbreviations()) {}

  explicit SentenceSplitter(std::unordered_set<std::string> abbreviations)
      : abbreviations_(std::move(abbreviations)) {}

  /// Loads an abbreviation list: one entry per line, '#' starts a comment.
  /// Entries may be written with or without the trailing period.
  static SentenceSplitter from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read abbreviation list: " + path);
    return from_stream(in);
  }

  static SentenceSplitter from_stream(std::istream& in) {
    std::unordered_set<std::string> abbr;
    std::string line;
    while (std::getline(in, line)) {
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::size_t b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      std::size_t e = line.find_last_not_of(" \t\r");
      std::string entry = line.substr(b, e - b + 1);
      if (entry.back() != '.') entry.push_back('.');
      abbr.insert(std::move(entry));
    }
    return SentenceSplitter(std::move(abbr));
  }

  std::vector<std::string> split(std::string_view text) const {
    std::vector<std::string> sentences;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c != '.' && c != '!' && c != '?') continue;
      std::size_t k = i + 1;
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k == i + 1 || k >= text.size()) continue;      // needs whitespace after
      if (!starts_sentence(text.substr(k))) continue;    // needs a trigger char
      if (c == '.' && blocked_by_abbreviation(text, i)) continue;
      append_trimmed(sentences, text.substr(start, i + 1 - start));
      start = k;
      i = k - 1;
    }
    if (start < text.size()) append_trimmed(sentences, text.substr(start));
    return sentences;
  }

 private:
  static void append_trimmed(std::vector<std::string>& out, std::string_view piece) {
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front())))
      piece.remove_prefix(1);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back())))
      piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
  }

  static bool starts_sentence(std::string_view rest) {
    char c = rest.front();
    if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '"' || c == '\'') return true;
    // Curly opening quotes and guillemet.
    for (std::string_view q : {"“", "‘", "«"})
      if (rest.size() >= q.size() && rest.substr(0, q.size()) == q) return true;
    return false;
  }

  // The word ending at the period, stripped of leading brackets/quotes.
  bool blocked_by_abbreviation(std::string_view text, std::size_t period) const {
    std::size_t b = period;
    while (b > 0 && !std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    std::string_view word = text.substr(b, period + 1 - b);
    while (!word.empty() && (word.front() == '(' || word.front() == '[' ||
                             word.front() == '"' || word.front() == '\''))
      word.remove_prefix(1);
    if (word.size() < 2) return false;  // a bare "." never blocks
    if (abbreviations_.count(std::string(word))) return true;
    // Single-capital initials, including the last segment of "U.S.".
    std::string_view base = word.substr(0, word.size() - 1);
    std::size_t dot = base.rfind('.');
    std::string_view tail = dot == std::string_view::npos ? base : base.substr(dot + 1);
    return tail.size() == 1 && tail.front() >= 'A' && tail.front() <= 'Z';
  }

  static const std::unordered_set<std::string>& default_abbreviations() {
    static const std::unordered_set<std::string> abbr = {
        "Dr.",   "Mr.",   "Mrs.",  "Ms.",   "Prof.", "St.",   "No.",   "vs.",
        "etc.",  "i.e.",  "e.g.",  "cf.",   "Jr.",   "Sr.",   "Rev.",  "Hon.",
        "Gen.",  "Col.",  "Capt.", "Lt.",   "Sgt.",  "Maj.",  "Mt.",   "Ft.",
        "Co.",   "Corp.", "Inc.",  "Ltd.",  "Ave.",  "Blvd.", "Rd.",   "approx.",
        "Jan.",  "Feb.",  "Mar.",  "Apr.",  "Jun.",  "Jul.",  "Aug.",  "Sep.",
        "Sept.", "Oct.",  "Nov.",  "Dec.",  "al.",   "ca.",   "pp.",   "ed.",
    };
    return abbr;
  }

  std::unordered_set<std::string> abbreviations_;
};

/// All sentences of one revision, in document order.
struct SnapshotSentences {
  long long page_id = 0;
  long long revision_id = 0;
  long long timestamp = 0;
  std::vector<Sentence> sentences;
};

/// strip_markup -> split_sentences -> tokenize. Blank revisions yield an
/// empty sentence list.
inline SnapshotSentences snapshot_sentences(const RawRevision& revision,
                                            const SentenceSplitter& splitter) {
  SnapshotSentences snap;
  snap.page_id = revision.page_id;
  snap.revision_id = revision.revision_id;
  snap.timestamp = revision.timestamp;
  std::string plain = strip_markup(revision.wikitext);
  for (const std::string& raw : splitter.split(plain)) {
    Sentence s;
    s.tokens = tokenize(raw);
    if (!s.tokens.empty()) snap.sentences.push_back(std::move(s));
  }
  return snap;
}

}  // namespace splitmine
