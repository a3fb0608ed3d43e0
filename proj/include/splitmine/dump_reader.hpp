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

// Streaming readers for revision histories. Two formats:
//
//  - MediaWiki XML export (pages-meta-history layout). Parsed with a small
//    pull scanner tuned to the export schema: page/title, page/ns, page/id,
//    revision/id, revision/timestamp, revision/text. Memory is bounded by
//    one page history, never the dump.
//  - A line-oriented JSONL format for fixtures: one object per revision with
//    fields page_id, page_title, revision_id, timestamp, text; revisions of
//    a page must be contiguous.
//
// Revisions of a page are emitted sorted by (timestamp, revision_id).
// Revisions with an unparseable timestamp or a duplicate id are skipped and
// counted, never silently dropped.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "splitmine/error.hpp"
#include "splitmine/revision.hpp"
#include "splitmine/wikitext.hpp"

namespace splitmine {

enum class DumpFormat { mediawiki_xml, jsonl };

inline DumpFormat parse_dump_format(const std::string& name) {
  if (name == "mediawiki-xml" || name == "xml") return DumpFormat::mediawiki_xml;
  if (name == "jsonl") return DumpFormat::jsonl;
  throw ConfigError("unknown dump format: " + name);
}

inline const char* to_string(DumpFormat f) {
  return f == DumpFormat::mediawiki_xml ? "mediawiki-xml" : "jsonl";
}

struct IngestOptions {
  // Mine only main-namespace pages (<ns>0</ns>, or no <ns> element).
  bool main_namespace_only = true;
};

struct IngestCounters {
  long long pages = 0;
  long long revisions = 0;
  long long skipped_revisions = 0;  // bad timestamp or duplicate revision id
  long long skipped_pages = 0;      // namespace-filtered
};

namespace detail {

// Minimal streaming XML scanner: start/end tags, entity-decoded character
// data, comments, CDATA and processing instructions. Tracks the absolute
// byte offset for error reporting. Reads one character at a time off the
// stream buffer, so tokens never straddle read boundaries.
class XmlScanner {
 public:
  explicit XmlScanner(std::istream& in) : buf_(*in.rdbuf()) {}

  enum class Token { start_tag, end_tag, eof };

  // Scans forward to the next tag. Character data encountered on the way is
  // entity-decoded and appended to *capture when capture is non-null.
  Token next(std::string* capture, const std::string& path_for_errors) {
    for (;;) {
      int c = get();
      if (c == EOF) return Token::eof;
      if (c != '<') {
        if (c == '&') {
          decode_entity(capture, path_for_errors);
        } else if (capture) {
          capture->push_back(static_cast<char>(c));
        }
        continue;
      }
      std::uint64_t tag_offset = offset_ - 1;
      int d = get();
      if (d == EOF)
        throw ParseError("unexpected end of input after '<'", tag_offset, path_for_errors);
      if (d == '?') {  // processing instruction
        copy_until("?>", nullptr, tag_offset, path_for_errors);
        continue;
      }
      if (d == '!') {  // comment, CDATA or doctype
        if (lookahead("--", tag_offset, path_for_errors)) {
          copy_until("-->", nullptr, tag_offset, path_for_errors);
        } else if (lookahead("[CDATA[", tag_offset, path_for_errors)) {
          copy_until("]]>", capture, tag_offset, path_for_errors);
        } else {
          copy_until(">", nullptr, tag_offset, path_for_errors);
        }
        continue;
      }
      bool closing = (d == '/');
      if (!closing) unget(static_cast<char>(d));
      name_.clear();
      for (;;) {
        int e = get();
        if (e == EOF)
          throw ParseError("unexpected end of input inside tag", tag_offset, path_for_errors);
        if (e == '>' || e == '/' || std::isspace(static_cast<unsigned char>(e))) {
          unget(static_cast<char>(e));
          break;
        }
        name_.push_back(static_cast<char>(e));
      }
      if (name_.empty()) throw ParseError("malformed tag", tag_offset, path_for_errors);
      // Skip attributes, honoring quotes.
      self_closing_ = false;
      char quote = 0;
      for (;;) {
        int e = get();
        if (e == EOF)
          throw ParseError("unexpected end of input inside tag <" + name_ + ">", tag_offset,
                           path_for_errors);
        if (quote) {
          if (e == quote) quote = 0;
        } else if (e == '"' || e == '\'') {
          quote = static_cast<char>(e);
        } else if (e == '/') {
          int f = get();
          if (f == '>') {
            self_closing_ = true;
            break;
          }
          if (f != EOF) unget(static_cast<char>(f));
        } else if (e == '>') {
          break;
        }
      }
      if (closing && self_closing_)
        throw ParseError("malformed close tag </" + name_ + "/>", tag_offset, path_for_errors);
      return closing ? Token::end_tag : Token::start_tag;
    }
  }

  const std::string& name() const { return name_; }
  bool self_closing() const { return self_closing_; }
  std::uint64_t offset() const { return offset_; }

 private:
  int get() {
    if (pending_ != EOF) {
      int c = pending_;
      pending_ = EOF;
      ++offset_;
      return c;
    }
    int c = buf_.sbumpc();
    if (c != EOF) ++offset_;
    return c;
  }

  void unget(char c) {
    pending_ = static_cast<unsigned char>(c);
    --offset_;
  }

  // Only called immediately after "<!", where the construct kind is decided
  // by the first character; a partial match deeper in marks malformed input.
  bool lookahead(std::string_view expected, std::uint64_t from, const std::string& path) {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      int c = get();
      if (c != expected[i]) {
        if (c != EOF) unget(static_cast<char>(c));
        if (i > 0) throw ParseError("malformed '<!' construct", from, path);
        return false;
      }
    }
    return true;
  }

  // Consumes input through `marker`. Characters before the marker go to
  // *capture when non-null. A short window delays output until characters
  // can no longer be part of the terminator.
  void copy_until(std::string_view marker, std::string* capture, std::uint64_t from,
                  const std::string& path) {
    std::string window;
    for (;;) {
      int c = get();
      if (c == EOF)
        throw ParseError("unterminated construct (expected '" + std::string(marker) + "')",
                         from, path);
      window.push_back(static_cast<char>(c));
      if (window.size() > marker.size()) {
        if (capture) capture->push_back(window.front());
        window.erase(window.begin());
      }
      if (window == marker) return;
    }
  }

  void decode_entity(std::string* capture, const std::string& path) {
    std::uint64_t from = offset_ - 1;
    std::string body;
    for (;;) {
      int c = get();
      if (c == EOF || body.size() > 12)
        throw ParseError("unterminated entity reference", from, path);
      if (c == ';') break;
      body.push_back(static_cast<char>(c));
    }
    std::string decoded;
    if (body == "amp") decoded = "&";
    else if (body == "lt") decoded = "<";
    else if (body == "gt") decoded = ">";
    else if (body == "quot") decoded = "\"";
    else if (body == "apos") decoded = "'";
    else if (!body.empty() && body[0] == '#') {
      std::string entity = "&" + body + ";";
      decoded = splitmine::decode_entities(entity);
      if (decoded == entity)
        throw ParseError("invalid character reference '" + entity + "'", from, path);
    } else {
      throw ParseError("unknown entity '&" + body + ";'", from, path);
    }
    if (capture) capture->append(decoded);
  }

  std::streambuf& buf_;
  std::uint64_t offset_ = 0;
  int pending_ = EOF;
  std::string name_;
  bool self_closing_ = false;
};

}  // namespace detail

/// Streams a decompressed dump as one PageRevisionStream per page. Memory
/// use is bounded by the largest single page history.
class DumpReader {
 public:
  DumpReader(std::istream& in, DumpFormat format, IngestOptions options = {})
      : in_(in), format_(format), options_(options) {
    if (format_ == DumpFormat::mediawiki_xml) xml_.emplace(in_);
  }

  /// Next page, or nullopt at end of input.
  std::optional<PageRevisionStream> next() {
    return format_ == DumpFormat::mediawiki_xml ? next_xml() : next_jsonl();
  }

  const IngestCounters& counters() const { return counters_; }

 private:
  // ---- MediaWiki XML ----

  std::string path_string() const {
    std::string out;
    for (const auto& p : path_) {
      if (!out.empty()) out.push_back('/');
      out.append(p);
    }
    return out;
  }

  std::optional<PageRevisionStream> next_xml() {
    using Token = detail::XmlScanner::Token;
    for (;;) {
      // Character data is captured only inside the tracked leaf elements:
      // page/title, page/ns, page/id, revision/id|timestamp|text.
      std::string* capture = nullptr;
      if (xml_in_revision_ && path_.size() == 4) {
        const std::string& leaf = path_.back();
        if (leaf == "id" || leaf == "timestamp" || leaf == "text") capture = &xml_text_;
      } else if (xml_in_page_ && !xml_in_revision_ && path_.size() == 3) {
        const std::string& leaf = path_.back();
        if (leaf == "title" || leaf == "ns" || leaf == "id") capture = &xml_text_;
      }

      Token tok = xml_->next(capture, path_string());
      if (tok == Token::eof) {
        if (!path_.empty())
          throw ParseError("unexpected end of input, unclosed <" + path_.back() + ">",
                           xml_->offset(), path_string());
        return std::nullopt;
      }
      if (tok == Token::start_tag) {
        path_.push_back(xml_->name());
        xml_text_.clear();
        if (xml_->name() == "page" && path_.size() == 2) {
          xml_in_page_ = true;
          xml_page_ = PageRevisionStream{};
          xml_page_has_ns_ = false;
          xml_page_ns_ = 0;
          seen_revision_ids_.clear();
        } else if (xml_->name() == "revision" && xml_in_page_ && path_.size() == 3) {
          xml_in_revision_ = true;
          xml_revision_ = RawRevision{};
          xml_rev_timestamp_.clear();
        }
        if (!xml_->self_closing()) continue;
        // An immediately closed element with empty content, e.g. <text/>.
      } else if (path_.empty() || path_.back() != xml_->name()) {
        throw ParseError("mismatched close tag </" + xml_->name() + ">", xml_->offset(),
                         path_string());
      }

      bool page_done = (path_.back() == "page" && path_.size() == 2);
      close_xml_element();
      path_.pop_back();
      if (!page_done) continue;
      if (options_.main_namespace_only && xml_page_has_ns_ && xml_page_ns_ != 0) {
        ++counters_.skipped_pages;
        continue;
      }
      for (auto& rev : xml_page_.revisions) {
        rev.page_id = xml_page_.page_id;
        rev.page_title = xml_page_.page_title;
      }
      sort_revisions(xml_page_);
      ++counters_.pages;
      return std::move(xml_page_);
    }
  }

  void close_xml_element() {
    const std::string& name = path_.back();
    std::size_t depth = path_.size();
    if (xml_in_revision_ && depth == 4) {
      if (name == "id") {
        xml_revision_.revision_id = parse_ll(xml_text_);
      } else if (name == "timestamp") {
        xml_rev_timestamp_ = xml_text_;
      } else if (name == "text") {
        xml_revision_.wikitext = xml_text_;
      }
    } else if (xml_in_page_ && !xml_in_revision_ && depth == 3) {
      if (name == "title") {
        xml_page_.page_title = xml_text_;
      } else if (name == "ns") {
        xml_page_has_ns_ = true;
        xml_page_ns_ = parse_ll(xml_text_);
      } else if (name == "id") {
        xml_page_.page_id = parse_ll(xml_text_);
      }
    } else if (name == "revision" && depth == 3 && xml_in_revision_) {
      xml_in_revision_ = false;
      auto ts = parse_timestamp(xml_rev_timestamp_);
      if (!ts || !seen_revision_ids_.insert(xml_revision_.revision_id).second) {
        ++counters_.skipped_revisions;
      } else {
        xml_revision_.timestamp = *ts;
        ++counters_.revisions;
        xml_page_.revisions.push_back(std::move(xml_revision_));
      }
      xml_revision_ = RawRevision{};
    } else if (name == "page" && depth == 2) {
      xml_in_page_ = false;
    }
    xml_text_.clear();
  }

  long long parse_ll(const std::string& s) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected an integer, got '" + s + "'", xml_->offset(), path_string());
    }
  }

  // ---- JSONL ----

  struct JsonlRecord {
    RawRevision rev;
    bool timestamp_ok = true;
  };

  std::optional<PageRevisionStream> next_jsonl() {
    PageRevisionStream page;
    bool have_page = false;
    if (jsonl_pending_) {
      begin_jsonl_page(page, jsonl_pending_->rev);
      have_page = true;
      take_jsonl_record(page, *jsonl_pending_);
      jsonl_pending_.reset();
    }
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      JsonlRecord record = parse_jsonl_record(line);
      if (!have_page) {
        register_jsonl_page(record.rev.page_id);
        begin_jsonl_page(page, record.rev);
        have_page = true;
      } else if (record.rev.page_id != page.page_id) {
        register_jsonl_page(record.rev.page_id);
        jsonl_pending_ = std::move(record);
        return finish_jsonl_page(page);
      }
      take_jsonl_record(page, record);
    }
    if (!have_page) return std::nullopt;
    return finish_jsonl_page(page);
  }

  void register_jsonl_page(long long page_id) {
    if (!seen_page_ids_.insert(page_id).second)
      throw ParseError(
          "pages must be contiguous: page " + std::to_string(page_id) + " reappears",
          line_number_);
  }

  void begin_jsonl_page(PageRevisionStream& page, const RawRevision& rev) {
    page.page_id = rev.page_id;
    page.page_title = rev.page_title;
    seen_revision_ids_.clear();
  }

  void take_jsonl_record(PageRevisionStream& page, JsonlRecord& record) {
    if (!record.timestamp_ok ||
        !seen_revision_ids_.insert(record.rev.revision_id).second) {
      ++counters_.skipped_revisions;
      return;
    }
    ++counters_.revisions;
    page.revisions.push_back(std::move(record.rev));
  }

  std::optional<PageRevisionStream> finish_jsonl_page(PageRevisionStream& page) {
    sort_revisions(page);
    ++counters_.pages;
    return std::move(page);
  }

  JsonlRecord parse_jsonl_record(const std::string& line) {
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad JSON: ") + e.what(), line_number_);
    }
    if (!record.is_object()) throw ParseError("expected a JSON object", line_number_);
    for (const char* field : {"page_id", "page_title", "revision_id", "timestamp", "text"})
      if (!record.contains(field))
        throw ParseError(std::string("missing field '") + field + "'", line_number_);
    if (!record["page_id"].is_number_integer() || !record["revision_id"].is_number_integer())
      throw ParseError("page_id and revision_id must be integers", line_number_);
    if (!record["page_title"].is_string() || !record["timestamp"].is_string() ||
        !record["text"].is_string())
      throw ParseError("page_title, timestamp and text must be strings", line_number_);

    JsonlRecord out;
    out.rev.page_id = record["page_id"].get<long long>();
    out.rev.page_title = record["page_title"].get<std::string>();
    out.rev.revision_id = record["revision_id"].get<long long>();
    out.rev.wikitext = record["text"].get<std::string>();
    auto ts = parse_timestamp(record["timestamp"].get<std::string>());
    out.timestamp_ok = ts.has_value();
    out.rev.timestamp = ts.value_or(0);
    return out;
  }

  std::istream& in_;
  DumpFormat format_;
  IngestOptions options_;
  IngestCounters counters_;

  // XML state
  std::optional<detail::XmlScanner> xml_;
  std::vector<std::string> path_;
  PageRevisionStream xml_page_;
  RawRevision xml_revision_;
  std::string xml_text_;
  std::string xml_rev_timestamp_;
  bool xml_in_page_ = false;
  bool xml_in_revision_ = false;
  bool xml_page_has_ns_ = false;
  long long xml_page_ns_ = 0;

  // JSONL state
  std::optional<JsonlRecord> jsonl_pending_;
  std::unordered_set<long long> seen_page_ids_;
  std::uint64_t line_number_ = 0;

  std::unordered_set<long long> seen_revision_ids_;
};

}  // namespace splitmine
