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

// Wikitext to plain prose. The passes below run to a fixpoint, which makes
// strip_markup idempotent and guarantees no construct survives that a later
// pass could have produced (entities decoding to braces, quotes hiding list
// markers, and so on). Unbalanced markup degrades to end-of-line removal.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace splitmine {
namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp <= 0x7F) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7FF) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0xFFFF) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline const std::unordered_map<std::string, std::string>& named_entities() {
  static const std::unordered_map<std::string, std::string> table = {
      {"amp", "&"},      {"lt", "<"},       {"gt", ">"},      {"quot", "\""},
      {"apos", "'"},     {"nbsp", " "},     {"thinsp", " "},  {"ensp", " "},
      {"emsp", " "},     {"shy", ""},       {"ndash", "–"},
      {"mdash", "—"}, {"minus", "−"}, {"hellip", "…"},
      {"middot", "·"}, {"deg", "°"},  {"times", "×"},
      {"laquo", "«"}, {"raquo", "»"}, {"lsquo", "‘"},
      {"rsquo", "’"}, {"ldquo", "“"}, {"rdquo", "”"},
      {"prime", "′"}, {"sect", "§"},  {"copy", "©"},
      {"reg", "®"},   {"trade", "™"}, {"pound", "£"},
      {"euro", "€"},  {"cent", "¢"},  {"frac12", "½"},
  };
  return table;
}

// One pass of entity decoding. Unknown references are left untouched.
inline bool decode_entities_once(std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool changed = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t semi = text.find(';', i + 1);
    if (semi == std::string::npos || semi - i > 32 || semi == i + 1) {
      out.push_back(text[i++]);
      continue;
    }
    std::string_view body(text.data() + i + 1, semi - i - 1);
    std::string decoded;
    bool ok = false;
    if (body.size() >= 2 && body[0] == '#') {
      std::uint64_t cp = 0;
      bool hex = (body[1] == 'x' || body[1] == 'X');
      std::string_view digits = body.substr(hex ? 2 : 1);
      ok = !digits.empty();
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else { ok = false; break; }
        cp = cp * (hex ? 16 : 10) + d;
        if (cp > 0x10FFFF) { ok = false; break; }
      }
      if (ok && cp != 0 && !(cp >= 0xD800 && cp <= 0xDFFF)) {
        append_utf8(decoded, static_cast<std::uint32_t>(cp));
      } else {
        ok = false;
      }
    } else {
      auto it = named_entities().find(std::string(body));
      if (it != named_entities().end()) {
        decoded = it->second;
        ok = true;
      }
    }
    if (ok) {
      out.append(decoded);
      i = semi + 1;
      changed = true;
    } else {
      out.push_back(text[i++]);
    }
  }
  if (changed) text = std::move(out);
  return changed;
}

inline std::size_t end_of_line(const std::string& text, std::size_t from) {
  std::size_t nl = text.find('\n', from);
  return nl == std::string::npos ? text.size() : nl;
}

inline bool remove_comments(std::string& text) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find("<!--", pos)) != std::string::npos) {
    std::size_t end = text.find("-->", pos + 4);
    if (end == std::string::npos)
      text.erase(pos, end_of_line(text, pos) - pos);
    else
      text.erase(pos, end + 3 - pos);
    changed = true;
  }
  return changed;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

// End of a tag started at `lt`, honoring quoted attribute values. Returns
// npos if no '>' occurs before the end of input.
inline std::size_t find_tag_end(const std::string& text, std::size_t lt) {
  char quote = 0;
  for (std::size_t i = lt + 1; i < text.size(); ++i) {
    char c = text[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return std::string::npos;
}

// <ref ...>...</ref> and self-closing <ref .../> vanish with their contents.
inline bool remove_ref_elements(std::string& text) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    std::string_view rest(text.data() + pos, text.size() - pos);
    if (rest.size() < 4 || !iequals(rest.substr(0, 4), "<ref") ||
        (rest.size() > 4 && rest[4] != '>' && rest[4] != ' ' && rest[4] != '\t' &&
         rest[4] != '/' && rest[4] != '\n')) {
      ++pos;
      continue;
    }
    std::size_t tag_end = find_tag_end(text, pos);
    if (tag_end == std::string::npos || tag_end > end_of_line(text, pos)) {
      text.erase(pos, end_of_line(text, pos) - pos);
      changed = true;
      continue;
    }
    if (text[tag_end - 1] == '/') {  // self-closing
      text.erase(pos, tag_end + 1 - pos);
      changed = true;
      continue;
    }
    // Find the matching close tag.
    std::size_t close = std::string::npos;
    for (std::size_t i = tag_end + 1; (i = text.find('<', i)) != std::string::npos; ++i) {
      std::string_view cand(text.data() + i, text.size() - i);
      if (cand.size() >= 5 && iequals(cand.substr(0, 5), "</ref")) {
        std::size_t gt = text.find('>', i);
        if (gt != std::string::npos) close = gt;
        break;
      }
    }
    if (close == std::string::npos)
      text.erase(pos, end_of_line(text, pos) - pos);
    else
      text.erase(pos, close + 1 - pos);
    changed = true;
  }
  return changed;
}

// Removes a brace-delimited construct with nesting; `open` and `close` are
// two-character markers. Unclosed constructs lose the rest of their line.
inline bool remove_paired(std::string& text, std::string_view open, std::string_view close) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find(open, pos)) != std::string::npos) {
    int depth = 1;
    std::size_t i = pos + open.size();
    std::size_t end = std::string::npos;
    while (i < text.size()) {
      if (text.compare(i, open.size(), open) == 0) {
        ++depth;
        i += open.size();
      } else if (text.compare(i, close.size(), close) == 0) {
        if (--depth == 0) {
          end = i + close.size();
          break;
        }
        i += close.size();
      } else {
        ++i;
      }
    }
    if (end == std::string::npos)
      text.erase(pos, end_of_line(text, pos) - pos);
    else
      text.erase(pos, end - pos);
    changed = true;
  }
  return changed;
}

inline bool remove_quote_runs(std::string& text) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find("''", pos)) != std::string::npos) {
    std::size_t end = pos;
    while (end < text.size() && text[end] == '\'') ++end;
    text.erase(pos, end - pos);
    changed = true;
  }
  return changed;
}

inline bool remove_html_tags(std::string& text) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    std::size_t name_start = pos + 1;
    if (name_start < text.size() && text[name_start] == '/') ++name_start;
    if (name_start >= text.size() ||
        !std::isalpha(static_cast<unsigned char>(text[name_start]))) {
      ++pos;  // bare '<' in prose
      continue;
    }
    std::size_t name_end = name_start;
    while (name_end < text.size() &&
           std::isalnum(static_cast<unsigned char>(text[name_end])))
      ++name_end;
    std::size_t tag_end = find_tag_end(text, pos);
    if (tag_end == std::string::npos || tag_end > end_of_line(text, pos)) {
      text.erase(pos, end_of_line(text, pos) - pos);
      changed = true;
      continue;
    }
    bool is_br = iequals(std::string_view(text.data() + name_start, name_end - name_start), "br");
    text.replace(pos, tag_end + 1 - pos, is_br ? " " : "");
    changed = true;
  }
  return changed;
}

inline bool starts_with_scheme(std::string_view s) {
  for (std::string_view scheme :
       {"http://", "https://", "ftp://", "ftps://", "irc://", "gopher://", "news:",
        "mailto:", "//"})
    if (s.size() >= scheme.size() && iequals(s.substr(0, scheme.size()), scheme)) return true;
  return false;
}

// [url] -> removed, [url label] -> label. Bare brackets stay literal.
inline bool rewrite_external_links(std::string& text) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find('[', pos)) != std::string::npos) {
    if (pos + 1 < text.size() && text[pos + 1] == '[') {
      pos += 2;
      continue;
    }
    std::string_view after(text.data() + pos + 1, text.size() - pos - 1);
    if (!starts_with_scheme(after)) {
      ++pos;
      continue;
    }
    std::size_t end = text.find(']', pos + 1);
    if (end == std::string::npos || end > end_of_line(text, pos)) {
      text.erase(pos, end_of_line(text, pos) - pos);
      changed = true;
      continue;
    }
    std::string inner = text.substr(pos + 1, end - pos - 1);
    std::size_t space = inner.find_first_of(" \t");
    std::string label = space == std::string::npos ? std::string() : inner.substr(space + 1);
    text.replace(pos, end + 1 - pos, label);
    changed = true;
  }
  return changed;
}

inline bool is_media_namespace(std::string_view prefix) {
  while (!prefix.empty() && (prefix.front() == ' ' || prefix.front() == '\t'))
    prefix.remove_prefix(1);
  while (!prefix.empty() && (prefix.back() == ' ' || prefix.back() == '\t'))
    prefix.remove_suffix(1);
  return iequals(prefix, "category") || iequals(prefix, "file") ||
         iequals(prefix, "image") || iequals(prefix, "media");
}

// [[a]] -> a, [[a|b]] -> b; category/file/image links vanish entirely.
inline bool rewrite_wiki_links(std::string& text) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find("[[", pos)) != std::string::npos) {
    int depth = 1;
    std::size_t i = pos + 2;
    std::size_t end = std::string::npos;  // position of the matching "]]"
    while (i + 1 < text.size()) {
      if (text[i] == '[' && text[i + 1] == '[') {
        ++depth;
        i += 2;
      } else if (text[i] == ']' && text[i + 1] == ']') {
        if (--depth == 0) {
          end = i;
          break;
        }
        i += 2;
      } else {
        ++i;
      }
    }
    if (end == std::string::npos) {
      text.erase(pos, end_of_line(text, pos) - pos);
      changed = true;
      continue;
    }
    std::string inner = text.substr(pos + 2, end - pos - 2);
    std::size_t colon = inner.find(':');
    std::size_t pipe = inner.find('|');
    std::string replacement;
    if (colon != std::string::npos && (pipe == std::string::npos || colon < pipe) &&
        is_media_namespace(std::string_view(inner).substr(0, colon))) {
      // dropped
    } else if (pipe != std::string::npos) {
      replacement = inner.substr(pipe + 1);
    } else {
      replacement = inner;
    }
    text.replace(pos, end + 2 - pos, replacement);
    changed = true;
  }
  return changed;
}

// Headings, list markers, and table debris are line-level constructs.
inline bool process_lines(std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool changed = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t len = (nl == std::string::npos ? text.size() : nl) - start;
    std::string_view line(text.data() + start, len);

    std::string_view trimmed = line;
    while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t' ||
                                trimmed.front() == '\r'))
      trimmed.remove_prefix(1);
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t' ||
                                trimmed.back() == '\r'))
      trimmed.remove_suffix(1);

    bool drop = false;
    std::string_view kept = line;
    if (trimmed.size() >= 4 && trimmed.substr(0, 2) == "==" &&
        trimmed.substr(trimmed.size() - 2) == "==") {
      drop = true;  // heading
    } else if (!line.empty() && line.front() == '|') {
      drop = true;  // table row/cell or template parameter debris
    } else if (!line.empty() &&
               (line.front() == '*' || line.front() == '#' || line.front() == ':' ||
                line.front() == ';')) {
      std::size_t p = 0;
      while (p < line.size() && (line[p] == '*' || line[p] == '#' || line[p] == ':' ||
                                 line[p] == ';'))
        ++p;
      while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
      kept = line.substr(p);
      changed = true;
    }

    if (drop) {
      changed = true;
    } else {
      out.append(kept);
      out.push_back('\n');
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  if (changed) {
    if (!out.empty() && out.back() == '\n') out.pop_back();
    text = std::move(out);
  }
  return changed;
}

inline bool erase_all(std::string& text, std::string_view needle) {
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.erase(pos, needle.size());
    changed = true;
  }
  return changed;
}

}  // namespace detail

/// Decodes character entity references, repeatedly, until none remain.
inline std::string decode_entities(std::string_view text) {
  std::string out(text);
  for (int i = 0; i < 8 && detail::decode_entities_once(out); ++i) {
  }
  return out;
}

/// Converts raw wikitext to plain prose: templates, ref elements, tables,
/// headings, list markers, category/file links, HTML tags and quote markup
/// are removed; wiki and external links are replaced by their labels;
/// entities are decoded; whitespace is collapsed to single spaces.
inline std::string strip_markup(std::string_view wikitext) {
  std::string text(wikitext);
  for (int iter = 0; iter < 6; ++iter) {
    bool changed = false;
    changed |= detail::decode_entities_once(text);
    changed |= detail::remove_comments(text);
    changed |= detail::remove_ref_elements(text);
    changed |= detail::remove_paired(text, "{{{", "}}}");
    changed |= detail::remove_paired(text, "{{", "}}");
    changed |= detail::remove_paired(text, "{|", "|}");
    changed |= detail::erase_all(text, "|}");
    changed |= detail::remove_quote_runs(text);
    changed |= detail::remove_html_tags(text);
    changed |= detail::process_lines(text);
    changed |= detail::rewrite_wiki_links(text);
    changed |= detail::rewrite_external_links(text);
    if (!changed) break;
  }
  // Collapse whitespace.
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace splitmine
