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

#include "splitmine/wikitext.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

namespace splitmine {
namespace {

TEST(StripMarkup, PipedAndPlainLinks) {
  EXPECT_EQ(strip_markup("He led [[Apollo 12|the crew]]."), "He led the crew.");
  EXPECT_EQ(strip_markup("Born in [[Texas]]."), "Born in Texas.");
}

TEST(StripMarkup, TemplatesAndQuotes) {
  EXPECT_EQ(strip_markup("Born{{cn}} in ''Texas''."), "Born in Texas.");
  EXPECT_EQ(strip_markup("'''Bold''' and '''''both'''''."), "Bold and both.");
  EXPECT_EQ(strip_markup("A {{outer|{{inner}}}} B"), "A B");
}

TEST(StripMarkup, EntitiesAndRefs) {
  EXPECT_EQ(strip_markup("A &amp; B <ref>src</ref>end"), "A & B end");
  EXPECT_EQ(strip_markup("X<ref name=\"a\" />Y"), "XY");
  EXPECT_EQ(strip_markup("&#65;&#x42;"), "AB");
  EXPECT_EQ(strip_markup("double &amp;amp; escape"), "double & escape");
}

TEST(StripMarkup, ExternalLinks) {
  EXPECT_EQ(strip_markup("See [http://example.com the site] now."), "See the site now.");
  EXPECT_EQ(strip_markup("Cited[http://example.com/x] here."), "Cited here.");
  EXPECT_EQ(strip_markup("Chess [sic] notation."), "Chess [sic] notation.");
}

TEST(StripMarkup, HeadingsListsAndTables) {
  EXPECT_EQ(strip_markup("== History ==\nIt began."), "It began.");
  EXPECT_EQ(strip_markup("* first\n* second"), "first second");
  EXPECT_EQ(strip_markup("Before.\n{| class=\"wikitable\"\n|-\n| cell\n|}\nAfter."),
            "Before. After.");
  EXPECT_EQ(strip_markup("# one\n## two"), "one two");
}

TEST(StripMarkup, CategoryAndFileLinks) {
  EXPECT_EQ(strip_markup("End.\n[[Category:Rivers]]"), "End.");
  EXPECT_EQ(strip_markup("A [[File:x.jpg|thumb|A [[nested]] caption]] B"), "A B");
  EXPECT_EQ(strip_markup("A [[Image:y.png]] B"), "A B");
}

TEST(StripMarkup, HtmlTags) {
  EXPECT_EQ(strip_markup("a<br>b"), "a b");
  EXPECT_EQ(strip_markup("<div class=\"x\">text</div>"), "text");
  EXPECT_EQ(strip_markup("3 < 5 is true"), "3 < 5 is true");
}

TEST(StripMarkup, UnbalancedMarkupDegradesToEndOfLine) {
  EXPECT_EQ(strip_markup("keep {{unclosed template\nnext line"), "keep next line");
  EXPECT_EQ(strip_markup("keep [[unclosed link\nnext line"), "keep next line");
  EXPECT_EQ(strip_markup("keep <ref>unclosed\nnext line"), "keep next line");
}

TEST(StripMarkup, NoResidue) {
  const char* inputs[] = {
      "{{a|b}} [[c|d]] <ref>e</ref> {| f |} '' g ''",
      "{{unclosed\n[[also unclosed\n<ref attr\n{| body",
      "text |} stray close",
      "&#123;&#123;via entities&#125;&#125;",
      "nested {{t|{{u}}}} [[a|[[b]]x]]",
  };
  for (const char* in : inputs) {
    std::string out = strip_markup(in);
    EXPECT_EQ(out.find("{{"), std::string::npos) << out;
    EXPECT_EQ(out.find("[["), std::string::npos) << out;
    EXPECT_EQ(out.find("<ref"), std::string::npos) << out;
    EXPECT_EQ(out.find("|}"), std::string::npos) << out;
  }
}

TEST(StripMarkup, Idempotent) {
  const char* inputs[] = {
      "Born{{cn}} in ''Texas''. He led [[Apollo 12|the crew]].",
      "A &amp;amp; B &#38;amp; C",
      "== H ==\n* ''[[x|y]]''\n{| t |}\n<ref>z</ref> done",
      "''* leading marker after quotes''",
      "broken {{a\n|param\n<ref\nrest",
      "plain prose with no markup at all.",
  };
  for (const char* in : inputs) {
    std::string once = strip_markup(in);
    EXPECT_EQ(strip_markup(once), once) << "input: " << in;
  }
}

TEST(StripMarkup, IdempotentOnRandomMarkupSoup) {
  std::mt19937 rng(42);
  const std::vector<std::string> pieces = {
      "{{", "}}",   "[[", "]]",  "|",  "''", "'''", "<ref>", "</ref>", "<b>",
      "==", "\n",   "{|", "|}",  "&amp;", "&#66;", "word",  " ",      ".",
      "*",  "http://x.y", "[", "]", "<",  ">",
  };
  for (int iter = 0; iter < 200; ++iter) {
    std::string soup;
    int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) soup += pieces[rng() % pieces.size()];
    std::string once = strip_markup(soup);
    ASSERT_EQ(strip_markup(once), once) << "soup: " << soup;
    ASSERT_EQ(once.find("{{"), std::string::npos) << soup;
    ASSERT_EQ(once.find("[["), std::string::npos) << soup;
    ASSERT_EQ(once.find("<ref"), std::string::npos) << soup;
    ASSERT_EQ(once.find("|}"), std::string::npos) << soup;
  }
}

TEST(DecodeEntities, NamedAndNumeric) {
  EXPECT_EQ(decode_entities("a &lt; b &gt; c"), "a < b > c");
  EXPECT_EQ(decode_entities("&quot;q&quot; &apos;a&apos;"), "\"q\" 'a'");
  EXPECT_EQ(decode_entities("caf&#233;"), "café");
  EXPECT_EQ(decode_entities("1&nbsp;000"), "1 000");
  EXPECT_EQ(decode_entities("&ndash;"), "–");
  EXPECT_EQ(decode_entities("&bogus; stays"), "&bogus; stays");
  EXPECT_EQ(decode_entities("bare & ampersand"), "bare & ampersand");
}

}  // namespace
}  // namespace splitmine
