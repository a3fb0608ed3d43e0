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

#include "splitmine/eval.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace splitmine {
namespace {

Sentence sent(const char* text) {
  Sentence s;
  s.tokens = tokenize(text);
  return s;
}

EvalInstance self_instance(const char* text) {
  EvalInstance inst;
  inst.complex = sent(text);
  inst.references.push_back({inst.complex});
  return inst;
}

TEST(BaselineSource, IdentityPrediction) {
  Sentence c = sent("any sentence at all .");
  Prediction p = baseline_source(c);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], c);
}

TEST(BaselineSplitHalf, EvenSplit) {
  Prediction p = baseline_split_half(Sentence{{"a", "b", "c", "d"}});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].tokens, (std::vector<std::string>{"a", "b", "."}));
  EXPECT_EQ(p[1].tokens, (std::vector<std::string>{"c", "d"}));
}

TEST(BaselineSplitHalf, OddSplitFirstHalfLarger) {
  Prediction p = baseline_split_half(Sentence{{"a", "b", "c", "d", "e"}});
  EXPECT_EQ(p[0].tokens, (std::vector<std::string>{"a", "b", "c", "."}));
  EXPECT_EQ(p[1].tokens, (std::vector<std::string>{"d", "e"}));
}

TEST(BaselineSplitHalf, OneTokenInputRejected) {
  EXPECT_THROW(baseline_split_half(Sentence{{"only"}}), InputError);
}

TEST(BaselineSplitHalf, TokenConservationPlusOnePeriod) {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    Sentence c;
    int n = 2 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) c.tokens.push_back("w" + std::to_string(rng() % 9));
    Prediction p = baseline_split_half(c);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].tokens.size() + p[1].tokens.size(), c.tokens.size() + 1);
    // Halves differ by at most one token before the appended period.
    long long first = static_cast<long long>(p[0].tokens.size()) - 1;
    long long second = static_cast<long long>(p[1].tokens.size());
    EXPECT_LE(std::abs(first - second), 1);
    EXPECT_GE(first, second);
    EXPECT_EQ(p[0].tokens.back(), ".");
  }
}

TEST(Evaluate, SourceOnSelfReferencingSetScoresExactly100) {
  std::vector<EvalInstance> instances = {self_instance("the first test sentence ."),
                                         self_instance("another longer test sentence here ."),
                                         self_instance("a short one .")};
  std::vector<Prediction> preds;
  for (const auto& inst : instances) preds.push_back(baseline_source(inst.complex));
  EvalReport r = evaluate(preds, instances);
  EXPECT_DOUBLE_EQ(r.corpus_bleu_pct, 100.0);
  EXPECT_DOUBLE_EQ(r.macro_sbleu_pct, 100.0);
  EXPECT_DOUBLE_EQ(r.sents_per_complex, 1.0);
  EXPECT_EQ(r.instance_count, 3);
  EXPECT_EQ(r.sbleu_ill_defined_count, 0);
}

TEST(Evaluate, SourceTokensPerSimpleIsMeanComplexLength) {
  std::vector<EvalInstance> instances = {self_instance("a b c d"), self_instance("e f g h i j")};
  std::vector<Prediction> preds = {baseline_source(instances[0].complex),
                                   baseline_source(instances[1].complex)};
  EvalReport r = evaluate(preds, instances);
  EXPECT_DOUBLE_EQ(r.tokens_per_simple, 5.0);  // (4 + 6) / 2 predictions of 1 sentence
}

TEST(Evaluate, SplitHalfShapeStatistics) {
  std::vector<EvalInstance> instances = {self_instance("a b c d e f"),
                                         self_instance("g h i j k"),
                                         self_instance("l m")};
  std::vector<Prediction> preds;
  for (const auto& inst : instances) preds.push_back(baseline_split_half(inst.complex));
  EvalReport r = evaluate(preds, instances);
  EXPECT_DOUBLE_EQ(r.sents_per_complex, 2.0);
  // 6+1, 5+1, 2+1 tokens over 6 sentences.
  EXPECT_DOUBLE_EQ(r.tokens_per_simple, 16.0 / 6.0);
}

// The hand-summed two-pair corpus from the BLEU tests, at the report level.
TEST(Evaluate, HandComputedTwoInstanceCorpus) {
  EvalInstance perfect;
  perfect.complex = sent("the cat sat on a mat");
  perfect.references.push_back({sent("the cat sat on a mat")});
  EvalInstance near;
  near.complex = sent("the cat sat on the mat");
  near.references.push_back({sent("the cat sat on a mat")});
  std::vector<EvalInstance> instances = {perfect, near};
  std::vector<Prediction> preds = {{sent("the cat sat on a mat")},
                                   {sent("the cat sat on the mat")}};
  BleuConfig cfg;
  cfg.smoothing = Smoothing::skip_missing_orders;
  EvalReport r = evaluate(preds, instances, cfg);
  EXPECT_NEAR(r.corpus_bleu_pct, 77.81581271, 1e-6);
  // Macro sBLEU: mean of 1.0 and 0.5372849659 (unsmoothed has no zeros here).
  EXPECT_NEAR(r.macro_sbleu_pct, (1.0 + 0.5372849659) / 2.0 * 100.0, 1e-6);
}

TEST(Evaluate, IllDefinedUnsmoothedInstancesAreCounted) {
  std::vector<EvalInstance> instances = {self_instance("a b c"), self_instance("d e f g")};
  // First prediction shares no 2-grams with the reference: p2 = 0 unsmoothed.
  std::vector<Prediction> preds = {{sent("a x b")}, {sent("d e f g")}};
  EvalReport r = evaluate(preds, instances);
  EXPECT_EQ(r.sbleu_ill_defined_count, 1);
}

TEST(Evaluate, LengthMismatchIsInputError) {
  std::vector<EvalInstance> instances = {self_instance("a b c")};
  EXPECT_THROW(evaluate({}, instances), InputError);
}

TEST(Evaluate, OrderingInvariance) {
  std::vector<EvalInstance> instances = {self_instance("a b c d"), self_instance("e f g h"),
                                         self_instance("i j k")};
  std::vector<Prediction> preds = {{sent("a b x d")}, {sent("e f g h")}, {sent("i j")}};
  BleuConfig cfg;
  cfg.smoothing = Smoothing::skip_missing_orders;
  EvalReport fwd = evaluate(preds, instances, cfg);
  std::vector<EvalInstance> rev_inst(instances.rbegin(), instances.rend());
  std::vector<Prediction> rev_preds(preds.rbegin(), preds.rend());
  EvalReport rev = evaluate(rev_preds, rev_inst, cfg);
  EXPECT_DOUBLE_EQ(fwd.corpus_bleu_pct, rev.corpus_bleu_pct);
  EXPECT_DOUBLE_EQ(fwd.macro_sbleu_pct, rev.macro_sbleu_pct);
  EXPECT_DOUBLE_EQ(fwd.sents_per_complex, rev.sents_per_complex);
  EXPECT_DOUBLE_EQ(fwd.tokens_per_simple, rev.tokens_per_simple);
}

TEST(ReadBenchmark, WikisplitTsvSingleReference) {
  std::istringstream in(
      "a b c d\ta b . <::> c d .\n"
      "e f g h\te f . <::> g h .\n"
      "i j k l\ti j . <::> k l .\n");
  auto instances = read_benchmark(in, BenchmarkFormat::wikisplit_tsv);
  ASSERT_EQ(instances.size(), 3u);
  for (const auto& inst : instances) {
    EXPECT_EQ(inst.references.size(), 1u);
    EXPECT_EQ(inst.references[0].size(), 2u);
  }
  EXPECT_EQ(instances[1].complex, sent("e f g h"));
  EXPECT_EQ(instances[1].references[0][0], sent("e f ."));
}

TEST(ReadBenchmark, MultirefTwoReferencesOnOneLine) {
  std::istringstream in("a b c d\ta b . <::> c d .\ta b c d .\n");
  auto instances = read_benchmark(in, BenchmarkFormat::websplit_multiref);
  ASSERT_EQ(instances.size(), 1u);
  ASSERT_EQ(instances[0].references.size(), 2u);
  EXPECT_EQ(instances[0].references[0].size(), 2u);  // two sentences
  EXPECT_EQ(instances[0].references[1].size(), 1u);  // one sentence
}

TEST(ReadBenchmark, EmptyFileYieldsEmptySequence) {
  std::istringstream in("");
  EXPECT_TRUE(read_benchmark(in, BenchmarkFormat::wikisplit_tsv).empty());
  std::istringstream in2("");
  EXPECT_TRUE(read_benchmark(in2, BenchmarkFormat::websplit_multiref).empty());
}

TEST(ReadBenchmark, MultirefWithoutReferencesRejected) {
  std::istringstream in("just a complex sentence\n");
  try {
    read_benchmark(in, BenchmarkFormat::websplit_multiref);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ReportInvariants, AveragesReconstructTotals) {
  std::vector<EvalInstance> instances = {self_instance("a b c d e f"),
                                         self_instance("g h i j")};
  std::vector<Prediction> preds = {baseline_split_half(instances[0].complex),
                                   baseline_source(instances[1].complex)};
  BleuConfig cfg;
  cfg.smoothing = Smoothing::skip_missing_orders;
  EvalReport r = evaluate(preds, instances, cfg);
  double total_sentences = r.sents_per_complex * static_cast<double>(r.instance_count);
  EXPECT_DOUBLE_EQ(total_sentences, 3.0);
  EXPECT_DOUBLE_EQ(r.tokens_per_simple * total_sentences, 11.0);  // 7 + 4 tokens
}

TEST(ReportJson, SingleLineWithMatchingFieldNames) {
  EvalReport r;
  r.corpus_bleu_pct = 77.8;
  r.instance_count = 2;
  std::string json = report_json(r);
  EXPECT_EQ(json.find('\n'), std::string::npos);
  auto parsed = nlohmann::json::parse(json);
  EXPECT_DOUBLE_EQ(parsed["corpus_bleu_pct"].get<double>(), 77.8);
  EXPECT_EQ(parsed["instance_count"].get<long long>(), 2);
  EXPECT_TRUE(parsed.contains("macro_sbleu_pct"));
  EXPECT_TRUE(parsed.contains("sents_per_complex"));
  EXPECT_TRUE(parsed.contains("tokens_per_simple"));
  EXPECT_TRUE(parsed.contains("sbleu_ill_defined_count"));
}

TEST(FormatReport, OneDecimalPercentScale) {
  EvalReport r;
  r.corpus_bleu_pct = 77.81581;
  r.macro_sbleu_pct = 76.86425;
  r.sents_per_complex = 2.0;
  r.tokens_per_simple = 10.75;
  r.instance_count = 2;
  std::string text = format_report(r);
  EXPECT_NE(text.find("77.8"), std::string::npos);
  EXPECT_NE(text.find("76.9"), std::string::npos);
  EXPECT_NE(text.find("2.0"), std::string::npos);
}

}  // namespace
}  // namespace splitmine
