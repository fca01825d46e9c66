// Copyright 2026 The regctx Authors.
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

#include "regctx/metrics.h"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "oracles.h"
#include "testing.h"

namespace regctx {
namespace {

using testing::CollegeDocument;

std::size_t Brute(const std::string& a, const std::string& b) {
  return oracles::EditDistance(a, b);
}

std::vector<std::string> AllStrings(std::size_t max_len) {
  std::vector<std::string> out = {""};
  for (std::size_t begin = 0, len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : {'a', 'b', 'c'}) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

std::string RandomString(std::mt19937_64& rng, std::size_t max_len) {
  std::string s(rng() % (max_len + 1), 'a');
  for (char& c : s) c = static_cast<char>('a' + rng() % 3);
  return s;
}

TEST(Sed, Examples) {
  EXPECT_EQ(Sed("abc", "abc"), 0u);
  EXPECT_EQ(Sed("", "abc"), 3u);
  EXPECT_EQ(Sed("kitten", "sitting"), 3u);
  EXPECT_EQ(Brute("kitten", "sitting"), 3u);
  const EvalOptions chars;
  EXPECT_EQ(Sed(TokenList{"The", "school"}, TokenList{"the", "school"}, chars), 0u);
  EXPECT_EQ(Sed(TokenList{"he"}, TokenList{"AWH", "Engineering", "College"}, chars),
            Brute("he", "awh engineering college"));
  EvalOptions tokens;
  tokens.sed_level = SedLevel::kToken;
  EXPECT_EQ(Sed(TokenList{"the", "big", "school"}, TokenList{"The", "school"}, tokens), 1u);
  EvalOptions cased;
  cased.lowercase = false;
  EXPECT_EQ(Sed(TokenList{"The"}, TokenList{"the"}, cased), 1u);
}

TEST(Sed, ExhaustiveUpToLengthFour) {
  const auto strings = AllStrings(4);
  ASSERT_EQ(strings.size(), 121u);
  for (const auto& a : strings) {
    for (const auto& b : strings) ASSERT_EQ(Sed(a, b), Brute(a, b)) << a << " / " << b;
  }
}

TEST(Sed, RandomPairsMatchBruteForceOracle) {
  std::mt19937_64 rng(1);
  const auto start = std::chrono::steady_clock::now();
  std::size_t mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string a = RandomString(rng, 8);
    const std::string b = RandomString(rng, 8);
    mismatches += Sed(a, b) != Brute(a, b);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(mismatches, 0u);
  EXPECT_LT(seconds, 10.0);
}

TEST(Sed, MetricAxioms) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 3000; ++i) {
    const std::string a = RandomString(rng, 8);
    const std::string b = RandomString(rng, 8);
    const std::string c = RandomString(rng, 8);
    ASSERT_EQ(Sed(a, b) == 0, a == b);
    ASSERT_EQ(Sed(a, b), Sed(b, a));
    ASSERT_LE(Sed(a, c), Sed(a, b) + Sed(b, c));
  }
}

TEST(ReAccuracy, NormalizationAndErrors) {
  const std::vector<TokenList> gold = {{"The", "school"}, {"it"}, {"Kerala"}};
  EXPECT_DOUBLE_EQ(ReAccuracy(gold, gold), 1.0);
  const std::vector<TokenList> pred = {{"the", "school"}, {"he"}, {"Kochi"}};
  EXPECT_DOUBLE_EQ(ReAccuracy(pred, gold), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(ReAccuracy(pred, gold, false), 0.0);
  EXPECT_DOUBLE_EQ(ReAccuracy({}, {}), 0.0);
  EXPECT_THROW(ReAccuracy(pred, std::span<const TokenList>(gold).first(2)), std::invalid_argument);
}

TEST(ReAccuracy, PermutationInvariant) {
  std::mt19937_64 rng(3);
  std::vector<TokenList> pred, gold;
  for (int i = 0; i < 50; ++i) {
    pred.push_back({std::string(1, static_cast<char>('a' + rng() % 3))});
    gold.push_back({std::string(1, static_cast<char>('a' + rng() % 3))});
  }
  const double base = ReAccuracy(pred, gold);
  std::vector<std::size_t> perm(pred.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<TokenList> p2, g2;
  for (auto i : perm) {
    p2.push_back(pred[i]);
    g2.push_back(gold[i]);
  }
  EXPECT_DOUBLE_EQ(ReAccuracy(p2, g2), base);
}

TEST(Bleu, HandComputedTwoDocumentExample) {
  // p1 = 8/10, p2 = 5/8, p3 = 3/6, p4 = 1/4, c = 10 > r = 9 so BP = 1:
  // BLEU = 100 * (0.8 * 0.625 * 0.5 * 0.25)^(1/4) = 50.
  const std::vector<TokenList> candidates = {SplitWhitespace("the cat sat on a mat"),
                                             SplitWhitespace("a dog ran fast")};
  const std::vector<TokenList> references = {SplitWhitespace("the cat sat on the mat"),
                                             SplitWhitespace("a dog ran")};
  BleuStats stats = ComputeBleuStats(candidates[0], references[0]);
  stats += ComputeBleuStats(candidates[1], references[1]);
  EXPECT_EQ(stats.matches, (std::array<std::size_t, 4>{8, 5, 3, 1}));
  EXPECT_EQ(stats.totals, (std::array<std::size_t, 4>{10, 8, 6, 4}));
  EXPECT_NEAR(CorpusBleu(candidates, references), 50.0, 5e-5);
}

TEST(Bleu, BrevityPenaltyAndClipping) {
  // "the the the" against "the cat": p1 clipped to 1/3; c > r so BP = 1.
  const BleuStats clip =
      ComputeBleuStats(SplitWhitespace("the the the"), SplitWhitespace("the cat"));
  EXPECT_EQ(clip.matches[0], 1u);
  // Short candidate: all precisions 1, BP = exp(1 - 6/4).
  const std::vector<TokenList> c = {SplitWhitespace("the cat sat on")};
  const std::vector<TokenList> r = {SplitWhitespace("the cat sat on the mat")};
  EXPECT_NEAR(CorpusBleu(c, r), 100.0 * std::exp(1.0 - 6.0 / 4.0), 1e-9);
}

TEST(Bleu, IdentityIsExactlyHundred) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<TokenList> docs(1 + rng() % 5);
    for (auto& d : docs) {
      for (std::size_t n = 1 + rng() % 9; n > 0; --n) d.push_back(std::to_string(rng() % 6));
    }
    ASSERT_EQ(CorpusBleu(docs, docs), 100.0);
    ASSERT_EQ(CorpusBleu(docs, docs, true), 100.0);
  }
  EXPECT_EQ(CorpusBleu(std::vector<TokenList>{{"a"}}, std::vector<TokenList>{{"a"}}), 100.0);
}

TEST(Bleu, ZeroFourGramOverlapAndSmoothing) {
  const std::vector<TokenList> c = {SplitWhitespace("a b c d e")};
  const std::vector<TokenList> r = {SplitWhitespace("a b c x d e")};
  EXPECT_EQ(CorpusBleu(c, r), 0.0);
  EXPECT_GT(CorpusBleu(c, r, true), 0.0);
  EXPECT_THROW(CorpusBleu({}, {}), std::invalid_argument);
  EXPECT_THROW(CorpusBleu(c, std::vector<TokenList>{}), std::invalid_argument);
}

TEST(TextAccuracy, DocumentAndSentenceLevels) {
  const DocumentOutcome one_wrong{{true, true, true, true, false, true, true, true, true, true},
                                  {0, 0, 0, 1, 1, 1, 2, 2, 3, 3}};
  const DocumentOutcome all_right{{true}, {0}};
  const std::vector<DocumentOutcome> docs = {one_wrong, all_right};
  EXPECT_DOUBLE_EQ(TextAccuracy(docs), 0.5);
  // Sentences 0, 2, 3 of the first document and sentence 0 of the second.
  EXPECT_DOUBLE_EQ(SentenceAccuracy(docs), 4.0 / 5.0);
  const DocumentOutcome slotless{{}, {}};
  EXPECT_DOUBLE_EQ(TextAccuracy(std::vector<DocumentOutcome>{all_right, slotless}), 1.0);
}

TEST(TextAccuracy, SingleSlotDocumentsEqualReAccuracy) {
  std::mt19937_64 rng(5);
  std::vector<DocumentOutcome> docs;
  std::size_t correct = 0;
  for (int i = 0; i < 40; ++i) {
    const bool ok = rng() % 2;
    correct += ok;
    docs.push_back({{ok}, {0}});
  }
  EXPECT_DOUBLE_EQ(TextAccuracy(docs), correct / 40.0);
}

TEST(Prf, Cases) {
  const std::array<bool, 4> gold = {true, true, false, false};
  const Prf half = PronominalizationPrf(std::array<bool, 4>{true, false, false, true}, gold);
  EXPECT_DOUBLE_EQ(half.precision, 0.5);
  EXPECT_DOUBLE_EQ(half.recall, 0.5);
  EXPECT_DOUBLE_EQ(half.f1, 0.5);
  const Prf perfect = PronominalizationPrf(gold, gold);
  EXPECT_DOUBLE_EQ(perfect.f1, 1.0);
  const Prf none = PronominalizationPrf(std::array<bool, 4>{}, gold);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  // Macro: pronoun class P = 1/2, R = 1; other class P = 1, R = 1/2.
  const Prf macro = PronominalizationPrf(std::array<bool, 4>{true, true, true, false},
                                         std::array<bool, 4>{true, true, false, false},
                                         PrfAverage::kMacro);
  EXPECT_DOUBLE_EQ(macro.precision, (2.0 / 3.0 + 1.0) / 2.0);
  EXPECT_DOUBLE_EQ(macro.recall, (1.0 + 0.5) / 2.0);
}

TEST(Prf, F1IsHarmonicMean) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 500; ++i) {
    const Prf p = PrfFromCounts(rng() % 20, rng() % 20, rng() % 20);
    const double h = p.precision + p.recall == 0.0
                         ? 0.0
                         : 2.0 * p.precision * p.recall / (p.precision + p.recall);
    ASSERT_DOUBLE_EQ(p.f1, h);
    ASSERT_GE(p.precision, 0.0);
    ASSERT_LE(p.recall, 1.0);
  }
}

TEST(PronounLabels, PredictedAndGold) {
  EXPECT_TRUE(PredictedPronoun({"d", 0, {"AWH"}, "pronominal"}));
  EXPECT_FALSE(PredictedPronoun({"d", 0, {"it"}, "non_pronominal"}));
  EXPECT_FALSE(PredictedPronoun({"d", 0, {"it"}, "description"}));
  EXPECT_TRUE(PredictedPronoun({"d", 0, {"It"}, std::nullopt}));
  EXPECT_FALSE(PredictedPronoun({"d", 0, {"the", "school"}, std::nullopt}));
  SlotAnnotation slot;
  slot.gold_re_tokens = {"the", "school"};
  EXPECT_FALSE(GoldPronoun(slot));
  slot.gold_form = Form::kPronoun;
  EXPECT_TRUE(GoldPronoun(slot));
}

std::vector<Prediction> GoldPredictions(const Document& doc) {
  std::vector<Prediction> out;
  for (std::size_t i = 0; i < doc.slots.size(); ++i) {
    const auto& s = doc.slots[i];
    out.push_back({doc.doc_id, i, s.gold_re_tokens,
                   s.gold_form ? std::optional<std::string>(ToString(*s.gold_form)) : std::nullopt});
  }
  return out;
}

TEST(Evaluate, GoldAsPredictionsIsPerfect) {
  const Document doc = CollegeDocument();
  const Document* docs[] = {&doc};
  const EvalReport report = Evaluate(docs, {GoldPredictions(doc)}, EvalOptions{});
  const EvalMetrics& m = report.overall.metrics;
  EXPECT_EQ(m.re_accuracy, 1.0);
  EXPECT_EQ(m.sed_mean, 0.0);
  EXPECT_EQ(m.bleu, 100.0);
  EXPECT_EQ(m.text_accuracy, 1.0);
  EXPECT_EQ(m.sentence_accuracy, 1.0);
  EXPECT_EQ(report.overall.counts.slots, 9u);
  EXPECT_TRUE(report.by_domain.empty());
}

TEST(Evaluate, CountMismatchIsDataError) {
  const Document doc = CollegeDocument();
  auto preds = GoldPredictions(doc);
  preds.pop_back();
  EXPECT_THROW(EvaluateDocument(doc, preds, EvalOptions{}), DataError);
}

TEST(Evaluate, DomainBreakdownRecomposes) {
  testing::RandomCorpusOptions options;
  options.documents = 200;
  options.label_domains = true;
  const Corpus corpus = testing::RandomCorpus(17, options);
  const auto test = corpus.InSplit(Split::kTest);
  std::mt19937_64 rng(1);
  std::vector<std::vector<Prediction>> predictions;
  for (const Document* doc : test) {
    auto p = GoldPredictions(*doc);
    for (auto& x : p) {
      if (rng() % 3 == 0) {
        x.re = {"it"};
        x.form.reset();
      }
    }
    predictions.push_back(std::move(p));
  }
  const EvalReport report = Evaluate(test, predictions, EvalOptions{});
  ASSERT_EQ(report.by_domain.size(), 2u);
  EvalCounts sum;
  for (const auto& [label, split] : report.by_domain) sum += split.counts;
  EXPECT_EQ(sum, report.overall.counts);
  EXPECT_GT(report.overall.metrics.re_accuracy, 0.0);
  EXPECT_LT(report.overall.metrics.re_accuracy, 1.0);

  const EvalReport back = ReportFromJson(nlohmann::json::parse(ReportToJson(report).dump()));
  EXPECT_EQ(back.overall.counts, report.overall.counts);
  EXPECT_EQ(back.by_domain.at("unseen").counts, report.by_domain.at("unseen").counts);
  EXPECT_EQ(ReportToJson(back).dump(), ReportToJson(report).dump());

  const std::string table = RenderTable({{"RREG-S", report}});
  EXPECT_EQ(table.rfind("# cells: seen unseen\n", 0), 0u);
  EXPECT_NE(table.find("/"), std::string::npos);
}

}  // namespace
}  // namespace regctx
