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

#include "regctx/features.h"

#include <gtest/gtest.h>

#include <random>

#include "testing.h"

namespace regctx {
namespace {

using testing::MakeDocument;

std::vector<Instance> AllInstances(const Corpus& corpus, std::optional<Split> split = {}) {
  std::vector<Instance> out;
  for (const auto& doc : corpus.documents) {
    if (split && doc.split != *split) continue;
    for (auto& inst : ExtractInstances(doc)) out.push_back(std::move(inst));
  }
  return out;
}

TEST(Binner, QuantilesOfUniformRange) {
  std::vector<double> values;
  for (int i = 1; i <= 100; ++i) values.push_back(i);
  const Binner b = Binner::Quantile("recency_word", 5, values);
  EXPECT_EQ(b.boundaries, (std::vector<double>{20, 40, 60, 80}));
  EXPECT_EQ(b.labels.size(), 5u);
  EXPECT_EQ(b.Label(1), "q0");
  EXPECT_EQ(b.Label(20), "q0");  // boundary goes to the lower bin
  EXPECT_EQ(b.Label(21), "q1");
  EXPECT_EQ(b.Label(80), "q3");
  EXPECT_EQ(b.Label(1000), "q4");
}

TEST(Binner, DegenerateAllEqual) {
  const Binner b = Binner::Quantile("recency_word", 5, std::vector<double>(30, 7.0));
  EXPECT_EQ(b.boundaries, std::vector<double>{7.0});
  EXPECT_EQ(b.Label(7), "q0");
  EXPECT_EQ(b.Label(8), "q1");
  EXPECT_EQ(Binner::Quantile("x", 5, {}).Label(3), "q0");
}

TEST(Binner, FixedSchemes) {
  const Binner s = Binner::Fixed("recency_sentence", {0, 1}, {"same", "one_away", "more"});
  EXPECT_EQ(s.Label(0), "same");
  EXPECT_EQ(s.Label(1), "one_away");
  EXPECT_EQ(s.Label(5), "more");
  EXPECT_THROW(Binner::Fixed("x", {0, 1}, {"a"}), std::invalid_argument);
}

TEST(Binner, MonotoneAndStrictlyIncreasing) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(1 + rng() % 60);
    for (auto& v : values) v = static_cast<double>(rng() % 25);
    const Binner b = Binner::Quantile("w", 1 + rng() % 6, values);
    for (std::size_t i = 1; i < b.boundaries.size(); ++i) {
      ASSERT_LT(b.boundaries[i - 1], b.boundaries[i]);
    }
    for (int d1 = 0; d1 < 30; ++d1) {
      ASSERT_LT(b.BinIndex(d1), b.labels.size());
      ASSERT_LE(b.BinIndex(d1), b.BinIndex(d1 + 1));
    }
  }
}

TEST(FeatureSchema, Variants) {
  EXPECT_EQ(FeatureSchema::Make(SchemaKind::kMlS, Dataset::kWebnlg).features.size(), 6u);
  EXPECT_EQ(FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWebnlg).features.size(), 6u);
  EXPECT_EQ(FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWsj).features.size(), 8u);
  EXPECT_EQ(FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWsj).Name(), "ml-l/wsj");
  EXPECT_EQ(ParseSchemaKind("ML-S"), SchemaKind::kMlS);
  EXPECT_FALSE(ParseDataset("ontonotes").has_value());
}

TEST(FitBins, EmptyTrainingFails) {
  EXPECT_THROW(FitBins({}, FeatureSchema::Make(SchemaKind::kMlS, Dataset::kWebnlg)), DataError);
}

TEST(ExtractMlS, FirstMentionSentinels) {
  const Document doc = MakeDocument("d", {"[A] met [B] .", "[A] left with [A] and [A] .",
                                          "[C] saw [A] ."});
  const auto instances = ExtractInstances(doc);
  const auto schema = FeatureSchema::Make(SchemaKind::kMlS, Dataset::kWebnlg);
  const Binners binners = FitBins(instances, schema);
  const FeatureVector first = ExtractMlS(instances[0], binners);
  EXPECT_TRUE(first.MatchesSchema(schema));
  EXPECT_EQ(first.Get("first_mention"), "yes");
  for (const char* f : {"same_sentence", "recency_sentence", "recency_word", "competition"}) {
    EXPECT_EQ(first.Get(f), "none") << f;
  }
  EXPECT_EQ(first.Get("position"), "first");

  // A has five mentions: instances 0, 2, 3, 4, 6.
  EXPECT_EQ(ExtractMlS(instances[2], binners).Get("position"), "second");
  EXPECT_EQ(ExtractMlS(instances[3], binners).Get("position"), "middle");
  EXPECT_EQ(ExtractMlS(instances[4], binners).Get("position"), "middle");
  EXPECT_EQ(ExtractMlS(instances[6], binners).Get("position"), "last");

  const FeatureVector second = ExtractMlS(instances[2], binners);
  EXPECT_EQ(second.Get("first_mention"), "no");
  EXPECT_EQ(second.Get("same_sentence"), "no");
  EXPECT_EQ(second.Get("competition"), "yes");  // B lies between
  const FeatureVector third = ExtractMlS(instances[3], binners);
  EXPECT_EQ(third.Get("same_sentence"), "yes");
  EXPECT_EQ(third.Get("competition"), "no");
  EXPECT_THROW(third.Get("gender"), std::out_of_range);
}

TEST(ExtractMlS, SameChainBetweenIsNotCompetition) {
  const Document doc = MakeDocument("d", {"[A] and [A] and [A] ."});
  const auto instances = ExtractInstances(doc);
  ASSERT_TRUE(instances[2].antecedent.has_value());
  EXPECT_FALSE(instances[2].antecedent->other_re_between);
}

TEST(ExtractMlL, RolesMetaAndParagraphs) {
  Document doc = MakeDocument("d", {"[Ann|Ann||subject] arrived .", "rain fell .",
                                    "[Ann|she||subject] saw [Bob|Bob||object] ."});
  doc.paragraphs = {0, 1, 2};
  EntityRegistry registry;
  EntityMeta ann;
  ann.entity_tag = "Ann";
  ann.entity_type = "PERSON";
  ann.gender = Gender::kFemale;
  registry.Insert(ann);
  const auto instances = ExtractInstances(doc);
  const auto wsj = FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWsj);
  const Binners binners = FitBins(instances, wsj);
  const FeatureVector v = ExtractMlL(instances[1], binners, registry, Dataset::kWsj);
  EXPECT_TRUE(v.MatchesSchema(wsj));
  EXPECT_EQ(v.Get("role"), "subject");
  EXPECT_EQ(v.Get("antecedent_role"), "subject");
  EXPECT_EQ(v.Get("entity_type"), "PERSON");
  EXPECT_EQ(v.Get("gender"), "female");
  EXPECT_EQ(v.Get("plurality"), "singular");
  EXPECT_EQ(v.Get("recency_sentence"), "more");
  EXPECT_EQ(v.Get("recency_paragraph"), "two_away");

  const FeatureVector bob = ExtractMlL(instances[2], binners, registry, Dataset::kWsj);
  EXPECT_EQ(bob.Get("role"), "object");
  EXPECT_EQ(bob.Get("antecedent_role"), "none");
  EXPECT_EQ(bob.Get("entity_type"), "unknown");
  EXPECT_EQ(bob.Get("recency_paragraph"), "none");

  const auto web = FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWebnlg);
  EXPECT_TRUE(ExtractFeatures(instances[1], web, FitBins(instances, web), registry)
                  .MatchesSchema(web));
}

TEST(ExtractFeatures, TotalOverRandomCorpusAndBinnersUnchanged) {
  testing::RandomCorpusOptions options;
  options.documents = 120;
  const Corpus corpus = testing::RandomCorpus(5, options);
  const auto train = AllInstances(corpus, Split::kTrain);
  const auto all = AllInstances(corpus);
  for (auto kind : {SchemaKind::kMlS, SchemaKind::kMlL}) {
    for (auto dataset : {Dataset::kWebnlg, Dataset::kWsj}) {
      const auto schema = FeatureSchema::Make(kind, dataset);
      const Binners binners = FitBins(train, schema);
      const Binners copy = binners;
      for (const auto& inst : all) {
        const FeatureVector v = ExtractFeatures(inst, schema, binners, corpus.registry);
        ASSERT_TRUE(v.MatchesSchema(schema));
        for (const auto& value : v.values()) ASSERT_FALSE(value.empty());
      }
      EXPECT_EQ(binners, copy);
    }
  }
}

TEST(ExtractFeatures, JsonLine) {
  const Document doc = MakeDocument("d", {"[A|A|proper_name] ."});
  const auto instances = ExtractInstances(doc);
  const auto schema = FeatureSchema::Make(SchemaKind::kMlS, Dataset::kWebnlg);
  const std::string line =
      FeatureVectorToJsonLine(instances[0], ExtractMlS(instances[0], FitBins(instances, schema)));
  EXPECT_NE(line.find("\"first_mention\":\"yes\""), std::string::npos);
  EXPECT_NE(line.find("\"gold_form\":\"proper_name\""), std::string::npos);
}

}  // namespace
}  // namespace regctx
