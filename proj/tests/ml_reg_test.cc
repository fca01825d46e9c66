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

#include "regctx/ml_reg.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.h"
#include "testing.h"

namespace regctx {
namespace {

using testing::MakeDocument;

// First mentions are proper names, later ones pronouns.
std::vector<Instance> SeparableInstances(std::size_t docs) {
  std::vector<Instance> out;
  for (std::size_t d = 0; d < docs; ++d) {
    const std::string a = "A" + std::to_string(d % 7);
    const std::string b = "B" + std::to_string(d % 5);
    const Document doc = MakeDocument(
        "d" + std::to_string(d),
        {"[" + a + "|" + a + "|proper_name|subject] met [" + b + "|" + b + "|proper_name|object] .",
         "[" + a + "|she|pronoun|subject] left" + std::string(d % 3, ' ') + " .",
         "then [" + b + "|it|pronoun|other] fell ."});
    for (auto& inst : ExtractInstances(doc)) out.push_back(std::move(inst));
  }
  return out;
}

FeatureSchema TwoFeatures() {
  FeatureSchema s;
  s.features = {"a", "b"};
  return s;
}

FeatureVector Vec(const std::string& a, const std::string& b) {
  FeatureVector v;
  v.Add("a", a);
  v.Add("b", b);
  return v;
}

Instance Train(const std::string& tag, Form form, const std::string& re) {
  Instance inst;
  inst.entity_tag = tag;
  inst.gold_form = form;
  inst.gold_re_tokens = SplitWhitespace(re);
  return inst;
}

TEST(TrainFormModel, SeparableToyCorpus) {
  const auto train = SeparableInstances(40);
  const EntityRegistry registry;
  for (auto kind : {ClassifierKind::kGbdt, ClassifierKind::kNaiveBayes}) {
    ClassifierConfig config;
    config.kind = kind;
    const FormModel model = TrainFormModel(
        train, FeatureSchema::Make(SchemaKind::kMlS, Dataset::kWebnlg), registry, config, 7);
    for (const auto& inst : train) {
      ASSERT_EQ(PredictForm(model, model.Featurize(inst, registry)), *inst.gold_form);
    }
    std::vector<std::string> sorted = model.feature_importance;
    std::vector<std::string> schema = model.schema.features;
    std::sort(sorted.begin(), sorted.end());
    std::sort(schema.begin(), schema.end());
    EXPECT_EQ(sorted, schema);
  }
}

TEST(TrainFormModel, Errors) {
  const EntityRegistry registry;
  const auto schema = FeatureSchema::Make(SchemaKind::kMlS, Dataset::kWebnlg);
  EXPECT_THROW(TrainFormModel({}, schema, registry, {}, 0), DataError);
  auto train = SeparableInstances(2);
  train[1].gold_form.reset();
  EXPECT_THROW(TrainFormModel(train, schema, registry, {}, 0), DataError);
  const FormModel model = TrainFormModel(SeparableInstances(2), schema, registry, {}, 0);
  EXPECT_THROW(PredictForm(model, Vec("x", "y")), std::invalid_argument);
}

TEST(TrainFormModel, SingleClassAlwaysPredicted) {
  std::vector<Instance> train;
  for (auto& inst : SeparableInstances(5)) {
    inst.gold_form = Form::kDescription;
    train.push_back(inst);
  }
  const EntityRegistry registry;
  const auto schema = FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWebnlg);
  const FormModel model = TrainFormModel(train, schema, registry, {}, 1);
  for (const auto& inst : SeparableInstances(9)) {
    EXPECT_EQ(PredictForm(model, model.Featurize(inst, registry)), Form::kDescription);
  }
}

TEST(Importance, DecisiveFeatureFirst) {
  // Feature a decides the label; b is noise.
  FormModel model;
  model.schema = TwoFeatures();
  model.config.importance_repeats = 5;
  std::mt19937_64 rng(3);
  std::vector<LabeledFeatures> data;
  std::vector<LabeledRow> rows;
  for (int i = 0; i < 200; ++i) {
    const bool pro = rng() % 2;
    data.push_back({Vec(pro ? "p" : "n", std::to_string(rng() % 3)),
                    pro ? Form::kPronoun : Form::kProperName});
    rows.push_back({data.back().features.values(), data.back().label});
  }
  model.classifier = CategoricalNaiveBayes::Fit(rows, 2, 1.0);
  const auto order = PermutationImportance(model, data, 9);
  EXPECT_EQ(order, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(PermutationImportance(model, data, 9), order);

  // Oracle: accuracy drop measured directly with one fixed shuffle of a.
  auto accuracy = [&](const std::vector<LabeledFeatures>& set) {
    std::size_t ok = 0;
    for (const auto& d : set) ok += PredictForm(model, d.features) == d.label;
    return static_cast<double>(ok) / static_cast<double>(set.size());
  };
  std::vector<LabeledFeatures> shuffled = data;
  std::vector<std::string> column;
  for (const auto& d : data) column.push_back(d.features.Get("a"));
  std::shuffle(column.begin(), column.end(), rng);
  for (std::size_t i = 0; i < data.size(); ++i) {
    shuffled[i].features = Vec(column[i], data[i].features.Get("b"));
  }
  EXPECT_GT(accuracy(data) - accuracy(shuffled), 0.2);
}

TEST(Importance, TiesKeepSchemaOrderAndSingleFeature) {
  FormModel model;
  model.schema = TwoFeatures();
  const std::vector<LabeledRow> rows(10, LabeledRow{{"x", "x"}, Form::kPronoun});
  model.classifier = CategoricalNaiveBayes::Fit(rows, 2, 1.0);
  const std::vector<LabeledFeatures> data(10, LabeledFeatures{Vec("x", "x"), Form::kPronoun});
  EXPECT_EQ(PermutationImportance(model, data, 1), (std::vector<std::string>{"a", "b"}));

  FormModel single;
  single.schema.features = {"a"};
  single.classifier = CategoricalNaiveBayes::Fit(
      std::vector<LabeledRow>(3, LabeledRow{{"x"}, Form::kPronoun}), 1, 1.0);
  FeatureVector v;
  v.Add("a", "x");
  EXPECT_EQ(PermutationImportance(single, std::vector<LabeledFeatures>{{v, Form::kPronoun}}, 0),
            std::vector<std::string>{"a"});
}

class SelectContentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    model_.schema = TwoFeatures();
    train_ = {Train("AWH", Form::kDescription, "the school"),
              Train("AWH", Form::kDescription, "the school"),
              Train("AWH", Form::kDescription, "the college")};
    features_ = {Vec("1", "x"), Vec("1", "y"), Vec("1", "z")};
    index_ = VariantIndex::Build(train_, features_, model_.schema, {"a", "b"});
  }
  FormModel model_;
  std::vector<Instance> train_;
  std::vector<FeatureVector> features_;
  VariantIndex index_;
  PronounTable table_;
};

TEST_F(SelectContentTest, BacksOffOneFeature) {
  Instance query;
  query.entity_tag = "AWH";
  const ContentSelection full = SelectContent(model_, query, Form::kDescription, Vec("1", "z"),
                                              index_, table_);
  EXPECT_EQ(full.re.Text(), "the college");
  EXPECT_EQ(full.matched_prefix, 2u);
  EXPECT_EQ(full.lookups, 1u);
  const ContentSelection backed = SelectContent(model_, query, Form::kDescription,
                                                Vec("1", "unseen"), index_, table_);
  EXPECT_EQ(backed.re.Text(), "the school");
  EXPECT_EQ(backed.matched_prefix, 1u);
  EXPECT_EQ(backed.lookups, 2u);
  query.sentence_initial = true;
  EXPECT_EQ(SelectContent(model_, query, Form::kDescription, Vec("2", "q"), index_, table_)
                .re.Text(),
            "The school");
}

TEST_F(SelectContentTest, Fallbacks) {
  Instance query;
  query.entity_tag = "Adenan_Satem";
  const ContentSelection name =
      SelectContent(model_, query, Form::kProperName, Vec("1", "x"), index_, table_);
  EXPECT_EQ(name.re.Text(), "Adenan Satem");
  EXPECT_FALSE(name.matched_prefix.has_value());
  EXPECT_EQ(name.lookups, 3u);
  const ContentSelection desc =
      SelectContent(model_, query, Form::kDescription, Vec("1", "x"), index_, table_);
  EXPECT_EQ(desc.re.Text(), "Adenan Satem");
  EXPECT_EQ(desc.re.form_used, Form::kDescription);
  table_.Set("Adenan_Satem", Paradigm::He());
  query.grammatical_role = GrammaticalRole::kObject;
  EXPECT_EQ(SelectContent(model_, query, Form::kPronoun, Vec("1", "x"), index_, table_).re.Text(),
            "him");
  EXPECT_THROW(SelectContent(model_, query, Form::kPronoun, FeatureVector{}, index_, table_),
               std::invalid_argument);
}

TEST_F(SelectContentTest, LexicographicTieBreak) {
  const std::vector<Instance> train = {Train("X", Form::kProperName, "Zed"),
                                       Train("X", Form::kProperName, "Abe")};
  const std::vector<FeatureVector> f = {Vec("1", "1"), Vec("1", "1")};
  const VariantIndex index = VariantIndex::Build(train, f, model_.schema, {"b", "a"});
  Instance q;
  q.entity_tag = "X";
  EXPECT_EQ(SelectContent(model_, q, Form::kProperName, Vec("1", "1"), index, table_).re.Text(),
            "Abe");
}

// Random toy index over few values so that every back-off depth occurs.
struct ToyData {
  std::vector<Instance> train;
  std::vector<FeatureVector> features;
};

ToyData RandomToy(std::mt19937_64& rng, std::size_t n) {
  static const char* kVariants[] = {"the school", "the college", "awh", "it", "the campus"};
  ToyData toy;
  for (std::size_t i = 0; i < n; ++i) {
    toy.train.push_back(Train("E" + std::to_string(rng() % 3), FormAt(rng() % 3),
                              kVariants[rng() % 5]));
    toy.features.push_back(Vec(std::to_string(rng() % 3), std::to_string(rng() % 3)));
  }
  return toy;
}

TEST(SelectContent, AgreesWithExhaustiveCount) {
  std::mt19937_64 rng(50);
  FormModel model;
  model.schema = TwoFeatures();
  const PronounTable table;
  for (int round = 0; round < 20; ++round) {
    const ToyData toy = RandomToy(rng, 50);
    const bool flip = round % 2;
    const std::vector<std::string> importance =
        flip ? std::vector<std::string>{"b", "a"} : std::vector<std::string>{"a", "b"};
    const std::vector<std::size_t> order = flip ? std::vector<std::size_t>{1, 0}
                                                : std::vector<std::size_t>{0, 1};
    const VariantIndex index = VariantIndex::Build(toy.train, toy.features, model.schema, importance);
    for (int q = 0; q < 100; ++q) {
      Instance inst;
      inst.entity_tag = "E" + std::to_string(rng() % 4);
      const Form form = FormAt(rng() % 3);
      const FeatureVector v = Vec(std::to_string(rng() % 4), std::to_string(rng() % 4));
      const auto expected = oracles::MostFrequentVariant(toy.train, toy.features, order,
                                                          inst.entity_tag, form, v);
      const ContentSelection got = SelectContent(model, inst, form, v, index, table);
      EXPECT_EQ(got.matched_prefix.has_value(), expected.has_value());
      if (expected) {
        EXPECT_EQ(got.re.Text(), *expected);
      }
    }
  }
}

TEST(SelectContent, MonotoneCandidateSets) {
  std::mt19937_64 rng(8);
  const ToyData toy = RandomToy(rng, 200);
  const FeatureSchema schema = TwoFeatures();
  const VariantIndex index = VariantIndex::Build(toy.train, toy.features, schema, {"a", "b"});
  for (std::size_t i = 0; i < toy.train.size(); ++i) {
    for (std::size_t p = index.num_features(); p > 0; --p) {
      const auto* longer = index.Find(toy.train[i].entity_tag, *toy.train[i].gold_form,
                                      toy.features[i], p);
      const auto* shorter = index.Find(toy.train[i].entity_tag, *toy.train[i].gold_form,
                                       toy.features[i], p - 1);
      ASSERT_NE(longer, nullptr);
      ASSERT_NE(shorter, nullptr);
      for (const auto& [variant, c] : *longer) ASSERT_LE(c, shorter->at(variant));
    }
  }
}

TEST(SelectContent, TerminatesAndNonEmptyOnRandomQueries) {
  testing::RandomCorpusOptions options;
  options.documents = 200;
  options.label_domains = true;
  const Corpus corpus = testing::RandomCorpus(99, options);
  std::vector<Instance> train;
  std::vector<Instance> all;
  for (const auto& doc : corpus.documents) {
    for (auto& inst : ExtractInstances(doc)) {
      if (doc.split == Split::kTrain) train.push_back(inst);
      all.push_back(std::move(inst));
    }
  }
  const auto schema = FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWebnlg);
  ClassifierConfig config;
  config.gbdt.rounds = 10;
  const MlGenerator gen = TrainMlGenerator(train, {}, schema, corpus.registry, config, 3);
  const PronounTable table = BuildPronounTable(corpus, corpus.registry);
  std::mt19937_64 rng(4);
  std::size_t queries = 0;
  std::size_t unseen = 0;
  while (queries < 10000) {
    Instance inst = all[rng() % all.size()];
    if (rng() % 4 == 0) inst.entity_tag = "Absent_Entity_" + std::to_string(rng() % 50);
    unseen += inst.entity_tag.rfind("Seen", 0) != 0;
    const FeatureVector v = gen.model.Featurize(inst, corpus.registry);
    const Form form = FormAt(rng() % 3);
    const ContentSelection sel = SelectContent(gen.model, inst, form, v, gen.index, table);
    ASSERT_LE(sel.lookups, schema.features.size() + 1);
    ASSERT_FALSE(sel.re.tokens.empty());
    for (const auto& t : sel.re.tokens) ASSERT_FALSE(t.empty());
    ++queries;
  }
  EXPECT_GT(unseen, 1000u);
}

TEST(MlGenerator, SeededDeterminismAndRoundTrip) {
  const auto train = SeparableInstances(30);
  const auto dev = SeparableInstances(10);
  const EntityRegistry registry;
  const auto schema = FeatureSchema::Make(SchemaKind::kMlL, Dataset::kWebnlg);
  ClassifierConfig config;
  config.gbdt.rounds = 15;
  const MlGenerator a = TrainMlGenerator(train, dev, schema, registry, config, 42);
  const MlGenerator b = TrainMlGenerator(train, dev, schema, registry, config, 42);
  EXPECT_EQ(a.model.importance_method, "permutation_dev");
  EXPECT_EQ(a.model.feature_importance, b.model.feature_importance);
  std::ostringstream sa, sb;
  WriteModel(sa, a);
  WriteModel(sb, b);
  EXPECT_EQ(sa.str(), sb.str());

  std::istringstream in(sa.str());
  const MlGenerator back = ReadModel(in);
  std::ostringstream again;
  WriteModel(again, back);
  EXPECT_EQ(again.str(), sa.str());
  for (const auto& inst : dev) {
    const FeatureVector v = a.model.Featurize(inst, registry);
    EXPECT_EQ(PredictForm(a.model, v), PredictForm(back.model, v));
  }
}

TEST(MlGenerator, RejectsBadModelFiles) {
  for (const char* text : {"not json", "{\"format\":\"other\"}",
                           "{\"format\":\"regctx-model\",\"version\":99}",
                           "{\"format\":\"regctx-model\",\"version\":1}"}) {
    std::istringstream in(text);
    EXPECT_THROW(ReadModel(in), DataError) << text;
  }
}

}  // namespace
}  // namespace regctx
