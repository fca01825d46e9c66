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

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace regctx {

namespace {

constexpr std::size_t kWordQuantiles = 5;
constexpr std::size_t kSentenceQuantiles = 2;

std::string YesNo(bool b) { return b ? "yes" : "no"; }

std::string RoleValue(const std::optional<GrammaticalRole>& role) {
  return std::string(ToString(role.value_or(GrammaticalRole::kOther)));
}

std::string Position(const Instance& instance) {
  if (instance.mention_index == 0) return "first";
  if (instance.mention_index + 1 == instance.chain_length) return "last";
  if (instance.mention_index == 1) return "second";
  return "middle";
}

std::string Binned(const Instance& instance, const Binners& binners, std::string_view feature,
                   std::size_t Antecedent::*distance) {
  if (!instance.antecedent) return std::string(kNone);
  auto it = binners.find(feature);
  if (it == binners.end()) throw std::invalid_argument("no binner for " + std::string(feature));
  return it->second.Label(static_cast<double>((*instance.antecedent).*distance));
}

bool SentenceBinIsFixed(const FeatureSchema& schema) {
  return schema.kind == SchemaKind::kMlL && schema.dataset == Dataset::kWsj;
}

}  // namespace

std::string_view ToString(SchemaKind kind) { return kind == SchemaKind::kMlS ? "ml-s" : "ml-l"; }
std::string_view ToString(Dataset dataset) {
  return dataset == Dataset::kWebnlg ? "webnlg" : "wsj";
}

std::optional<SchemaKind> ParseSchemaKind(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "ml-s" || v == "ml_s" || v == "mls") return SchemaKind::kMlS;
  if (v == "ml-l" || v == "ml_l" || v == "mll") return SchemaKind::kMlL;
  return std::nullopt;
}

std::optional<Dataset> ParseDataset(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "webnlg") return Dataset::kWebnlg;
  if (v == "wsj") return Dataset::kWsj;
  return std::nullopt;
}

FeatureSchema FeatureSchema::Make(SchemaKind kind, Dataset dataset) {
  FeatureSchema schema;
  schema.kind = kind;
  schema.dataset = dataset;
  if (kind == SchemaKind::kMlS) {
    schema.features = {"first_mention", "same_sentence", "recency_sentence",
                       "recency_word",  "competition",   "position"};
  } else if (dataset == Dataset::kWebnlg) {
    schema.features = {"role",   "antecedent_role", "entity_type",
                       "gender", "recency_word",    "recency_sentence"};
  } else {
    schema.features = {"role",   "antecedent_role", "entity_type",      "plurality",
                       "gender", "recency_word",    "recency_sentence", "recency_paragraph"};
  }
  return schema;
}

std::string FeatureSchema::Name() const {
  return std::string(ToString(kind)) + "/" + std::string(ToString(dataset));
}

std::optional<std::size_t> FeatureSchema::IndexOf(std::string_view feature) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i] == feature) return i;
  }
  return std::nullopt;
}

void FeatureVector::Add(std::string name, std::string value) {
  names_.push_back(std::move(name));
  values_.push_back(std::move(value));
}

const std::string& FeatureVector::Get(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return values_[i];
  }
  throw std::out_of_range("no feature named " + std::string(name));
}

std::size_t Binner::BinIndex(double value) const {
  return static_cast<std::size_t>(
      std::lower_bound(boundaries.begin(), boundaries.end(), value) - boundaries.begin());
}

const std::string& Binner::Label(double value) const { return labels[BinIndex(value)]; }

Binner Binner::Quantile(std::string feature, std::size_t groups, std::vector<double> values) {
  Binner b;
  b.feature = std::move(feature);
  b.kind = BinKind::kQuantile;
  for (std::size_t g = 0; g < groups; ++g) b.labels.push_back("q" + std::to_string(g));
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return b;
  for (std::size_t j = 1; j < groups; ++j) {
    // Nearest-rank percentile j/groups.
    const std::size_t rank = (j * n + groups - 1) / groups;
    const double boundary = values[rank == 0 ? 0 : rank - 1];
    if (b.boundaries.empty() || boundary > b.boundaries.back()) b.boundaries.push_back(boundary);
  }
  return b;
}

Binner Binner::Fixed(std::string feature, std::vector<double> boundaries,
                     std::vector<std::string> labels) {
  if (labels.size() != boundaries.size() + 1) {
    throw std::invalid_argument("fixed binner needs one more label than boundaries");
  }
  Binner b;
  b.feature = std::move(feature);
  b.kind = BinKind::kFixed;
  b.boundaries = std::move(boundaries);
  b.labels = std::move(labels);
  return b;
}

Binners FitBins(std::span<const Instance> training, const FeatureSchema& schema) {
  if (training.empty()) throw DataError("cannot fit bins on empty training data");
  std::vector<double> words;
  std::vector<double> sentences;
  for (const auto& inst : training) {
    if (!inst.antecedent) continue;
    words.push_back(static_cast<double>(inst.antecedent->word_distance));
    sentences.push_back(static_cast<double>(inst.antecedent->sentence_distance));
  }
  Binners binners;
  binners.emplace("recency_word", Binner::Quantile("recency_word", kWordQuantiles, words));
  if (SentenceBinIsFixed(schema)) {
    binners.emplace("recency_sentence", Binner::Fixed("recency_sentence", {0, 1},
                                                      {"same", "one_away", "more"}));
  } else {
    binners.emplace("recency_sentence",
                    Binner::Quantile("recency_sentence", kSentenceQuantiles, sentences));
  }
  if (schema.IndexOf("recency_paragraph")) {
    binners.emplace("recency_paragraph",
                    Binner::Fixed("recency_paragraph", {0, 1, 2},
                                  {"same", "one_away", "two_away", "more"}));
  }
  return binners;
}

FeatureVector ExtractMlS(const Instance& instance, const Binners& binners) {
  FeatureVector fv;
  const auto& ante = instance.antecedent;
  fv.Add("first_mention", YesNo(!ante));
  fv.Add("same_sentence", ante ? YesNo(ante->sentence_distance == 0) : std::string(kNone));
  fv.Add("recency_sentence",
         Binned(instance, binners, "recency_sentence", &Antecedent::sentence_distance));
  fv.Add("recency_word", Binned(instance, binners, "recency_word", &Antecedent::word_distance));
  fv.Add("competition", ante ? YesNo(ante->other_re_between) : std::string(kNone));
  fv.Add("position", Position(instance));
  return fv;
}

FeatureVector ExtractMlL(const Instance& instance, const Binners& binners,
                         const EntityRegistry& registry, Dataset dataset) {
  const EntityMeta meta = registry.Lookup(instance.entity_tag);
  const auto& ante = instance.antecedent;
  FeatureVector fv;
  fv.Add("role", RoleValue(instance.grammatical_role));
  fv.Add("antecedent_role", ante ? RoleValue(ante->role) : std::string(kNone));
  fv.Add("entity_type", meta.entity_type);
  if (dataset == Dataset::kWsj) fv.Add("plurality", std::string(ToString(meta.plurality)));
  fv.Add("gender", std::string(ToString(meta.gender)));
  fv.Add("recency_word", Binned(instance, binners, "recency_word", &Antecedent::word_distance));
  fv.Add("recency_sentence",
         Binned(instance, binners, "recency_sentence", &Antecedent::sentence_distance));
  if (dataset == Dataset::kWsj) {
    fv.Add("recency_paragraph",
           Binned(instance, binners, "recency_paragraph", &Antecedent::paragraph_distance));
  }
  return fv;
}

FeatureVector ExtractFeatures(const Instance& instance, const FeatureSchema& schema,
                              const Binners& binners, const EntityRegistry& registry) {
  if (schema.kind == SchemaKind::kMlS) return ExtractMlS(instance, binners);
  return ExtractMlL(instance, binners, registry, schema.dataset);
}

std::string FeatureVectorToJsonLine(const Instance& instance, const FeatureVector& features) {
  nlohmann::ordered_json j;
  j["doc_id"] = instance.doc_id;
  j["slot_index"] = instance.slot_index;
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < features.size(); ++i) f[features.names()[i]] = features.values()[i];
  j["features"] = std::move(f);
  if (instance.gold_form) j["gold_form"] = ToString(*instance.gold_form);
  return j.dump();
}

}  // namespace regctx
