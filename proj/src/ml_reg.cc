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

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace regctx {

using json = nlohmann::json;

namespace {

std::vector<LabeledRow> ToRows(std::span<const LabeledFeatures> data) {
  std::vector<LabeledRow> rows;
  rows.reserve(data.size());
  for (const auto& d : data) rows.push_back(LabeledRow{d.features.values(), d.label});
  return rows;
}

std::vector<LabeledFeatures> Featurize(std::span<const Instance> instances,
                                       const FeatureSchema& schema, const Binners& binners,
                                       const EntityRegistry& registry) {
  std::vector<LabeledFeatures> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    if (!inst.gold_form) {
      throw DataError(inst.doc_id + ": slot " + std::to_string(inst.slot_index) +
                      " has no gold_form");
    }
    out.push_back({ExtractFeatures(inst, schema, binners, registry), *inst.gold_form});
  }
  return out;
}

// Shuffle with a fixed, library-independent algorithm so the order depends
// only on the seed.
template <typename T>
void SeededShuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

std::vector<std::string> OrderByScore(const FeatureSchema& schema,
                                      const std::vector<double>& score) {
  std::vector<std::size_t> idx(schema.features.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(schema.features[i]);
  return out;
}

json BinnerToJson(const Binner& b) {
  return json{{"feature", b.feature},
              {"kind", b.kind == BinKind::kQuantile ? "quantile" : "fixed"},
              {"boundaries", b.boundaries},
              {"labels", b.labels}};
}

Binner BinnerFromJson(const json& j) {
  Binner b;
  b.feature = j.at("feature").get<std::string>();
  b.kind = j.at("kind").get<std::string>() == "quantile" ? BinKind::kQuantile : BinKind::kFixed;
  b.boundaries = j.at("boundaries").get<std::vector<double>>();
  b.labels = j.at("labels").get<std::vector<std::string>>();
  return b;
}

constexpr char kSep = '\x1f';

}  // namespace

FormModel TrainFormModel(std::span<const Instance> training, const FeatureSchema& schema,
                         const EntityRegistry& registry, const ClassifierConfig& config,
                         std::uint64_t seed) {
  if (training.empty()) throw DataError("cannot train on empty training data");
  FormModel model;
  model.schema = schema;
  model.seed = seed;
  model.config = config;
  model.binners = FitBins(training, schema);
  const std::vector<LabeledFeatures> data = Featurize(training, schema, model.binners, registry);
  const std::vector<LabeledRow> rows = ToRows(data);

  if (config.kind == ClassifierKind::kGbdt) {
    auto gbdt = GradientBoostedTrees::Fit(rows, schema.features.size(), config.gbdt);
    model.feature_importance = OrderByScore(schema, gbdt.gain_importance());
    model.importance_method = "split_gain";
    model.classifier = std::move(gbdt);
  } else {
    model.classifier = CategoricalNaiveBayes::Fit(rows, schema.features.size(), config.nb_alpha);
    model.feature_importance = PermutationImportance(model, data, seed);
    model.importance_method = "permutation_train";
  }
  return model;
}

Form PredictForm(const FormModel& model, const FeatureVector& features) {
  if (!features.MatchesSchema(model.schema)) {
    throw std::invalid_argument("feature vector does not match schema " + model.schema.Name());
  }
  return ArgmaxForm(Scores(model.classifier, features.values()));
}

std::vector<std::string> PermutationImportance(const FormModel& model,
                                               std::span<const LabeledFeatures> data,
                                               std::uint64_t seed) {
  const std::size_t num_features = model.schema.features.size();
  if (data.empty()) return model.schema.features;

  std::map<std::vector<std::string>, Form> cache;
  auto predict = [&](const std::vector<std::string>& values) {
    auto it = cache.find(values);
    if (it != cache.end()) return it->second;
    const Form f = ArgmaxForm(Scores(model.classifier, values));
    cache.emplace(values, f);
    return f;
  };
  auto accuracy = [&](const std::vector<std::vector<std::string>>& columns_rows) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (predict(columns_rows[i]) == data[i].label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
  };

  std::vector<std::vector<std::string>> rows;
  rows.reserve(data.size());
  for (const auto& d : data) {
    if (!d.features.MatchesSchema(model.schema)) {
      throw std::invalid_argument("feature vector does not match schema");
    }
    rows.push_back(d.features.values());
  }
  const double base = accuracy(rows);
  const std::size_t repeats = std::max<std::size_t>(1, model.config.importance_repeats);

  std::vector<double> drop(num_features, 0.0);
  for (std::size_t f = 0; f < num_features; ++f) {
    std::mt19937_64 rng(seed * 1000003ULL + f);
    double total = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
      std::vector<std::string> column;
      column.reserve(rows.size());
      for (const auto& row : rows) column.push_back(row[f]);
      SeededShuffle(column, rng);
      auto permuted = rows;
      for (std::size_t i = 0; i < permuted.size(); ++i) permuted[i][f] = column[i];
      total += base - accuracy(permuted);
    }
    drop[f] = total / static_cast<double>(repeats);
  }
  return OrderByScore(model.schema, drop);
}

std::vector<std::string> FeatureImportance(const FormModel& model,
                                           std::span<const Instance> dev,
                                           const EntityRegistry& registry) {
  std::vector<LabeledFeatures> data;
  for (const auto& inst : dev) {
    if (!inst.gold_form) continue;
    data.push_back({model.Featurize(inst, registry), *inst.gold_form});
  }
  return PermutationImportance(model, data, model.seed);
}

VariantIndex VariantIndex::Build(std::span<const Instance> training,
                                 std::span<const FeatureVector> features,
                                 const FeatureSchema& schema,
                                 const std::vector<std::string>& importance) {
  if (training.size() != features.size()) {
    throw std::invalid_argument("instances and feature vectors differ in length");
  }
  VariantIndex index;
  for (const auto& name : importance) {
    auto i = schema.IndexOf(name);
    if (!i) throw std::invalid_argument("importance names unknown feature " + name);
    index.order_.push_back(*i);
  }
  if (index.order_.size() != schema.features.size()) {
    throw std::invalid_argument("importance is not a permutation of the schema");
  }
  for (std::size_t i = 0; i < training.size(); ++i) {
    const Instance& inst = training[i];
    if (!inst.gold_form) continue;
    const std::string variant = JoinTokens(inst.gold_re_tokens);
    for (std::size_t p = 0; p <= index.order_.size(); ++p) {
      ++index.entries_[index.Key(inst.entity_tag, *inst.gold_form, features[i], p)][variant];
    }
  }
  return index;
}

std::string VariantIndex::Key(std::string_view entity_tag, Form form,
                              const FeatureVector& features, std::size_t prefix) const {
  std::string key(entity_tag);
  key += kSep;
  key += ToString(form);
  key += kSep;
  key += std::to_string(prefix);
  for (std::size_t i = 0; i < prefix; ++i) {
    key += kSep;
    key += features.values().at(order_[i]);
  }
  return key;
}

const VariantIndex::Counts* VariantIndex::Find(std::string_view entity_tag, Form form,
                                               const FeatureVector& features,
                                               std::size_t prefix) const {
  auto it = entries_.find(Key(entity_tag, form, features, prefix));
  return it == entries_.end() ? nullptr : &it->second;
}

json VariantIndex::ToJson() const {
  json j;
  j["order"] = order_;
  json entries = json::object();
  for (const auto& [key, counts] : entries_) entries[key] = counts;
  j["entries"] = std::move(entries);
  return j;
}

VariantIndex VariantIndex::FromJson(const json& j) {
  VariantIndex index;
  index.order_ = j.at("order").get<std::vector<std::size_t>>();
  for (const auto& [key, counts] : j.at("entries").items()) {
    index.entries_[key] = counts.get<Counts>();
  }
  return index;
}

ContentSelection SelectContent(const FormModel& model, const Instance& instance, Form form,
                               const FeatureVector& features, const VariantIndex& index,
                               const PronounTable& table) {
  if (!features.MatchesSchema(model.schema)) {
    throw std::invalid_argument("feature vector does not match schema " + model.schema.Name());
  }
  ContentSelection out;
  for (std::size_t p = index.num_features() + 1; p-- > 0;) {
    ++out.lookups;
    const VariantIndex::Counts* counts = index.Find(instance.entity_tag, form, features, p);
    if (counts == nullptr || counts->empty()) continue;
    // std::map iterates lexicographically, so the first maximum wins ties.
    auto best = counts->begin();
    for (auto it = counts->begin(); it != counts->end(); ++it) {
      if (it->second > best->second) best = it;
    }
    out.matched_prefix = p;
    out.re.form_used = form;
    TokenList tokens = SplitWhitespace(best->first);
    out.re.tokens = form == Form::kProperName
                        ? std::move(tokens)
                        : ApplySentenceCasing(std::move(tokens), form, instance.sentence_initial);
    return out;
  }
  if (form == Form::kPronoun) {
    out.re = RealizePronoun(instance.entity_tag, instance.grammatical_role, table,
                            instance.pronoun_case, instance.sentence_initial);
  } else {
    out.re = RealizeProperName(instance.entity_tag);
    out.re.form_used = form;
  }
  return out;
}

MlGenerator TrainMlGenerator(std::span<const Instance> training, std::span<const Instance> dev,
                             const FeatureSchema& schema, const EntityRegistry& registry,
                             const ClassifierConfig& config, std::uint64_t seed) {
  MlGenerator gen;
  gen.model = TrainFormModel(training, schema, registry, config, seed);
  const bool has_dev = std::any_of(dev.begin(), dev.end(),
                                   [](const Instance& i) { return i.gold_form.has_value(); });
  if (has_dev) {
    gen.model.feature_importance = FeatureImportance(gen.model, dev, registry);
    gen.model.importance_method = "permutation_dev";
  }
  std::vector<FeatureVector> features;
  features.reserve(training.size());
  for (const auto& inst : training) features.push_back(gen.model.Featurize(inst, registry));
  gen.index = VariantIndex::Build(training, features, schema, gen.model.feature_importance);
  return gen;
}

void WriteModel(std::ostream& out, const MlGenerator& generator) {
  const FormModel& m = generator.model;
  json j;
  j["format"] = "regctx-model";
  j["version"] = kModelFormatVersion;
  j["schema"] = {{"kind", ToString(m.schema.kind)},
                 {"dataset", ToString(m.schema.dataset)},
                 {"features", m.schema.features}};
  j["seed"] = m.seed;
  json binners = json::array();
  for (const auto& [name, b] : m.binners) binners.push_back(BinnerToJson(b));
  j["binners"] = std::move(binners);
  j["feature_importance"] = m.feature_importance;
  j["importance_method"] = m.importance_method;
  j["importance_repeats"] = m.config.importance_repeats;
  j["classifier"] = ClassifierToJson(m.classifier);
  j["variant_index"] = generator.index.ToJson();
  out << j.dump() << '\n';
}

MlGenerator ReadModel(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "regctx-model") {
      throw DataError("model: not a regctx model file");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model: unsupported format version " + std::to_string(version));
    }
    MlGenerator gen;
    FormModel& m = gen.model;
    const json& s = j.at("schema");
    auto kind = ParseSchemaKind(s.at("kind").get<std::string>());
    auto dataset = ParseDataset(s.at("dataset").get<std::string>());
    if (!kind || !dataset) throw DataError("model: unknown schema");
    m.schema = FeatureSchema::Make(*kind, *dataset);
    if (m.schema.features != s.at("features").get<std::vector<std::string>>()) {
      throw DataError("model: feature list does not match schema " + m.schema.Name());
    }
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& b : j.at("binners")) {
      Binner binner = BinnerFromJson(b);
      std::string name = binner.feature;
      m.binners.emplace(std::move(name), std::move(binner));
    }
    m.feature_importance = j.at("feature_importance").get<std::vector<std::string>>();
    m.importance_method = j.at("importance_method").get<std::string>();
    m.config.importance_repeats = j.at("importance_repeats").get<std::size_t>();
    m.classifier = ClassifierFromJson(j.at("classifier"));
    m.config.kind = std::holds_alternative<GradientBoostedTrees>(m.classifier)
                        ? ClassifierKind::kGbdt
                        : ClassifierKind::kNaiveBayes;
    gen.index = VariantIndex::FromJson(j.at("variant_index"));
    return gen;
  } catch (const json::exception& e) {
    throw DataError(std::string("model: malformed file: ") + e.what());
  }
}

}  // namespace regctx
