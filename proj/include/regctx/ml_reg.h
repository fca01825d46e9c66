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

#ifndef REGCTX_ML_REG_H_
#define REGCTX_ML_REG_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regctx/classifier.h"
#include "regctx/corpus.h"
#include "regctx/features.h"
#include "regctx/pronouns.h"
#include "regctx/realization.h"

namespace regctx {

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::kGbdt;
  GbdtParams gbdt;
  double nb_alpha = 1.0;
  // Shuffles averaged per feature in permutation importance.
  std::size_t importance_repeats = 5;
};

struct LabeledFeatures {
  FeatureVector features;
  Form label = Form::kProperName;
};

// Three-way referential form classifier plus everything needed to featurize
// new instances.
struct FormModel {
  FeatureSchema schema;
  Binners binners;
  Classifier classifier;
  // Most important first; a permutation of schema.features.
  std::vector<std::string> feature_importance;
  std::string importance_method;
  std::uint64_t seed = 0;
  ClassifierConfig config;

  FeatureVector Featurize(const Instance& instance, const EntityRegistry& registry) const {
    return ExtractFeatures(instance, schema, binners, registry);
  }
};

// Fits binners and the classifier on training instances (all must carry a
// gold form). Stores the classifier's own importance: split gain for boosted
// trees, training-set permutation importance for naive Bayes.
FormModel TrainFormModel(std::span<const Instance> training, const FeatureSchema& schema,
                         const EntityRegistry& registry, const ClassifierConfig& config,
                         std::uint64_t seed);

// Throws std::invalid_argument when the vector does not match the schema.
Form PredictForm(const FormModel& model, const FeatureVector& features);

// Mean accuracy drop when one feature's column is shuffled, averaged over
// config.importance_repeats shuffles. Most important first; ties keep schema
// order.
std::vector<std::string> PermutationImportance(const FormModel& model,
                                               std::span<const LabeledFeatures> data,
                                               std::uint64_t seed);
std::vector<std::string> FeatureImportance(const FormModel& model,
                                           std::span<const Instance> dev,
                                           const EntityRegistry& registry);

// Training REs keyed by (entity, form, importance-ordered feature prefix).
class VariantIndex {
 public:
  using Counts = std::map<std::string, std::size_t>;

  static VariantIndex Build(std::span<const Instance> training,
                            std::span<const FeatureVector> features,
                            const FeatureSchema& schema,
                            const std::vector<std::string>& importance);

  // Variants observed for the first `prefix` features in importance order.
  const Counts* Find(std::string_view entity_tag, Form form, const FeatureVector& features,
                     std::size_t prefix) const;
  std::size_t num_features() const { return order_.size(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::size_t>& order() const { return order_; }

  nlohmann::json ToJson() const;
  static VariantIndex FromJson(const nlohmann::json& j);

 private:
  std::string Key(std::string_view entity_tag, Form form, const FeatureVector& features,
                  std::size_t prefix) const;

  std::vector<std::size_t> order_;  // schema indices, most important first
  std::map<std::string, Counts> entries_;
};

struct ContentSelection {
  RealizedRE re;
  // Index lookups performed (at most num_features + 1).
  std::size_t lookups = 0;
  // Prefix length that matched; nullopt when the fallback realizer was used.
  std::optional<std::size_t> matched_prefix;
};

// Most frequent training variant for the entity and predicted form, backing
// off one feature at a time from the least important. With no match at all,
// pronouns are realized from the pronoun table and everything else as the
// underscore-expanded tag.
ContentSelection SelectContent(const FormModel& model, const Instance& instance, Form form,
                               const FeatureVector& features, const VariantIndex& index,
                               const PronounTable& table);

// Model + variant index, as persisted on disk.
struct MlGenerator {
  FormModel model;
  VariantIndex index;
};

// Trains on `training`; when `dev` has instances the stored importance is
// recomputed by permutation on it before the variant index is built.
MlGenerator TrainMlGenerator(std::span<const Instance> training, std::span<const Instance> dev,
                             const FeatureSchema& schema, const EntityRegistry& registry,
                             const ClassifierConfig& config, std::uint64_t seed);

inline constexpr int kModelFormatVersion = 1;
void WriteModel(std::ostream& out, const MlGenerator& generator);
MlGenerator ReadModel(std::istream& in);

}  // namespace regctx

#endif  // REGCTX_ML_REG_H_
