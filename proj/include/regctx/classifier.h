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

#ifndef REGCTX_CLASSIFIER_H_
#define REGCTX_CLASSIFIER_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "regctx/types.h"

namespace regctx {

inline constexpr std::size_t kNumForms = 3;

// Class index order doubles as the tie-break order: pronoun, proper name,
// description.
std::size_t FormIndex(Form form);
Form FormAt(std::size_t index);

using ClassScores = std::array<double, kNumForms>;

// Argmax with ties resolved towards the lower class index.
Form ArgmaxForm(const ClassScores& scores);

struct LabeledRow {
  std::vector<std::string> values;
  Form label = Form::kProperName;
};

// Per-feature vocabulary of observed category values. Unseen values encode
// as -1.
class CategoricalEncoder {
 public:
  static CategoricalEncoder Fit(std::span<const LabeledRow> rows, std::size_t num_features);

  std::vector<int> Encode(const std::vector<std::string>& values) const;
  std::size_t num_features() const { return vocab_.size(); }
  std::size_t cardinality(std::size_t feature) const { return vocab_[feature].size(); }

  nlohmann::json ToJson() const;
  static CategoricalEncoder FromJson(const nlohmann::json& j);

 private:
  std::vector<std::vector<std::string>> vocab_;  // sorted per feature
};

struct GbdtParams {
  int rounds = 100;
  int max_depth = 4;
  double learning_rate = 0.3;
  double l2 = 1.0;
  double min_child_hessian = 1e-3;
  double min_gain = 1e-9;
};

// Multi-class gradient boosting (softmax loss) with one regression tree per
// class and round. Splits test `feature == category`; the equal branch is
// the left child.
class GradientBoostedTrees {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    int category = -1;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };
  using Tree = std::vector<Node>;

  static GradientBoostedTrees Fit(std::span<const LabeledRow> rows, std::size_t num_features,
                                  const GbdtParams& params);

  ClassScores Scores(const std::vector<std::string>& values) const;
  // Total split gain per feature.
  const std::vector<double>& gain_importance() const { return gain_importance_; }
  std::size_t num_trees() const { return trees_.size(); }

  nlohmann::json ToJson() const;
  static GradientBoostedTrees FromJson(const nlohmann::json& j);

 private:
  GbdtParams params_;
  CategoricalEncoder encoder_;
  ClassScores base_score_{};
  // trees_[round * kNumForms + class]
  std::vector<Tree> trees_;
  std::vector<double> gain_importance_;
};

// Categorical naive Bayes with additive smoothing. Each feature reserves one
// extra bucket for unseen values.
class CategoricalNaiveBayes {
 public:
  static CategoricalNaiveBayes Fit(std::span<const LabeledRow> rows, std::size_t num_features,
                                   double alpha);

  ClassScores Scores(const std::vector<std::string>& values) const;

  nlohmann::json ToJson() const;
  static CategoricalNaiveBayes FromJson(const nlohmann::json& j);

 private:
  double alpha_ = 1.0;
  CategoricalEncoder encoder_;
  std::array<double, kNumForms> class_counts_{};
  // counts_[feature][code] -> per-class counts
  std::vector<std::vector<std::array<double, kNumForms>>> counts_;
};

enum class ClassifierKind { kGbdt, kNaiveBayes };
std::string_view ToString(ClassifierKind kind);
std::optional<ClassifierKind> ParseClassifierKind(std::string_view s);

using Classifier = std::variant<GradientBoostedTrees, CategoricalNaiveBayes>;

ClassScores Scores(const Classifier& classifier, const std::vector<std::string>& values);
nlohmann::json ClassifierToJson(const Classifier& classifier);
Classifier ClassifierFromJson(const nlohmann::json& j);

}  // namespace regctx

#endif  // REGCTX_CLASSIFIER_H_
