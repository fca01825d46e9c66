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

#include "regctx/classifier.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace regctx {

using json = nlohmann::json;

namespace {

// Training rows collapsed to unique encoded feature vectors.
struct GroupedRow {
  std::vector<int> codes;
  std::array<double, kNumForms> counts{};
  double total = 0.0;
};

std::vector<GroupedRow> GroupRows(std::span<const LabeledRow> rows,
                                  const CategoricalEncoder& encoder) {
  std::map<std::vector<int>, std::array<double, kNumForms>> grouped;
  for (const auto& row : rows) grouped[encoder.Encode(row.values)][FormIndex(row.label)] += 1.0;
  std::vector<GroupedRow> out;
  out.reserve(grouped.size());
  for (auto& [codes, counts] : grouped) {
    GroupedRow g;
    g.codes = codes;
    g.counts = counts;
    for (double c : counts) g.total += c;
    out.push_back(std::move(g));
  }
  return out;
}

ClassScores Softmax(const ClassScores& scores) {
  const double m = *std::max_element(scores.begin(), scores.end());
  ClassScores p{};
  double z = 0.0;
  for (std::size_t c = 0; c < kNumForms; ++c) {
    p[c] = std::exp(scores[c] - m);
    z += p[c];
  }
  for (auto& v : p) v /= z;
  return p;
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<GroupedRow>& rows, const std::vector<double>& grad,
              const std::vector<double>& hess, const CategoricalEncoder& encoder,
              const GbdtParams& params, std::vector<double>& gain_importance)
      : rows_(rows),
        grad_(grad),
        hess_(hess),
        encoder_(encoder),
        params_(params),
        gain_importance_(gain_importance) {}

  GradientBoostedTrees::Tree Build(std::vector<int> members) {
    tree_.clear();
    Grow(std::move(members), 0);
    return std::move(tree_);
  }

 private:
  int Grow(std::vector<int> members, int depth) {
    const int id = static_cast<int>(tree_.size());
    tree_.emplace_back();
    double g = 0.0;
    double h = 0.0;
    for (int r : members) {
      g += grad_[r];
      h += hess_[r];
    }
    tree_[id].value = -g / (h + params_.l2) * params_.learning_rate;
    if (depth >= params_.max_depth) return id;

    const double parent = g * g / (h + params_.l2);
    double best_gain = params_.min_gain;
    int best_feature = -1;
    int best_category = -1;
    for (std::size_t f = 0; f < encoder_.num_features(); ++f) {
      const std::size_t card = encoder_.cardinality(f);
      std::vector<double> gs(card, 0.0);
      std::vector<double> hs(card, 0.0);
      for (int r : members) {
        const int code = rows_[r].codes[f];
        if (code < 0) continue;
        gs[code] += grad_[r];
        hs[code] += hess_[r];
      }
      for (std::size_t v = 0; v < card; ++v) {
        const double hl = hs[v];
        const double hr = h - hl;
        if (hl < params_.min_child_hessian || hr < params_.min_child_hessian) continue;
        const double gl = gs[v];
        const double gr = g - gl;
        const double gain = gl * gl / (hl + params_.l2) + gr * gr / (hr + params_.l2) - parent;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_category = static_cast<int>(v);
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<int> left;
    std::vector<int> right;
    for (int r : members) {
      (rows_[r].codes[best_feature] == best_category ? left : right).push_back(r);
    }
    if (left.empty() || right.empty()) return id;
    gain_importance_[best_feature] += best_gain;
    tree_[id].feature = best_feature;
    tree_[id].category = best_category;
    const int l = Grow(std::move(left), depth + 1);
    const int rgt = Grow(std::move(right), depth + 1);
    tree_[id].left = l;
    tree_[id].right = rgt;
    return id;
  }

  const std::vector<GroupedRow>& rows_;
  const std::vector<double>& grad_;
  const std::vector<double>& hess_;
  const CategoricalEncoder& encoder_;
  const GbdtParams& params_;
  std::vector<double>& gain_importance_;
  GradientBoostedTrees::Tree tree_;
};

double EvalTree(const GradientBoostedTrees::Tree& tree, const std::vector<int>& codes) {
  int node = 0;
  while (tree[node].feature >= 0) {
    node = codes[tree[node].feature] == tree[node].category ? tree[node].left : tree[node].right;
  }
  return tree[node].value;
}

}  // namespace

std::size_t FormIndex(Form form) {
  switch (form) {
    case Form::kPronoun: return 0;
    case Form::kProperName: return 1;
    case Form::kDescription: return 2;
  }
  return 1;
}

Form FormAt(std::size_t index) {
  static constexpr Form kForms[kNumForms] = {Form::kPronoun, Form::kProperName,
                                             Form::kDescription};
  return kForms[index];
}

Form ArgmaxForm(const ClassScores& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumForms; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return FormAt(best);
}

CategoricalEncoder CategoricalEncoder::Fit(std::span<const LabeledRow> rows,
                                           std::size_t num_features) {
  CategoricalEncoder enc;
  enc.vocab_.resize(num_features);
  for (const auto& row : rows) {
    if (row.values.size() != num_features) throw std::invalid_argument("row width mismatch");
    for (std::size_t f = 0; f < num_features; ++f) enc.vocab_[f].push_back(row.values[f]);
  }
  for (auto& v : enc.vocab_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return enc;
}

std::vector<int> CategoricalEncoder::Encode(const std::vector<std::string>& values) const {
  if (values.size() != vocab_.size()) throw std::invalid_argument("feature count mismatch");
  std::vector<int> codes(values.size(), -1);
  for (std::size_t f = 0; f < values.size(); ++f) {
    auto it = std::lower_bound(vocab_[f].begin(), vocab_[f].end(), values[f]);
    if (it != vocab_[f].end() && *it == values[f]) {
      codes[f] = static_cast<int>(it - vocab_[f].begin());
    }
  }
  return codes;
}

json CategoricalEncoder::ToJson() const { return vocab_; }

CategoricalEncoder CategoricalEncoder::FromJson(const json& j) {
  CategoricalEncoder enc;
  enc.vocab_ = j.get<std::vector<std::vector<std::string>>>();
  return enc;
}

GradientBoostedTrees GradientBoostedTrees::Fit(std::span<const LabeledRow> rows,
                                               std::size_t num_features,
                                               const GbdtParams& params) {
  if (rows.empty()) throw std::invalid_argument("no training rows");
  GradientBoostedTrees model;
  model.params_ = params;
  model.encoder_ = CategoricalEncoder::Fit(rows, num_features);
  model.gain_importance_.assign(num_features, 0.0);

  const std::vector<GroupedRow> grouped = GroupRows(rows, model.encoder_);
  std::array<double, kNumForms> totals{};
  for (const auto& g : grouped) {
    for (std::size_t c = 0; c < kNumForms; ++c) totals[c] += g.counts[c];
  }
  const double n = static_cast<double>(rows.size());
  for (std::size_t c = 0; c < kNumForms; ++c) {
    model.base_score_[c] = std::log((totals[c] + 1.0) / (n + kNumForms));
  }

  std::vector<ClassScores> scores(grouped.size(), model.base_score_);
  std::vector<int> all(grouped.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<double> grad(grouped.size());
  std::vector<double> hess(grouped.size());

  for (int round = 0; round < params.rounds; ++round) {
    std::vector<ClassScores> probs(grouped.size());
    for (std::size_t i = 0; i < grouped.size(); ++i) probs[i] = Softmax(scores[i]);
    for (std::size_t c = 0; c < kNumForms; ++c) {
      for (std::size_t i = 0; i < grouped.size(); ++i) {
        const double p = probs[i][c];
        grad[i] = grouped[i].total * p - grouped[i].counts[c];
        hess[i] = grouped[i].total * p * (1.0 - p);
      }
      TreeBuilder builder(grouped, grad, hess, model.encoder_, params, model.gain_importance_);
      Tree tree = builder.Build(all);
      for (std::size_t i = 0; i < grouped.size(); ++i) {
        scores[i][c] += EvalTree(tree, grouped[i].codes);
      }
      model.trees_.push_back(std::move(tree));
    }
  }
  return model;
}

ClassScores GradientBoostedTrees::Scores(const std::vector<std::string>& values) const {
  const std::vector<int> codes = encoder_.Encode(values);
  ClassScores s = base_score_;
  for (std::size_t t = 0; t < trees_.size(); ++t) s[t % kNumForms] += EvalTree(trees_[t], codes);
  return s;
}

json GradientBoostedTrees::ToJson() const {
  json j;
  j["params"] = {{"rounds", params_.rounds},
                 {"max_depth", params_.max_depth},
                 {"learning_rate", params_.learning_rate},
                 {"l2", params_.l2},
                 {"min_child_hessian", params_.min_child_hessian},
                 {"min_gain", params_.min_gain}};
  j["vocabulary"] = encoder_.ToJson();
  j["base_score"] = base_score_;
  j["gain_importance"] = gain_importance_;
  json trees = json::array();
  for (const auto& tree : trees_) {
    json nodes = json::array();
    for (const auto& node : tree) {
      nodes.push_back(json::array({node.feature, node.category, node.left, node.right, node.value}));
    }
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);
  return j;
}

GradientBoostedTrees GradientBoostedTrees::FromJson(const json& j) {
  GradientBoostedTrees model;
  const json& p = j.at("params");
  model.params_.rounds = p.at("rounds").get<int>();
  model.params_.max_depth = p.at("max_depth").get<int>();
  model.params_.learning_rate = p.at("learning_rate").get<double>();
  model.params_.l2 = p.at("l2").get<double>();
  model.params_.min_child_hessian = p.at("min_child_hessian").get<double>();
  model.params_.min_gain = p.at("min_gain").get<double>();
  model.encoder_ = CategoricalEncoder::FromJson(j.at("vocabulary"));
  model.base_score_ = j.at("base_score").get<ClassScores>();
  model.gain_importance_ = j.at("gain_importance").get<std::vector<double>>();
  for (const auto& nodes : j.at("trees")) {
    Tree tree;
    for (const auto& n : nodes) {
      tree.push_back(Node{n.at(0).get<int>(), n.at(1).get<int>(), n.at(2).get<int>(),
                          n.at(3).get<int>(), n.at(4).get<double>()});
    }
    model.trees_.push_back(std::move(tree));
  }
  return model;
}

CategoricalNaiveBayes CategoricalNaiveBayes::Fit(std::span<const LabeledRow> rows,
                                                 std::size_t num_features, double alpha) {
  if (rows.empty()) throw std::invalid_argument("no training rows");
  CategoricalNaiveBayes model;
  model.alpha_ = alpha;
  model.encoder_ = CategoricalEncoder::Fit(rows, num_features);
  model.counts_.resize(num_features);
  for (std::size_t f = 0; f < num_features; ++f) {
    model.counts_[f].assign(model.encoder_.cardinality(f), {});
  }
  for (const auto& row : rows) {
    const std::size_t c = FormIndex(row.label);
    model.class_counts_[c] += 1.0;
    const std::vector<int> codes = model.encoder_.Encode(row.values);
    for (std::size_t f = 0; f < num_features; ++f) model.counts_[f][codes[f]][c] += 1.0;
  }
  return model;
}

ClassScores CategoricalNaiveBayes::Scores(const std::vector<std::string>& values) const {
  const std::vector<int> codes = encoder_.Encode(values);
  double n = 0.0;
  for (double c : class_counts_) n += c;
  ClassScores s{};
  for (std::size_t c = 0; c < kNumForms; ++c) {
    s[c] = std::log((class_counts_[c] + alpha_) / (n + alpha_ * kNumForms));
    for (std::size_t f = 0; f < codes.size(); ++f) {
      const double buckets = static_cast<double>(counts_[f].size()) + 1.0;
      const double count = codes[f] >= 0 ? counts_[f][codes[f]][c] : 0.0;
      s[c] += std::log((count + alpha_) / (class_counts_[c] + alpha_ * buckets));
    }
  }
  return s;
}

json CategoricalNaiveBayes::ToJson() const {
  json j;
  j["alpha"] = alpha_;
  j["vocabulary"] = encoder_.ToJson();
  j["class_counts"] = class_counts_;
  j["counts"] = counts_;
  return j;
}

CategoricalNaiveBayes CategoricalNaiveBayes::FromJson(const json& j) {
  CategoricalNaiveBayes model;
  model.alpha_ = j.at("alpha").get<double>();
  model.encoder_ = CategoricalEncoder::FromJson(j.at("vocabulary"));
  model.class_counts_ = j.at("class_counts").get<std::array<double, kNumForms>>();
  model.counts_ =
      j.at("counts").get<std::vector<std::vector<std::array<double, kNumForms>>>>();
  return model;
}

std::string_view ToString(ClassifierKind kind) {
  return kind == ClassifierKind::kGbdt ? "gbdt" : "naive-bayes";
}

std::optional<ClassifierKind> ParseClassifierKind(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "gbdt" || v == "boosted-trees") return ClassifierKind::kGbdt;
  if (v == "naive-bayes" || v == "nb" || v == "naive_bayes") return ClassifierKind::kNaiveBayes;
  return std::nullopt;
}

ClassScores Scores(const Classifier& classifier, const std::vector<std::string>& values) {
  return std::visit([&](const auto& c) { return c.Scores(values); }, classifier);
}

json ClassifierToJson(const Classifier& classifier) {
  if (const auto* gbdt = std::get_if<GradientBoostedTrees>(&classifier)) {
    return json{{"kind", "gbdt"}, {"state", gbdt->ToJson()}};
  }
  return json{{"kind", "naive-bayes"},
              {"state", std::get<CategoricalNaiveBayes>(classifier).ToJson()}};
}

Classifier ClassifierFromJson(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gbdt") return GradientBoostedTrees::FromJson(j.at("state"));
  if (kind == "naive-bayes") return CategoricalNaiveBayes::FromJson(j.at("state"));
  throw DataError("model: unknown classifier kind \"" + kind + "\"");
}

}  // namespace regctx
