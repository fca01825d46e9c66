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

#ifndef REGCTX_FEATURES_H_
#define REGCTX_FEATURES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regctx/corpus.h"

namespace regctx {

enum class SchemaKind { kMlS, kMlL };
enum class Dataset { kWebnlg, kWsj };

std::string_view ToString(SchemaKind kind);
std::string_view ToString(Dataset dataset);
std::optional<SchemaKind> ParseSchemaKind(std::string_view s);
std::optional<Dataset> ParseDataset(std::string_view s);

// Ordered list of categorical features for one model variant.
struct FeatureSchema {
  SchemaKind kind = SchemaKind::kMlS;
  Dataset dataset = Dataset::kWebnlg;
  std::vector<std::string> features;

  static FeatureSchema Make(SchemaKind kind, Dataset dataset);
  std::string Name() const;
  std::optional<std::size_t> IndexOf(std::string_view feature) const;
  bool operator==(const FeatureSchema&) const = default;
};

// Named categorical values in schema order.
class FeatureVector {
 public:
  FeatureVector() = default;

  void Add(std::string name, std::string value);
  // Throws std::out_of_range for unknown names.
  const std::string& Get(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& values() const { return values_; }
  std::size_t size() const { return names_.size(); }
  bool MatchesSchema(const FeatureSchema& schema) const { return names_ == schema.features; }

  bool operator==(const FeatureVector&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> values_;
};

enum class BinKind { kQuantile, kFixed };

// Maps a non-negative distance to a categorical label. A value equal to a
// boundary falls in the lower bin: bin(d) = #{b in boundaries : b < d}.
struct Binner {
  std::string feature;
  BinKind kind = BinKind::kQuantile;
  std::vector<double> boundaries;  // strictly increasing
  std::vector<std::string> labels;  // labels.size() > boundaries.size()

  std::size_t BinIndex(double value) const;
  const std::string& Label(double value) const;
  bool operator==(const Binner&) const = default;

  static Binner Quantile(std::string feature, std::size_t groups, std::vector<double> values);
  static Binner Fixed(std::string feature, std::vector<double> boundaries,
                      std::vector<std::string> labels);
};

using Binners = std::map<std::string, Binner, std::less<>>;

// Fits the recency binners of `schema` on training instances. Quantile
// schemes use antecedent distances of non-first mentions; fixed schemes take
// their literal definitions. Throws DataError on empty training data.
Binners FitBins(std::span<const Instance> training, const FeatureSchema& schema);

FeatureVector ExtractMlS(const Instance& instance, const Binners& binners);
FeatureVector ExtractMlL(const Instance& instance, const Binners& binners,
                         const EntityRegistry& registry, Dataset dataset);
FeatureVector ExtractFeatures(const Instance& instance, const FeatureSchema& schema,
                              const Binners& binners, const EntityRegistry& registry);

std::string FeatureVectorToJsonLine(const Instance& instance, const FeatureVector& features);

}  // namespace regctx

#endif  // REGCTX_FEATURES_H_
