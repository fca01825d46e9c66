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

#ifndef REGCTX_METRICS_H_
#define REGCTX_METRICS_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "regctx/corpus.h"

namespace regctx {

enum class SedLevel { kCharacter, kToken };
enum class PrfAverage { kBinary, kMacro };

struct EvalOptions {
  SedLevel sed_level = SedLevel::kCharacter;
  bool lowercase = true;
  bool bleu_smoothing = false;
  PrfAverage prf_average = PrfAverage::kBinary;

  std::string Describe() const;
};

// Lowercases (optionally) and joins with single spaces.
std::string NormalizeRe(const TokenList& tokens, bool lowercase = true);

// Unit-cost Levenshtein distance over any random-access sequences.
template <typename Seq>
std::size_t Levenshtein(const Seq& a, const Seq& b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

// Character-level distance between two strings.
std::size_t Sed(std::string_view pred, std::string_view gold);
// Distance between two REs after normalization, at the configured level.
std::size_t Sed(const TokenList& pred, const TokenList& gold, const EvalOptions& options);

// Fraction of aligned REs equal after normalization. Throws
// std::invalid_argument on length mismatch; 0 for empty input.
double ReAccuracy(std::span<const TokenList> predictions, std::span<const TokenList> golds,
                  bool lowercase = true);

inline constexpr std::size_t kBleuOrder = 4;

// Sufficient statistics of corpus BLEU; adding stats of two corpora gives the
// stats of their union.
struct BleuStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;

  BleuStats& operator+=(const BleuStats& other);
  bool operator==(const BleuStats&) const = default;

  // 0..100. Orders with no candidate n-grams are left out of the geometric
  // mean. Smoothing adds one to matches and totals of every order.
  double Score(bool smoothing = false) const;
};

BleuStats ComputeBleuStats(const TokenList& candidate, const TokenList& reference);
// Throws std::invalid_argument on empty or misaligned input.
double CorpusBleu(std::span<const TokenList> candidates, std::span<const TokenList> references,
                  bool smoothing = false);

// Slot-level correctness of one document.
struct DocumentOutcome {
  std::vector<bool> slot_correct;
  std::vector<std::size_t> slot_sentence;
};

// Fraction of documents (with at least one slot) whose slots are all correct.
double TextAccuracy(std::span<const DocumentOutcome> documents);
// Fraction of sentences holding at least one slot whose slots are all correct.
double SentenceAccuracy(std::span<const DocumentOutcome> documents);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Prf PrfFromCounts(std::size_t tp, std::size_t fp, std::size_t fn);
// Pronoun is the positive class. Macro averaging also scores the
// non-pronoun class and averages each of P, R and F1.
Prf PronominalizationPrf(std::span<const bool> predicted, std::span<const bool> gold,
                         PrfAverage average = PrfAverage::kBinary);

struct EvalCounts {
  std::size_t slots = 0;
  std::size_t re_correct = 0;
  std::size_t sed_total = 0;
  std::size_t documents = 0;
  std::size_t documents_correct = 0;
  std::size_t sentences = 0;
  std::size_t sentences_correct = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  BleuStats bleu;

  EvalCounts& operator+=(const EvalCounts& other);
  bool operator==(const EvalCounts&) const = default;
};

struct EvalMetrics {
  double re_accuracy = 0.0;
  double sed_mean = 0.0;
  double bleu = 0.0;
  double text_accuracy = 0.0;
  double sentence_accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

EvalMetrics MetricsFromCounts(const EvalCounts& counts, const EvalOptions& options);

struct SplitReport {
  EvalCounts counts;
  EvalMetrics metrics;
};

struct EvalReport {
  EvalOptions options;
  SplitReport overall;
  // Keyed by document domain_label (e.g. "seen" / "unseen"); empty when no
  // document carries a label. Unlabeled documents go under "unlabeled".
  std::map<std::string, SplitReport> by_domain;
  std::map<std::string, std::string> metadata;
};

// One predicted RE, with the form label when the system emits one.
struct Prediction {
  std::string doc_id;
  std::size_t slot_index = 0;
  TokenList re;
  std::optional<std::string> form;

  bool operator==(const Prediction&) const = default;
};

bool PredictedPronoun(const Prediction& prediction);
bool GoldPronoun(const SlotAnnotation& slot);

// Scores one document given its predictions in slot order.
EvalCounts EvaluateDocument(const Document& doc, std::span<const Prediction> predictions,
                            const EvalOptions& options);

// Sums per-document counts in corpus order into overall and per-domain
// sub-reports.
EvalReport AssembleReport(std::span<const Document* const> documents,
                          std::span<const EvalCounts> counts, const EvalOptions& options);

// `predictions[i]` holds the predictions of `documents[i]` in slot order.
EvalReport Evaluate(std::span<const Document* const> documents,
                    const std::vector<std::vector<Prediction>>& predictions,
                    const EvalOptions& options);

nlohmann::ordered_json ReportToJson(const EvalReport& report);
EvalReport ReportFromJson(const nlohmann::json& j);

enum class TextAccuracyLevel { kDocument, kSentence };

// Aligned text table with one row per system. When reports carry a domain
// breakdown, each cell shows the per-domain values separated by "/".
std::string RenderTable(const std::vector<std::pair<std::string, EvalReport>>& rows,
                        TextAccuracyLevel level = TextAccuracyLevel::kDocument);

}  // namespace regctx

#endif  // REGCTX_METRICS_H_
