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

#ifndef REGCTX_PREDICTIONS_H_
#define REGCTX_PREDICTIONS_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "regctx/corpus.h"
#include "regctx/metrics.h"
#include "regctx/rules.h"

namespace regctx {

// {doc_id, slot_index, re: [token, ...], form?}
std::string PredictionToJsonLine(const Prediction& prediction);
Prediction ParsePredictionLine(std::string_view line, std::size_t line_number = 0);

void WritePredictions(std::ostream& out, std::span<const Prediction> predictions);
// Blank lines are skipped; errors carry the line number.
std::vector<Prediction> ReadPredictions(std::istream& in);

// Groups predictions per document in corpus order. Every slot must be
// covered exactly once and no prediction may point outside the documents.
std::vector<std::vector<Prediction>> AlignPredictions(std::span<const Document* const> documents,
                                                      std::span<const Prediction> predictions);

struct DecisionRecord {
  std::string doc_id;
  std::size_t slot_index = 0;
  FormDecision decision;
};

// {doc_id, slot_index, form, rationale}
std::string DecisionToJsonLine(const DecisionRecord& record);
void WriteDecisions(std::ostream& out, std::span<const DecisionRecord> records);

}  // namespace regctx

#endif  // REGCTX_PREDICTIONS_H_
