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

#include "regctx/predictions.h"

#include <istream>
#include <map>
#include <ostream>

#include "json.hpp"
#include "json_fields.h"

namespace regctx {

std::string PredictionToJsonLine(const Prediction& prediction) {
  nlohmann::ordered_json j;
  j["doc_id"] = prediction.doc_id;
  j["slot_index"] = prediction.slot_index;
  j["re"] = prediction.re;
  if (prediction.form) j["form"] = *prediction.form;
  return j.dump();
}

Prediction ParsePredictionLine(std::string_view line, std::size_t line_number) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what(), line_number);
  }
  if (!j.is_object()) throw DataError("prediction is not an object", line_number);
  Prediction p;
  p.doc_id = json_fields::RequireString(j, "doc_id", line_number);
  p.slot_index = json_fields::RequireIndex(j, "slot_index", line_number);
  p.re = json_fields::ParseTokenArray(json_fields::Require(j, "re", line_number), "re", line_number);
  if (p.re.empty()) throw DataError("field re: empty RE", line_number);
  if (auto it = j.find("form"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError("field 'form' must be a string", line_number);
    p.form = it->get<std::string>();
  }
  return p;
}

void WritePredictions(std::ostream& out, std::span<const Prediction> predictions) {
  for (const auto& p : predictions) out << PredictionToJsonLine(p) << '\n';
}

std::vector<Prediction> ReadPredictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(ParsePredictionLine(line, line_number));
  }
  return out;
}

std::vector<std::vector<Prediction>> AlignPredictions(std::span<const Document* const> documents,
                                                      std::span<const Prediction> predictions) {
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::vector<Prediction>> out(documents.size());
  std::vector<std::vector<bool>> seen(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    index.emplace(documents[d]->doc_id, d);
    out[d].resize(documents[d]->slots.size());
    seen[d].assign(documents[d]->slots.size(), false);
  }
  for (const auto& p : predictions) {
    auto it = index.find(p.doc_id);
    if (it == index.end()) throw DataError("prediction for unknown document " + p.doc_id);
    const std::size_t d = it->second;
    if (p.slot_index >= seen[d].size()) {
      throw DataError("document " + p.doc_id + " has " + std::to_string(seen[d].size()) +
                      " slots, prediction for slot " + std::to_string(p.slot_index));
    }
    if (seen[d][p.slot_index]) {
      throw DataError("duplicate prediction for " + p.doc_id + " slot " +
                      std::to_string(p.slot_index));
    }
    seen[d][p.slot_index] = true;
    out[d][p.slot_index] = p;
  }
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (std::size_t s = 0; s < seen[d].size(); ++s) {
      if (!seen[d][s]) {
        throw DataError("missing prediction for " + documents[d]->doc_id + " slot " +
                        std::to_string(s));
      }
    }
  }
  return out;
}

std::string DecisionToJsonLine(const DecisionRecord& record) {
  nlohmann::ordered_json j;
  j["doc_id"] = record.doc_id;
  j["slot_index"] = record.slot_index;
  j["form"] = ToString(record.decision.form);
  j["rationale"] = ToString(record.decision.rationale);
  return j.dump();
}

void WriteDecisions(std::ostream& out, std::span<const DecisionRecord> records) {
  for (const auto& r : records) out << DecisionToJsonLine(r) << '\n';
}

}  // namespace regctx
