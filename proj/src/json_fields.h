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

#ifndef REGCTX_SRC_JSON_FIELDS_H_
#define REGCTX_SRC_JSON_FIELDS_H_

// Field readers shared by the JSONL parsers. Every failure is a DataError
// carrying the input line.

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "regctx/corpus.h"
#include "regctx/types.h"

namespace regctx {
namespace json_fields {

using json = nlohmann::json;

inline bool HasWhitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

inline void CheckToken(std::string_view token, std::string_view field, std::size_t line) {
  if (token.empty()) throw DataError(std::string(field) + ": empty token", line);
  if (HasWhitespace(token)) {
    throw DataError(std::string(field) + ": token \"" + std::string(token) +
                        "\" contains whitespace",
                    line);
  }
}

inline const json& Require(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) throw DataError(std::string("missing field '") + field + "'", line);
  return *it;
}

inline std::string RequireString(const json& obj, const char* field, std::size_t line) {
  const json& v = Require(obj, field, line);
  if (!v.is_string()) throw DataError(std::string("field '") + field + "' must be a string", line);
  return v.get<std::string>();
}

inline TokenList ParseTokenArray(const json& v, const char* field, std::size_t line) {
  if (!v.is_array()) throw DataError(std::string("field '") + field + "' must be an array", line);
  TokenList out;
  out.reserve(v.size());
  for (const auto& t : v) {
    if (!t.is_string()) throw DataError(std::string("field '") + field + "' must hold strings", line);
    out.push_back(t.get<std::string>());
    CheckToken(out.back(), field, line);
  }
  return out;
}

inline std::size_t RequireIndex(const json& obj, const char* field, std::size_t line) {
  const json& v = Require(obj, field, line);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw DataError(std::string("field '") + field + "' must be a non-negative integer", line);
  }
  return v.get<std::size_t>();
}

template <typename T, typename Parser>
inline std::optional<T> OptionalEnum(const json& obj, const char* field, std::size_t line,
                              Parser parse) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw DataError(std::string("field '") + field + "' must be a string", line);
  auto parsed = parse(it->get<std::string>());
  if (!parsed) {
    throw DataError(std::string("field '") + field + "': unknown value \"" +
                        it->get<std::string>() + "\"",
                    line);
  }
  return parsed;
}

}  // namespace json_fields
}  // namespace regctx

#endif  // REGCTX_SRC_JSON_FIELDS_H_
