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

#ifndef REGCTX_TYPES_H_
#define REGCTX_TYPES_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regctx {

// Raised for malformed input data. Carries the 1-based input line when the
// error comes from a line-oriented file (0 otherwise).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class Split { kTrain, kDev, kTest };

// Referential form of a gold or predicted RE (3-way).
enum class Form { kPronoun, kProperName, kDescription };

enum class GrammaticalRole { kSubject, kObject, kOther };

enum class Gender { kMale, kFemale, kNeuter, kUnknown };

enum class Plurality { kSingular, kPlural, kUnknown };

enum class PronounCase { kNominative, kAccusative, kGenitive, kReflexive };

std::string_view ToString(Split split);
std::string_view ToString(Form form);
std::string_view ToString(GrammaticalRole role);
std::string_view ToString(Gender gender);
std::string_view ToString(Plurality plurality);
std::string_view ToString(PronounCase pronoun_case);

// Parsers accept the canonical spellings produced by ToString plus a few
// common aliases (e.g. "name" for proper_name). They return nullopt on
// anything else.
std::optional<Split> ParseSplit(std::string_view s);
std::optional<Form> ParseForm(std::string_view s);
std::optional<GrammaticalRole> ParseRole(std::string_view s);
std::optional<Gender> ParseGender(std::string_view s);
std::optional<Plurality> ParsePlurality(std::string_view s);
std::optional<PronounCase> ParsePronounCase(std::string_view s);

// Sentinel value used by every categorical feature that is undefined for a
// slot (e.g. antecedent features on a first mention).
inline constexpr std::string_view kNone = "none";

std::string ToLower(std::string_view s);

}  // namespace regctx

#endif  // REGCTX_TYPES_H_
