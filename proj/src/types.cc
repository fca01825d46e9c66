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

#include "regctx/types.h"

#include <algorithm>
#include <cctype>

namespace regctx {

std::string_view ToString(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

std::string_view ToString(Form form) {
  switch (form) {
    case Form::kPronoun: return "pronoun";
    case Form::kProperName: return "proper_name";
    case Form::kDescription: return "description";
  }
  return "proper_name";
}

std::string_view ToString(GrammaticalRole role) {
  switch (role) {
    case GrammaticalRole::kSubject: return "subject";
    case GrammaticalRole::kObject: return "object";
    case GrammaticalRole::kOther: return "other";
  }
  return "other";
}

std::string_view ToString(Gender gender) {
  switch (gender) {
    case Gender::kMale: return "male";
    case Gender::kFemale: return "female";
    case Gender::kNeuter: return "neuter";
    case Gender::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view ToString(Plurality plurality) {
  switch (plurality) {
    case Plurality::kSingular: return "singular";
    case Plurality::kPlural: return "plural";
    case Plurality::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view ToString(PronounCase pronoun_case) {
  switch (pronoun_case) {
    case PronounCase::kNominative: return "nom";
    case PronounCase::kAccusative: return "acc";
    case PronounCase::kGenitive: return "gen";
    case PronounCase::kReflexive: return "refl";
  }
  return "nom";
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<Split> ParseSplit(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "train") return Split::kTrain;
  if (v == "dev" || v == "validation" || v == "valid") return Split::kDev;
  if (v == "test") return Split::kTest;
  return std::nullopt;
}

std::optional<Form> ParseForm(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "pronoun" || v == "pronominal") return Form::kPronoun;
  if (v == "proper_name" || v == "name" || v == "proper-name") return Form::kProperName;
  if (v == "description" || v == "demonstrative") return Form::kDescription;
  return std::nullopt;
}

std::optional<GrammaticalRole> ParseRole(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "subject" || v == "subj" || v == "np-subj") return GrammaticalRole::kSubject;
  if (v == "object" || v == "obj" || v == "dobj") return GrammaticalRole::kObject;
  if (v == "other") return GrammaticalRole::kOther;
  return std::nullopt;
}

std::optional<Gender> ParseGender(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "male" || v == "m" || v == "masculine") return Gender::kMale;
  if (v == "female" || v == "f" || v == "feminine") return Gender::kFemale;
  if (v == "neuter" || v == "n") return Gender::kNeuter;
  if (v == "unknown" || v.empty()) return Gender::kUnknown;
  return std::nullopt;
}

std::optional<Plurality> ParsePlurality(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "singular" || v == "sg") return Plurality::kSingular;
  if (v == "plural" || v == "pl") return Plurality::kPlural;
  if (v == "unknown" || v.empty()) return Plurality::kUnknown;
  return std::nullopt;
}

std::optional<PronounCase> ParsePronounCase(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "nom" || v == "nominative") return PronounCase::kNominative;
  if (v == "acc" || v == "accusative") return PronounCase::kAccusative;
  if (v == "gen" || v == "genitive") return PronounCase::kGenitive;
  if (v == "refl" || v == "reflexive") return PronounCase::kReflexive;
  return std::nullopt;
}

}  // namespace regctx
