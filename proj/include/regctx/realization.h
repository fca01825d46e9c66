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

#ifndef REGCTX_REALIZATION_H_
#define REGCTX_REALIZATION_H_

#include <optional>
#include <string_view>

#include "regctx/corpus.h"
#include "regctx/pronouns.h"
#include "regctx/rules.h"

namespace regctx {

struct RealizedRE {
  TokenList tokens;
  Form form_used = Form::kProperName;

  std::string Text() const { return JoinTokens(tokens); }
  bool operator==(const RealizedRE&) const = default;
};

// "Adenan_Satem" -> "Adenan Satem". Stored casing is kept.
RealizedRE RealizeProperName(std::string_view entity_tag);

// Case follows the role (object -> accusative, anything else -> nominative)
// unless `pronoun_case` asks for a genitive or reflexive form.
RealizedRE RealizePronoun(std::string_view entity_tag, std::optional<GrammaticalRole> role,
                          const PronounTable& table,
                          std::optional<PronounCase> pronoun_case = std::nullopt,
                          bool sentence_initial = false);

RealizedRE Realize(const FormDecision& decision, const Instance& instance,
                   const PronounTable& table);

// Pronoun and proper-name forms only; descriptions need content selection
// and raise std::invalid_argument here.
RealizedRE Realize(Form form, const Instance& instance, const PronounTable& table);

// Adjusts the first letter of an RE for its position: pronouns and
// determiner-initial descriptions are lowercased mid-sentence; everything is
// capitalized sentence-initially. Proper names are otherwise left alone.
TokenList ApplySentenceCasing(TokenList tokens, Form form, bool sentence_initial);

}  // namespace regctx

#endif  // REGCTX_REALIZATION_H_
