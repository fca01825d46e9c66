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

#include "regctx/realization.h"

#include <array>
#include <cctype>
#include <stdexcept>

namespace regctx {

namespace {

constexpr std::array<std::string_view, 7> kDeterminers = {"the", "a", "an", "this",
                                                          "that", "these", "those"};

bool IsDeterminer(std::string_view word) {
  const std::string lower = ToLower(word);
  for (auto d : kDeterminers) {
    if (d == lower) return true;
  }
  return false;
}

}  // namespace

RealizedRE RealizeProperName(std::string_view entity_tag) {
  RealizedRE out;
  out.form_used = Form::kProperName;
  std::string current;
  for (char c : entity_tag) {
    if (c == '_') {
      if (!current.empty()) out.tokens.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.tokens.push_back(std::move(current));
  // A tag made only of underscores has no name material; keep it verbatim
  // rather than returning an empty RE.
  if (out.tokens.empty()) out.tokens.emplace_back(entity_tag);
  return out;
}

TokenList ApplySentenceCasing(TokenList tokens, Form form, bool sentence_initial) {
  if (tokens.empty() || tokens.front().empty()) return tokens;
  std::string& first = tokens.front();
  if (sentence_initial) {
    first[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(first[0])));
  } else if (form == Form::kPronoun ||
             (form == Form::kDescription && IsDeterminer(first))) {
    first = ToLower(first);
  }
  return tokens;
}

RealizedRE RealizePronoun(std::string_view entity_tag, std::optional<GrammaticalRole> role,
                          const PronounTable& table, std::optional<PronounCase> pronoun_case,
                          bool sentence_initial) {
  const Paradigm paradigm = table.Resolve(entity_tag);
  PronounCase c = PronounCase::kNominative;
  if (pronoun_case) {
    c = *pronoun_case;
  } else if (role && *role == GrammaticalRole::kObject) {
    c = PronounCase::kAccusative;
  }
  RealizedRE out;
  out.form_used = Form::kPronoun;
  out.tokens = ApplySentenceCasing({paradigm.Get(c)}, Form::kPronoun, sentence_initial);
  return out;
}

RealizedRE Realize(const FormDecision& decision, const Instance& instance,
                   const PronounTable& table) {
  return Realize(decision.pronominal() ? Form::kPronoun : Form::kProperName, instance, table);
}

RealizedRE Realize(Form form, const Instance& instance, const PronounTable& table) {
  switch (form) {
    case Form::kPronoun:
      return RealizePronoun(instance.entity_tag, instance.grammatical_role, table,
                            instance.pronoun_case, instance.sentence_initial);
    case Form::kProperName:
      return RealizeProperName(instance.entity_tag);
    case Form::kDescription:
      break;
  }
  throw std::invalid_argument("description realization requires content selection");
}

}  // namespace regctx
