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

#ifndef REGCTX_PRONOUNS_H_
#define REGCTX_PRONOUNS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "regctx/corpus.h"

namespace regctx {

// Closed inventory of English personal, possessive and reflexive pronouns.
// Matching is case-insensitive.
bool IsPronoun(std::string_view word);
bool IsPronoun(const TokenList& re);

// Third-person lemma ("he", "she", "it", "they") of a pronoun form, if any.
std::optional<std::string> PronounLemma(std::string_view word);
std::optional<Paradigm> ParadigmForLemma(std::string_view lemma);

// Paradigm implied by entity meta-information alone.
Paradigm ParadigmFromMeta(const EntityMeta& meta);

// Per-entity pronoun dictionary. Entities learned from training data take
// precedence; everything else falls back to the registry's meta-information.
class PronounTable {
 public:
  PronounTable() = default;
  explicit PronounTable(EntityRegistry registry) : registry_(std::move(registry)) {}

  // Throws std::invalid_argument if nominative or accusative is empty.
  void Set(const std::string& tag, Paradigm paradigm);
  const Paradigm* FindLearned(std::string_view tag) const;
  Paradigm Resolve(std::string_view tag) const;
  std::string Nominative(std::string_view tag) const { return Resolve(tag).nominative; }

  const std::map<std::string, Paradigm, std::less<>>& learned() const { return learned_; }
  const EntityRegistry& registry() const { return registry_; }

 private:
  std::map<std::string, Paradigm, std::less<>> learned_;
  EntityRegistry registry_;
};

// Learns the most frequent pronoun lemma of each entity from pronominal gold
// REs. Ties go to he > she > it > they.
PronounTable BuildPronounTable(std::span<const Document* const> training,
                               const EntityRegistry& registry);
PronounTable BuildPronounTable(const Corpus& corpus, const EntityRegistry& registry);

}  // namespace regctx

#endif  // REGCTX_PRONOUNS_H_
