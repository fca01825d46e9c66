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

#ifndef REGCTX_DELEX_H_
#define REGCTX_DELEX_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regctx/corpus.h"

namespace regctx {

enum class Person { kFirst, kSecond, kThird };

std::string_view ToString(Person person);
std::optional<Person> ParsePerson(std::string_view s);

struct Mention {
  std::size_t sentence = 0;
  // [start, end) token range within the sentence.
  std::size_t start = 0;
  std::size_t end = 0;
  // Inferred from the surface when absent in the input.
  Person person = Person::kThird;
  bool is_union = false;
  // One tag per token when present (Penn style: NNP, NNPS, ...).
  std::vector<std::string> pos_tags;
  std::optional<Form> form;
  std::optional<GrammaticalRole> role;
  std::optional<PronounCase> pronoun_case;
  std::optional<std::string> entity_type;
};

struct CoreferenceChain {
  std::string chain_id;
  std::optional<std::string> entity_type;
  std::optional<Gender> gender;
  std::optional<Plurality> plurality;
  std::vector<Mention> mentions;
};

struct AnnotatedDocument {
  std::string doc_id;
  Split split = Split::kTrain;
  std::optional<std::string> domain_label;
  std::vector<TokenList> sentences;
  std::vector<std::size_t> paragraphs;
  ContextLength context_length;
  std::vector<CoreferenceChain> chains;

  TokenList Surface(const Mention& mention) const;
};

// Checks spans, ordering and within-chain overlap; throws DataError.
void ValidateAnnotatedDocument(const AnnotatedDocument& doc);
AnnotatedDocument ParseAnnotatedDocument(std::string_view line, std::size_t line_number = 0);
// One document per line; blank lines skipped.
std::vector<AnnotatedDocument> ParseAnnotatedDocuments(std::istream& in);

struct DelexOptions {
  // When set, "Ronald B. Koenig" counts as a firstname-lastname mention.
  bool middle_initial_is_firstname_lastname = false;
};

// Keeps third-person, non-union mentions.
CoreferenceChain FilterMentions(const CoreferenceChain& chain);

// The human name patterns, in search order.
enum class NamePattern {
  kFirstLast,
  kTitleFirstLast,
  kModifiedFirstLast,
  kTitleLast,
  kLast,
  kModifiedLast,
  kFirst,
};

std::string_view ToString(NamePattern pattern);
bool IsTitle(std::string_view token);

// True for chains typed PERSON or containing a titled or he/she mention.
bool IsHumanChain(const AnnotatedDocument& doc, const CoreferenceChain& chain);

struct ChainTag {
  std::string tag;
  std::optional<NamePattern> pattern;  // nullopt for non-human or fallback
  std::size_t mention = 0;             // mention the tag was taken from
};

// Delexicalized tag of a filtered, non-empty chain (std::invalid_argument
// otherwise). Humans: first mention matching the highest-priority name
// pattern. Others: longest proper-name mention. Fallback: first mention.
ChainTag SelectChainTag(const AnnotatedDocument& doc, const CoreferenceChain& chain,
                        const DelexOptions& options = {});

struct BuildResult {
  Document document;
  // Mentions dropped because another chain already claimed their tokens.
  std::vector<std::string> diagnostics;
};

// Replaces every surviving mention by its chain's tag. Overlaps across
// chains keep the chain whose first mention comes first. `k` overrides the
// document's own context length when set. Chain meta is added to `registry`
// for tags it does not know yet.
BuildResult BuildInstances(const AnnotatedDocument& doc, EntityRegistry& registry,
                           std::optional<ContextLength> k = std::nullopt,
                           const DelexOptions& options = {});

}  // namespace regctx

#endif  // REGCTX_DELEX_H_
