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

#ifndef REGCTX_CORPUS_H_
#define REGCTX_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regctx/types.h"

namespace regctx {

// A single whitespace-free token. Entity slots hold the delexicalized tag of
// the referent (e.g. "AWH_Engineering_College").
struct Token {
  std::string surface;
  bool is_entity_slot = false;

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;
using TokenList = std::vector<std::string>;

struct SlotAnnotation {
  std::size_t sentence = 0;
  std::size_t token = 0;
  std::string entity_tag;
  TokenList gold_re_tokens;
  std::optional<Form> gold_form;
  std::optional<GrammaticalRole> grammatical_role;
  // Only set when the slot needs a genitive or reflexive pronoun.
  std::optional<PronounCase> pronoun_case;
  std::string chain_id;

  bool operator==(const SlotAnnotation&) const = default;
};

// Number of sentences of context taken on each side of a slot. nullopt means
// the whole document (short WebNLG-style texts).
using ContextLength = std::optional<std::size_t>;

struct Document {
  std::string doc_id;
  Split split = Split::kTrain;
  std::optional<std::string> domain_label;
  std::vector<Sentence> sentences;
  std::vector<SlotAnnotation> slots;
  // Paragraph index per sentence; empty means a single paragraph.
  std::vector<std::size_t> paragraphs;
  ContextLength context_length;

  bool operator==(const Document&) const = default;

  std::size_t ParagraphOf(std::size_t sentence) const {
    return paragraphs.empty() ? 0 : paragraphs[sentence];
  }
};

struct Paradigm {
  std::string nominative;
  std::string accusative;
  std::string genitive;
  std::string reflexive;

  const std::string& Get(PronounCase pronoun_case) const;
  bool operator==(const Paradigm&) const = default;

  static Paradigm He();
  static Paradigm She();
  static Paradigm It();
  static Paradigm They();
};

struct EntityMeta {
  std::string entity_tag;
  std::string entity_type = "unknown";
  Gender gender = Gender::kUnknown;
  Plurality plurality = Plurality::kSingular;
  std::optional<Paradigm> pronoun_paradigm;

  bool operator==(const EntityMeta&) const = default;
};

// Entity meta-information keyed by delexicalized tag. Lookups of unknown tags
// resolve to a neutral singular "it" entity so unseen referents never fail.
class EntityRegistry {
 public:
  const EntityMeta* Find(std::string_view tag) const;
  EntityMeta Lookup(std::string_view tag) const;
  void Insert(EntityMeta meta);
  bool Contains(std::string_view tag) const { return Find(tag) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, EntityMeta, std::less<>>& entries() const { return entries_; }

  static EntityMeta Default(std::string_view tag);

  bool operator==(const EntityRegistry&) const = default;

 private:
  std::map<std::string, EntityMeta, std::less<>> entries_;
};

struct Corpus {
  std::vector<Document> documents;
  EntityRegistry registry;

  std::vector<const Document*> InSplit(Split split) const;
  bool operator==(const Corpus&) const = default;
};

// A mention slot visible inside an instance's context window. `position`
// indexes the concatenation pre_context ++ [target] ++ post_context.
struct WindowSlot {
  std::size_t slot_index = 0;
  std::string entity_tag;
  std::size_t sentence = 0;
  std::optional<GrammaticalRole> role;
  std::size_t position = 0;
};

// Nearest preceding slot of the same entity anywhere in the document.
struct Antecedent {
  std::size_t slot_index = 0;
  std::size_t word_distance = 0;
  std::size_t sentence_distance = 0;
  std::size_t paragraph_distance = 0;
  std::optional<GrammaticalRole> role;
  // True when a slot of a different entity lies strictly between the two.
  bool other_re_between = false;
};

struct Instance {
  std::string doc_id;
  std::size_t slot_index = 0;
  std::string entity_tag;
  std::vector<Token> pre_context;
  std::vector<Token> post_context;
  std::size_t current_sentence_index = 0;
  TokenList gold_re_tokens;
  std::optional<Form> gold_form;
  std::optional<GrammaticalRole> grammatical_role;
  std::optional<PronounCase> pronoun_case;

  bool sentence_initial = false;
  std::size_t first_window_sentence = 0;
  std::vector<WindowSlot> window_slots;

  std::size_t mention_index = 0;
  std::size_t chain_length = 1;
  std::optional<Antecedent> antecedent;
  std::size_t paragraph = 0;

  std::size_t target_position() const { return pre_context.size(); }
};

// Checks every document invariant; throws DataError naming the problem.
void ValidateDocument(const Document& doc);

Document ParseDocumentJson(std::string_view line, std::size_t line_number = 0);
std::string SerializeDocument(const Document& doc);

// One document per line. Blank lines are skipped. Duplicate doc_ids and
// schema violations raise DataError with the offending line number.
Corpus ParseCorpus(std::istream& in);
void WriteCorpus(std::ostream& out, const Corpus& corpus);

EntityRegistry ParseRegistry(std::istream& in);
void WriteRegistry(std::ostream& out, const EntityRegistry& registry);

std::vector<Instance> ExtractInstances(const Document& doc, ContextLength k);
// Uses the document's own context length.
std::vector<Instance> ExtractInstances(const Document& doc);

std::vector<TokenList> GoldRealizations(const Document& doc);

struct RelexicalizedDocument {
  TokenList tokens;
  // [begin, end) token range of each slot's realization.
  std::vector<std::pair<std::size_t, std::size_t>> slot_spans;
  // Index of the first token of each sentence.
  std::vector<std::size_t> sentence_starts;

  std::string Text() const;
};

RelexicalizedDocument RelexicalizeTokens(const Document& doc,
                                         const std::vector<TokenList>& realized);
std::string Relexicalize(const Document& doc, const std::vector<TokenList>& realized);

std::string JoinTokens(const TokenList& tokens, std::string_view sep = " ");
std::string JoinSurfaces(const std::vector<Token>& tokens);
TokenList SplitWhitespace(std::string_view text);

}  // namespace regctx

#endif  // REGCTX_CORPUS_H_
