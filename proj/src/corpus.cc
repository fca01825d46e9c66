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

#include "regctx/corpus.h"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "json_fields.h"

namespace regctx {

using json = nlohmann::json;

namespace {

using namespace json_fields;

void ValidateDocumentAt(const Document& doc, std::size_t line) {
  if (doc.doc_id.empty()) throw DataError("empty doc_id", line);
  if (!doc.paragraphs.empty() && doc.paragraphs.size() != doc.sentences.size()) {
    throw DataError(doc.doc_id + ": paragraphs must have one entry per sentence", line);
  }
  for (std::size_t i = 1; i < doc.paragraphs.size(); ++i) {
    if (doc.paragraphs[i] < doc.paragraphs[i - 1]) {
      throw DataError(doc.doc_id + ": paragraph indices must be non-decreasing", line);
    }
  }
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence) CheckToken(token.surface, "sentences", line);
  }

  std::map<std::string, std::string> chain_tags;
  std::set<std::pair<std::size_t, std::size_t>> slot_positions;
  for (std::size_t i = 0; i < doc.slots.size(); ++i) {
    const SlotAnnotation& slot = doc.slots[i];
    const std::string where = doc.doc_id + ": slot " + std::to_string(i);
    if (slot.sentence >= doc.sentences.size()) {
      throw DataError(where + ": sentence index " + std::to_string(slot.sentence) +
                          " out of range",
                      line);
    }
    if (slot.token >= doc.sentences[slot.sentence].size()) {
      throw DataError(where + ": token index " + std::to_string(slot.token) +
                          " past end of sentence " + std::to_string(slot.sentence),
                      line);
    }
    const Token& token = doc.sentences[slot.sentence][slot.token];
    if (token.surface != slot.entity_tag) {
      throw DataError(where + ": token \"" + token.surface + "\" does not match entity_tag \"" +
                          slot.entity_tag + "\"",
                      line);
    }
    if (slot.gold_re_tokens.empty()) throw DataError(where + ": empty gold_re", line);
    if (i > 0) {
      const SlotAnnotation& prev = doc.slots[i - 1];
      if (std::make_pair(prev.sentence, prev.token) >= std::make_pair(slot.sentence, slot.token)) {
        throw DataError(where + ": slots must be ordered by document position", line);
      }
    }
    slot_positions.emplace(slot.sentence, slot.token);
    auto [it, inserted] = chain_tags.emplace(slot.chain_id, slot.entity_tag);
    if (!inserted && it->second != slot.entity_tag) {
      throw DataError(where + ": chain '" + slot.chain_id + "' mixes entity tags \"" +
                          it->second + "\" and \"" + slot.entity_tag + "\"",
                      line);
    }
  }
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    for (std::size_t t = 0; t < doc.sentences[s].size(); ++t) {
      if (doc.sentences[s][t].is_entity_slot != (slot_positions.count({s, t}) > 0)) {
        throw DataError(doc.doc_id + ": entity-slot flag inconsistent at sentence " +
                            std::to_string(s) + " token " + std::to_string(t),
                        line);
      }
    }
  }
}

json ParadigmToJson(const Paradigm& p) {
  return json{{"nom", p.nominative}, {"acc", p.accusative}, {"gen", p.genitive},
              {"refl", p.reflexive}};
}

}  // namespace

const std::string& Paradigm::Get(PronounCase pronoun_case) const {
  switch (pronoun_case) {
    case PronounCase::kNominative: return nominative;
    case PronounCase::kAccusative: return accusative;
    case PronounCase::kGenitive: return genitive;
    case PronounCase::kReflexive: return reflexive;
  }
  return nominative;
}

Paradigm Paradigm::He() { return {"he", "him", "his", "himself"}; }
Paradigm Paradigm::She() { return {"she", "her", "her", "herself"}; }
Paradigm Paradigm::It() { return {"it", "it", "its", "itself"}; }
Paradigm Paradigm::They() { return {"they", "them", "their", "themselves"}; }

const EntityMeta* EntityRegistry::Find(std::string_view tag) const {
  auto it = entries_.find(tag);
  return it == entries_.end() ? nullptr : &it->second;
}

EntityMeta EntityRegistry::Default(std::string_view tag) {
  EntityMeta meta;
  meta.entity_tag = std::string(tag);
  meta.entity_type = "unknown";
  meta.gender = Gender::kUnknown;
  meta.plurality = Plurality::kSingular;
  meta.pronoun_paradigm = Paradigm::It();
  return meta;
}

EntityMeta EntityRegistry::Lookup(std::string_view tag) const {
  if (const EntityMeta* meta = Find(tag)) return *meta;
  return Default(tag);
}

void EntityRegistry::Insert(EntityMeta meta) {
  std::string key = meta.entity_tag;
  entries_.insert_or_assign(std::move(key), std::move(meta));
}

std::vector<const Document*> Corpus::InSplit(Split split) const {
  std::vector<const Document*> out;
  for (const auto& doc : documents) {
    if (doc.split == split) out.push_back(&doc);
  }
  return out;
}

void ValidateDocument(const Document& doc) { ValidateDocumentAt(doc, 0); }

Document ParseDocumentJson(std::string_view line, std::size_t line_number) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what(), line_number);
  }
  if (!j.is_object()) throw DataError("record must be a JSON object", line_number);

  Document doc;
  doc.doc_id = RequireString(j, "doc_id", line_number);
  const std::string split = RequireString(j, "split", line_number);
  auto parsed_split = ParseSplit(split);
  if (!parsed_split) throw DataError("field 'split': unknown value \"" + split + "\"", line_number);
  doc.split = *parsed_split;
  if (auto it = j.find("domain_label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError("field 'domain_label' must be a string", line_number);
    doc.domain_label = it->get<std::string>();
  }
  if (auto it = j.find("k"); it != j.end() && !it->is_null()) {
    doc.context_length = RequireIndex(j, "k", line_number);
  }

  const json& sentences = Require(j, "sentences", line_number);
  if (!sentences.is_array()) throw DataError("field 'sentences' must be an array", line_number);
  for (const auto& s : sentences) {
    Sentence sentence;
    for (auto& surface : ParseTokenArray(s, "sentences", line_number)) {
      sentence.push_back(Token{std::move(surface), false});
    }
    doc.sentences.push_back(std::move(sentence));
  }

  if (auto it = j.find("paragraphs"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw DataError("field 'paragraphs' must be an array", line_number);
    for (const auto& p : *it) {
      if (!p.is_number_integer() || p.get<long long>() < 0) {
        throw DataError("field 'paragraphs' must hold non-negative integers", line_number);
      }
      doc.paragraphs.push_back(p.get<std::size_t>());
    }
  }

  const json& slots = Require(j, "slots", line_number);
  if (!slots.is_array()) throw DataError("field 'slots' must be an array", line_number);
  for (const auto& s : slots) {
    if (!s.is_object()) throw DataError("slot must be an object", line_number);
    SlotAnnotation slot;
    slot.sentence = RequireIndex(s, "sent", line_number);
    slot.token = RequireIndex(s, "tok", line_number);
    slot.entity_tag = RequireString(s, "entity_tag", line_number);
    CheckToken(slot.entity_tag, "entity_tag", line_number);
    slot.gold_re_tokens = ParseTokenArray(Require(s, "gold_re", line_number), "gold_re", line_number);
    slot.gold_form = OptionalEnum<Form>(s, "gold_form", line_number, ParseForm);
    slot.grammatical_role = OptionalEnum<GrammaticalRole>(s, "gram_role", line_number, ParseRole);
    slot.pronoun_case = OptionalEnum<PronounCase>(s, "case", line_number, ParsePronounCase);
    slot.chain_id = RequireString(s, "chain_id", line_number);
    doc.slots.push_back(std::move(slot));
  }
  for (const auto& slot : doc.slots) {
    if (slot.sentence < doc.sentences.size() &&
        slot.token < doc.sentences[slot.sentence].size()) {
      doc.sentences[slot.sentence][slot.token].is_entity_slot = true;
    }
  }
  ValidateDocumentAt(doc, line_number);
  return doc;
}

std::string SerializeDocument(const Document& doc) {
  json j;
  j["doc_id"] = doc.doc_id;
  j["split"] = ToString(doc.split);
  if (doc.domain_label) j["domain_label"] = *doc.domain_label;
  if (doc.context_length) j["k"] = *doc.context_length;
  json sentences = json::array();
  for (const auto& sentence : doc.sentences) {
    json tokens = json::array();
    for (const auto& token : sentence) tokens.push_back(token.surface);
    sentences.push_back(std::move(tokens));
  }
  j["sentences"] = std::move(sentences);
  if (!doc.paragraphs.empty()) j["paragraphs"] = doc.paragraphs;
  json slots = json::array();
  for (const auto& slot : doc.slots) {
    json s;
    s["sent"] = slot.sentence;
    s["tok"] = slot.token;
    s["entity_tag"] = slot.entity_tag;
    s["gold_re"] = slot.gold_re_tokens;
    if (slot.gold_form) s["gold_form"] = ToString(*slot.gold_form);
    if (slot.grammatical_role) s["gram_role"] = ToString(*slot.grammatical_role);
    if (slot.pronoun_case) s["case"] = ToString(*slot.pronoun_case);
    s["chain_id"] = slot.chain_id;
    slots.push_back(std::move(s));
  }
  j["slots"] = std::move(slots);
  return j.dump();
}

Corpus ParseCorpus(std::istream& in) {
  Corpus corpus;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; })) {
      continue;
    }
    Document doc = ParseDocumentJson(line, line_number);
    if (!seen.insert(doc.doc_id).second) {
      throw DataError("duplicate doc_id \"" + doc.doc_id + "\"", line_number);
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

void WriteCorpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& doc : corpus.documents) out << SerializeDocument(doc) << '\n';
}

EntityRegistry ParseRegistry(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("registry: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("registry: top level must be an object");
  EntityRegistry registry;
  for (const auto& [tag, entry] : j.items()) {
    if (!entry.is_object()) throw DataError("registry: entry \"" + tag + "\" must be an object");
    EntityMeta meta;
    meta.entity_tag = tag;
    meta.entity_type = entry.value("type", std::string("unknown"));
    const std::string gender = entry.value("gender", std::string("unknown"));
    auto g = ParseGender(gender);
    if (!g) throw DataError("registry: entry \"" + tag + "\": unknown gender \"" + gender + "\"");
    meta.gender = *g;
    const std::string plurality = entry.value("plurality", std::string("singular"));
    auto p = ParsePlurality(plurality);
    if (!p) {
      throw DataError("registry: entry \"" + tag + "\": unknown plurality \"" + plurality + "\"");
    }
    meta.plurality = *p;
    if (auto it = entry.find("pronouns"); it != entry.end() && !it->is_null()) {
      if (!it->contains("nom") || !it->contains("acc")) {
        throw DataError("registry: entry \"" + tag + "\": pronouns need nom and acc");
      }
      Paradigm paradigm;
      paradigm.nominative = (*it)["nom"].get<std::string>();
      paradigm.accusative = (*it)["acc"].get<std::string>();
      paradigm.genitive = it->value("gen", paradigm.accusative);
      paradigm.reflexive = it->value("refl", paradigm.accusative);
      meta.pronoun_paradigm = paradigm;
    }
    registry.Insert(std::move(meta));
  }
  return registry;
}

void WriteRegistry(std::ostream& out, const EntityRegistry& registry) {
  json j = json::object();
  for (const auto& [tag, meta] : registry.entries()) {
    json e;
    e["type"] = meta.entity_type;
    e["gender"] = ToString(meta.gender);
    e["plurality"] = ToString(meta.plurality);
    if (meta.pronoun_paradigm) e["pronouns"] = ParadigmToJson(*meta.pronoun_paradigm);
    j[tag] = std::move(e);
  }
  out << j.dump(2) << '\n';
}

std::vector<Instance> ExtractInstances(const Document& doc, ContextLength k) {
  const std::size_t n = doc.sentences.size();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) offsets[s + 1] = offsets[s] + doc.sentences[s].size();
  auto global = [&](const SlotAnnotation& slot) { return offsets[slot.sentence] + slot.token; };

  std::map<std::string, std::size_t, std::less<>> chain_sizes;
  for (const auto& slot : doc.slots) ++chain_sizes[slot.entity_tag];

  std::vector<Instance> instances;
  instances.reserve(doc.slots.size());
  std::map<std::string, std::size_t, std::less<>> last_seen;
  std::map<std::string, std::size_t, std::less<>> seen_count;

  for (std::size_t i = 0; i < doc.slots.size(); ++i) {
    const SlotAnnotation& slot = doc.slots[i];
    const std::size_t s = slot.sentence;
    const std::size_t first = k ? (s >= *k ? s - *k : 0) : 0;
    const std::size_t last = k ? std::min(n - 1, s + *k) : n - 1;

    Instance inst;
    inst.doc_id = doc.doc_id;
    inst.slot_index = i;
    inst.entity_tag = slot.entity_tag;
    inst.current_sentence_index = s;
    inst.gold_re_tokens = slot.gold_re_tokens;
    inst.gold_form = slot.gold_form;
    inst.grammatical_role = slot.grammatical_role;
    inst.pronoun_case = slot.pronoun_case;
    inst.sentence_initial = slot.token == 0;
    inst.first_window_sentence = first;
    inst.paragraph = doc.ParagraphOf(s);

    for (std::size_t si = first; si < s; ++si) {
      inst.pre_context.insert(inst.pre_context.end(), doc.sentences[si].begin(),
                              doc.sentences[si].end());
    }
    const Sentence& current = doc.sentences[s];
    inst.pre_context.insert(inst.pre_context.end(), current.begin(), current.begin() + slot.token);
    inst.post_context.insert(inst.post_context.end(), current.begin() + slot.token + 1,
                             current.end());
    for (std::size_t si = s + 1; si <= last; ++si) {
      inst.post_context.insert(inst.post_context.end(), doc.sentences[si].begin(),
                               doc.sentences[si].end());
    }

    for (std::size_t j = 0; j < doc.slots.size(); ++j) {
      const SlotAnnotation& other = doc.slots[j];
      if (other.sentence < first || other.sentence > last) continue;
      inst.window_slots.push_back(WindowSlot{j, other.entity_tag, other.sentence,
                                             other.grammatical_role,
                                             global(other) - offsets[first]});
    }

    inst.chain_length = chain_sizes[slot.entity_tag];
    inst.mention_index = seen_count[slot.entity_tag]++;
    if (auto it = last_seen.find(slot.entity_tag); it != last_seen.end()) {
      const SlotAnnotation& ante = doc.slots[it->second];
      Antecedent a;
      a.slot_index = it->second;
      a.word_distance = global(slot) - global(ante);
      a.sentence_distance = slot.sentence - ante.sentence;
      a.paragraph_distance = doc.ParagraphOf(slot.sentence) - doc.ParagraphOf(ante.sentence);
      a.role = ante.grammatical_role;
      for (std::size_t j = it->second + 1; j < i; ++j) {
        if (doc.slots[j].entity_tag != slot.entity_tag) {
          a.other_re_between = true;
          break;
        }
      }
      inst.antecedent = a;
    }
    last_seen.insert_or_assign(slot.entity_tag, i);
    instances.push_back(std::move(inst));
  }
  return instances;
}

std::vector<Instance> ExtractInstances(const Document& doc) {
  return ExtractInstances(doc, doc.context_length);
}

std::vector<TokenList> GoldRealizations(const Document& doc) {
  std::vector<TokenList> out;
  out.reserve(doc.slots.size());
  for (const auto& slot : doc.slots) out.push_back(slot.gold_re_tokens);
  return out;
}

std::string RelexicalizedDocument::Text() const { return JoinTokens(tokens); }

RelexicalizedDocument RelexicalizeTokens(const Document& doc,
                                         const std::vector<TokenList>& realized) {
  if (realized.size() != doc.slots.size()) {
    throw DataError(doc.doc_id + ": expected " + std::to_string(doc.slots.size()) +
                    " realizations, got " + std::to_string(realized.size()));
  }
  RelexicalizedDocument out;
  std::size_t next_slot = 0;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    out.sentence_starts.push_back(out.tokens.size());
    for (std::size_t t = 0; t < doc.sentences[s].size(); ++t) {
      if (next_slot < doc.slots.size() && doc.slots[next_slot].sentence == s &&
          doc.slots[next_slot].token == t) {
        const std::size_t begin = out.tokens.size();
        for (const auto& tok : realized[next_slot]) {
          for (auto& piece : SplitWhitespace(tok)) out.tokens.push_back(std::move(piece));
        }
        out.slot_spans.emplace_back(begin, out.tokens.size());
        ++next_slot;
      } else {
        out.tokens.push_back(doc.sentences[s][t].surface);
      }
    }
  }
  return out;
}

std::string Relexicalize(const Document& doc, const std::vector<TokenList>& realized) {
  return RelexicalizeTokens(doc, realized).Text();
}

std::string JoinTokens(const TokenList& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += sep;
    out += tokens[i];
  }
  return out;
}

std::string JoinSurfaces(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i].surface;
  }
  return out;
}

TokenList SplitWhitespace(std::string_view text) {
  TokenList out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace regctx
