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

#include "regctx/delex.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <map>
#include <set>

#include "json_fields.h"
#include "regctx/pronouns.h"

namespace regctx {

using namespace json_fields;

namespace {

constexpr std::array<std::string_view, 6> kTitles = {"Mr.", "Ms.", "Mrs.", "Dr.", "President",
                                                     "Chairman"};
constexpr std::array<std::string_view, 7> kDeterminers = {"the", "a", "an", "this",
                                                          "that", "these", "those"};

bool IsProperNounTag(std::string_view pos) { return pos == "NNP" || pos == "NNPS"; }

bool IsInitial(std::string_view token) {
  return token.size() == 2 && std::isupper(static_cast<unsigned char>(token[0])) &&
         token[1] == '.';
}

// Head of a mention: its tokens up to the first comma, with POS tags.
struct Head {
  TokenList tokens;
  std::vector<bool> proper;
};

Head MentionHead(const AnnotatedDocument& doc, const Mention& m) {
  Head head;
  const TokenList& sentence = doc.sentences[m.sentence];
  for (std::size_t i = m.start; i < m.end; ++i) {
    if (sentence[i] == ",") break;
    head.tokens.push_back(sentence[i]);
    bool proper;
    if (!m.pos_tags.empty()) {
      proper = IsProperNounTag(m.pos_tags[i - m.start]);
    } else {
      const std::string lower = ToLower(sentence[i]);
      proper = std::isupper(static_cast<unsigned char>(sentence[i][0])) && !IsPronoun(lower) &&
               std::find(kDeterminers.begin(), kDeterminers.end(), lower) == kDeterminers.end();
    }
    head.proper.push_back(proper);
  }
  if (head.tokens.empty()) {
    head.tokens.assign(sentence.begin() + m.start, sentence.begin() + m.end);
    head.proper.assign(head.tokens.size(), false);
  }
  return head;
}

// Decomposition of a head into [title] [modifiers] core, where the core is
// the trailing run of proper-noun tokens.
struct NameParts {
  bool title = false;
  std::size_t modifiers = 0;
  TokenList core;
};

NameParts SplitName(const Head& head, const DelexOptions& options) {
  NameParts parts;
  const std::size_t n = head.tokens.size();
  const std::size_t first = n > 0 && IsTitle(head.tokens[0]) ? 1 : 0;
  parts.title = first == 1;
  std::size_t core_begin = n;
  while (core_begin > first && head.proper[core_begin - 1] && !IsTitle(head.tokens[core_begin - 1])) {
    --core_begin;
  }
  parts.modifiers = core_begin - first;
  for (std::size_t i = core_begin; i < n; ++i) {
    const bool inner = i > core_begin && i + 1 < n;
    if (options.middle_initial_is_firstname_lastname && inner && IsInitial(head.tokens[i])) continue;
    parts.core.push_back(head.tokens[i]);
  }
  return parts;
}

std::optional<NamePattern> MatchPattern(const NameParts& parts,
                                        const std::set<std::string>& first_names) {
  if (parts.core.size() == 2) {
    if (parts.modifiers > 0) return NamePattern::kModifiedFirstLast;
    return parts.title ? NamePattern::kTitleFirstLast : NamePattern::kFirstLast;
  }
  if (parts.core.size() != 1) return std::nullopt;
  if (parts.title && parts.modifiers == 0) return NamePattern::kTitleLast;
  const bool is_first = first_names.count(parts.core[0]) > 0;
  if (parts.modifiers > 0) {
    return is_first ? std::nullopt : std::optional<NamePattern>(NamePattern::kModifiedLast);
  }
  return is_first ? NamePattern::kFirst : NamePattern::kLast;
}

std::string JoinTag(const TokenList& tokens) { return JoinTokens(tokens, "_"); }

bool Before(const Mention& a, const Mention& b) {
  return a.sentence != b.sentence ? a.sentence < b.sentence : a.start < b.start;
}

Mention ParseMention(const json& m, std::size_t line) {
  if (!m.is_object()) throw DataError("mention must be an object", line);
  Mention out;
  out.sentence = RequireIndex(m, "sent", line);
  out.start = RequireIndex(m, "start", line);
  out.end = RequireIndex(m, "end", line);
  auto person = OptionalEnum<Person>(m, "person", line, ParsePerson);
  if (person) out.person = *person;
  if (auto it = m.find("is_union"); it != m.end() && !it->is_null()) {
    if (!it->is_boolean()) throw DataError("field 'is_union' must be a boolean", line);
    out.is_union = it->get<bool>();
  }
  if (auto it = m.find("pos"); it != m.end() && !it->is_null()) {
    out.pos_tags = ParseTokenArray(*it, "pos", line);
  }
  out.form = OptionalEnum<Form>(m, "form", line, ParseForm);
  out.role = OptionalEnum<GrammaticalRole>(m, "gram_role", line, ParseRole);
  out.pronoun_case = OptionalEnum<PronounCase>(m, "case", line, ParsePronounCase);
  if (auto it = m.find("entity_type"); it != m.end() && !it->is_null()) {
    out.entity_type = RequireString(m, "entity_type", line);
  }
  return out;
}

// Unlabeled first/second person pronouns are recognized from the surface.
void InferPerson(const AnnotatedDocument& doc, Mention& m, bool explicit_person) {
  if (explicit_person || m.end != m.start + 1) return;
  const std::string& word = doc.sentences[m.sentence][m.start];
  if (IsPronoun(word) && !PronounLemma(word)) {
    const std::string lower = ToLower(word);
    const bool second = lower.rfind("you", 0) == 0 || lower == "thee" || lower == "thou";
    m.person = second ? Person::kSecond : Person::kFirst;
  }
}

std::string Where(const AnnotatedDocument& doc, const CoreferenceChain& chain, std::size_t m) {
  return doc.doc_id + ": chain " + chain.chain_id + " mention " + std::to_string(m);
}

}  // namespace

std::string_view ToString(Person person) {
  switch (person) {
    case Person::kFirst: return "first";
    case Person::kSecond: return "second";
    case Person::kThird: return "third";
  }
  return "third";
}

std::optional<Person> ParsePerson(std::string_view s) {
  const std::string v = ToLower(s);
  if (v == "first" || v == "1") return Person::kFirst;
  if (v == "second" || v == "2") return Person::kSecond;
  if (v == "third" || v == "3") return Person::kThird;
  return std::nullopt;
}

std::string_view ToString(NamePattern pattern) {
  switch (pattern) {
    case NamePattern::kFirstLast: return "firstname-lastname";
    case NamePattern::kTitleFirstLast: return "title-firstname-lastname";
    case NamePattern::kModifiedFirstLast: return "modified-firstname-lastname";
    case NamePattern::kTitleLast: return "title-lastname";
    case NamePattern::kLast: return "lastname";
    case NamePattern::kModifiedLast: return "modified-lastname";
    case NamePattern::kFirst: return "firstname";
  }
  return "";
}

bool IsTitle(std::string_view token) {
  return std::find(kTitles.begin(), kTitles.end(), token) != kTitles.end();
}

TokenList AnnotatedDocument::Surface(const Mention& mention) const {
  const TokenList& s = sentences.at(mention.sentence);
  return TokenList(s.begin() + mention.start, s.begin() + mention.end);
}

void ValidateAnnotatedDocument(const AnnotatedDocument& doc) {
  if (doc.doc_id.empty()) throw DataError("empty doc_id");
  if (!doc.paragraphs.empty() && doc.paragraphs.size() != doc.sentences.size()) {
    throw DataError(doc.doc_id + ": paragraphs must have one entry per sentence");
  }
  std::set<std::string> chain_ids;
  for (const auto& chain : doc.chains) {
    if (chain.chain_id.empty()) throw DataError(doc.doc_id + ": empty chain_id");
    if (!chain_ids.insert(chain.chain_id).second) {
      throw DataError(doc.doc_id + ": duplicate chain_id " + chain.chain_id);
    }
    for (std::size_t i = 0; i < chain.mentions.size(); ++i) {
      const Mention& m = chain.mentions[i];
      if (m.sentence >= doc.sentences.size()) {
        throw DataError(Where(doc, chain, i) + ": sentence index out of range");
      }
      if (m.start >= m.end || m.end > doc.sentences[m.sentence].size()) {
        throw DataError(Where(doc, chain, i) + ": span [" + std::to_string(m.start) + ", " +
                        std::to_string(m.end) + ") outside sentence " +
                        std::to_string(m.sentence));
      }
      if (!m.pos_tags.empty() && m.pos_tags.size() != m.end - m.start) {
        throw DataError(Where(doc, chain, i) + ": pos needs one tag per token");
      }
      if (i > 0) {
        const Mention& prev = chain.mentions[i - 1];
        if (!Before(prev, m)) {
          throw DataError(Where(doc, chain, i) + ": mentions must be in document order");
        }
        if (prev.sentence == m.sentence && prev.end > m.start) {
          throw DataError(Where(doc, chain, i) + ": overlaps the previous mention of its chain");
        }
      }
    }
  }
}

AnnotatedDocument ParseAnnotatedDocument(std::string_view line, std::size_t line_number) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what(), line_number);
  }
  if (!j.is_object()) throw DataError("record must be a JSON object", line_number);
  AnnotatedDocument doc;
  doc.doc_id = RequireString(j, "doc_id", line_number);
  auto split = OptionalEnum<Split>(j, "split", line_number, ParseSplit);
  if (!split) throw DataError("missing field 'split'", line_number);
  doc.split = *split;
  if (auto it = j.find("domain_label"); it != j.end() && !it->is_null()) {
    doc.domain_label = RequireString(j, "domain_label", line_number);
  }
  if (auto it = j.find("k"); it != j.end() && !it->is_null()) {
    doc.context_length = RequireIndex(j, "k", line_number);
  }
  const json& sentences = Require(j, "sentences", line_number);
  if (!sentences.is_array()) throw DataError("field 'sentences' must be an array", line_number);
  for (const auto& s : sentences) doc.sentences.push_back(ParseTokenArray(s, "sentences", line_number));
  if (auto it = j.find("paragraphs"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw DataError("field 'paragraphs' must be an array", line_number);
    for (const auto& p : *it) {
      if (!p.is_number_integer() || p.get<long long>() < 0) {
        throw DataError("field 'paragraphs' must hold non-negative integers", line_number);
      }
      doc.paragraphs.push_back(p.get<std::size_t>());
    }
  }
  std::vector<std::vector<bool>> explicit_person;
  if (auto it = j.find("chains"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw DataError("field 'chains' must be an array", line_number);
    for (const auto& c : *it) {
      if (!c.is_object()) throw DataError("chain must be an object", line_number);
      CoreferenceChain chain;
      chain.chain_id = RequireString(c, "chain_id", line_number);
      if (auto t = c.find("entity_type"); t != c.end() && !t->is_null()) {
        chain.entity_type = RequireString(c, "entity_type", line_number);
      }
      chain.gender = OptionalEnum<Gender>(c, "gender", line_number, ParseGender);
      chain.plurality = OptionalEnum<Plurality>(c, "plurality", line_number, ParsePlurality);
      const json& mentions = Require(c, "mentions", line_number);
      if (!mentions.is_array()) throw DataError("field 'mentions' must be an array", line_number);
      std::vector<bool> flags;
      for (const auto& m : mentions) {
        chain.mentions.push_back(ParseMention(m, line_number));
        flags.push_back(m.contains("person") && !m.at("person").is_null());
      }
      explicit_person.push_back(std::move(flags));
      doc.chains.push_back(std::move(chain));
    }
  }
  try {
    ValidateAnnotatedDocument(doc);
  } catch (const DataError& e) {
    throw DataError(e.what(), line_number);
  }
  for (std::size_t c = 0; c < doc.chains.size(); ++c) {
    for (std::size_t m = 0; m < doc.chains[c].mentions.size(); ++m) {
      InferPerson(doc, doc.chains[c].mentions[m], explicit_person[c][m]);
    }
  }
  return doc;
}

std::vector<AnnotatedDocument> ParseAnnotatedDocuments(std::istream& in) {
  std::vector<AnnotatedDocument> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    AnnotatedDocument doc = ParseAnnotatedDocument(line, line_number);
    if (!seen.insert(doc.doc_id).second) {
      throw DataError("duplicate doc_id \"" + doc.doc_id + "\"", line_number);
    }
    out.push_back(std::move(doc));
  }
  return out;
}

CoreferenceChain FilterMentions(const CoreferenceChain& chain) {
  CoreferenceChain out = chain;
  out.mentions.clear();
  for (const auto& m : chain.mentions) {
    if (m.person == Person::kThird && !m.is_union) out.mentions.push_back(m);
  }
  return out;
}

bool IsHumanChain(const AnnotatedDocument& doc, const CoreferenceChain& chain) {
  auto is_person = [](const std::optional<std::string>& type) {
    return type && ToLower(*type) == "person";
  };
  if (is_person(chain.entity_type)) return true;
  for (const auto& m : chain.mentions) {
    if (is_person(m.entity_type)) return true;
    const TokenList surface = doc.Surface(m);
    if (IsTitle(surface.front())) return true;
    if (surface.size() == 1) {
      const auto lemma = PronounLemma(surface.front());
      if (lemma && (*lemma == "he" || *lemma == "she")) return true;
    }
  }
  return false;
}

ChainTag SelectChainTag(const AnnotatedDocument& doc, const CoreferenceChain& chain,
                        const DelexOptions& options) {
  if (chain.mentions.empty()) {
    throw std::invalid_argument("chain " + chain.chain_id + " has no mentions");
  }
  std::vector<Head> heads;
  for (const auto& m : chain.mentions) heads.push_back(MentionHead(doc, m));

  if (IsHumanChain(doc, chain)) {
    std::vector<NameParts> parts;
    std::set<std::string> first_names;
    for (const auto& h : heads) {
      parts.push_back(SplitName(h, options));
      if (parts.back().core.size() >= 2) first_names.insert(parts.back().core.front());
    }
    std::optional<ChainTag> best;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto pattern = MatchPattern(parts[i], first_names);
      if (!pattern) continue;
      if (!best || *pattern < *best->pattern) best = ChainTag{JoinTag(heads[i].tokens), pattern, i};
    }
    if (best) return *best;
  } else {
    std::optional<std::size_t> longest;
    for (std::size_t i = 0; i < heads.size(); ++i) {
      const auto& h = heads[i];
      const bool all_proper = std::all_of(h.proper.begin(), h.proper.end(), [](bool b) { return b; });
      if (!all_proper || h.tokens.empty()) continue;
      if (!longest || h.tokens.size() > heads[*longest].tokens.size()) longest = i;
    }
    if (longest) return ChainTag{JoinTag(heads[*longest].tokens), std::nullopt, *longest};
  }
  return ChainTag{JoinTag(heads.front().tokens), std::nullopt, 0};
}

BuildResult BuildInstances(const AnnotatedDocument& doc, EntityRegistry& registry,
                           std::optional<ContextLength> k, const DelexOptions& options) {
  ValidateAnnotatedDocument(doc);
  struct Kept {
    CoreferenceChain chain;
    ChainTag tag;
  };
  std::vector<Kept> chains;
  for (const auto& chain : doc.chains) {
    CoreferenceChain filtered = FilterMentions(chain);
    if (filtered.mentions.empty()) continue;
    ChainTag tag = SelectChainTag(doc, filtered, options);
    chains.push_back({std::move(filtered), std::move(tag)});
  }
  std::stable_sort(chains.begin(), chains.end(), [](const Kept& a, const Kept& b) {
    return Before(a.chain.mentions.front(), b.chain.mentions.front());
  });

  BuildResult result;
  // owner[s][t]: index into `chains` + 1, 0 when free.
  std::vector<std::vector<std::size_t>> owner(doc.sentences.size());
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) owner[s].assign(doc.sentences[s].size(), 0);
  // starts[s][t]: (chain, mention) of a kept mention starting at t.
  std::vector<std::map<std::size_t, std::pair<std::size_t, std::size_t>>> starts(doc.sentences.size());
  for (std::size_t c = 0; c < chains.size(); ++c) {
    for (std::size_t m = 0; m < chains[c].chain.mentions.size(); ++m) {
      const Mention& mention = chains[c].chain.mentions[m];
      auto& row = owner[mention.sentence];
      const auto clash = std::find_if(row.begin() + mention.start, row.begin() + mention.end,
                                      [](std::size_t o) { return o != 0; });
      if (clash != row.begin() + mention.end) {
        result.diagnostics.push_back(
            doc.doc_id + ": mention of chain " + chains[c].chain.chain_id + " at sentence " +
            std::to_string(mention.sentence) + " tokens [" + std::to_string(mention.start) + ", " +
            std::to_string(mention.end) + ") overlaps chain " + chains[*clash - 1].chain.chain_id +
            "; dropped");
        continue;
      }
      std::fill(row.begin() + mention.start, row.begin() + mention.end, c + 1);
      starts[mention.sentence][mention.start] = {c, m};
    }
  }

  Document& out = result.document;
  out.doc_id = doc.doc_id;
  out.split = doc.split;
  out.domain_label = doc.domain_label;
  out.paragraphs = doc.paragraphs;
  out.context_length = k ? *k : doc.context_length;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    Sentence sentence;
    const TokenList& tokens = doc.sentences[s];
    for (std::size_t t = 0; t < tokens.size();) {
      auto it = starts[s].find(t);
      if (it == starts[s].end()) {
        sentence.push_back(Token{tokens[t], false});
        ++t;
        continue;
      }
      const auto [c, m] = it->second;
      const Mention& mention = chains[c].chain.mentions[m];
      SlotAnnotation slot;
      slot.sentence = s;
      slot.token = sentence.size();
      slot.entity_tag = chains[c].tag.tag;
      slot.gold_re_tokens = doc.Surface(mention);
      slot.gold_form = mention.form;
      slot.grammatical_role = mention.role;
      slot.pronoun_case = mention.pronoun_case;
      slot.chain_id = chains[c].chain.chain_id;
      out.slots.push_back(std::move(slot));
      sentence.push_back(Token{chains[c].tag.tag, true});
      t = mention.end;
    }
    out.sentences.push_back(std::move(sentence));
  }

  for (const auto& kept : chains) {
    if (registry.Contains(kept.tag.tag)) continue;
    const CoreferenceChain& chain = kept.chain;
    EntityMeta meta;
    meta.entity_tag = kept.tag.tag;
    std::set<std::string> lemmas;
    for (const auto& m : chain.mentions) {
      if (m.end == m.start + 1) {
        if (auto lemma = PronounLemma(doc.sentences[m.sentence][m.start])) lemmas.insert(*lemma);
      }
    }
    if (chain.entity_type) {
      meta.entity_type = *chain.entity_type;
    } else if (auto it = std::find_if(chain.mentions.begin(), chain.mentions.end(),
                                      [](const Mention& m) { return m.entity_type.has_value(); });
               it != chain.mentions.end()) {
      meta.entity_type = *it->entity_type;
    } else if (IsHumanChain(doc, chain)) {
      meta.entity_type = "PERSON";
    }
    if (chain.gender) {
      meta.gender = *chain.gender;
    } else if (lemmas.count("he") && !lemmas.count("she")) {
      meta.gender = Gender::kMale;
    } else if (lemmas.count("she") && !lemmas.count("he")) {
      meta.gender = Gender::kFemale;
    }
    if (chain.plurality) {
      meta.plurality = *chain.plurality;
    } else if (lemmas.size() == 1 && lemmas.count("they")) {
      meta.plurality = Plurality::kPlural;
    }
    registry.Insert(std::move(meta));
  }
  ValidateDocument(out);
  return result;
}

}  // namespace regctx
