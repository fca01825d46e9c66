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

#include "regctx/pronouns.h"

#include <array>
#include <stdexcept>

namespace regctx {

namespace {

struct PronounEntry {
  std::string_view form;
  std::string_view lemma;  // empty for first/second person
};

constexpr std::array<PronounEntry, 33> kPronouns = {{
    {"he", "he"},       {"him", "he"},        {"his", "he"},        {"himself", "he"},
    {"she", "she"},     {"her", "she"},       {"hers", "she"},      {"herself", "she"},
    {"it", "it"},       {"its", "it"},        {"itself", "it"},
    {"they", "they"},   {"them", "they"},     {"their", "they"},    {"theirs", "they"},
    {"themselves", "they"},
    {"i", ""},          {"me", ""},           {"my", ""},           {"mine", ""},
    {"myself", ""},     {"we", ""},           {"us", ""},           {"our", ""},
    {"ours", ""},       {"ourselves", ""},    {"you", ""},          {"your", ""},
    {"yours", ""},      {"yourself", ""},     {"yourselves", ""},   {"thee", ""},
    {"thou", ""},
}};

// Index in the tie-break precedence; lower wins.
int LemmaRank(std::string_view lemma) {
  if (lemma == "he") return 0;
  if (lemma == "she") return 1;
  if (lemma == "it") return 2;
  return 3;
}

bool IsPronominalGold(const SlotAnnotation& slot) {
  if (slot.gold_form) return *slot.gold_form == Form::kPronoun;
  return IsPronoun(slot.gold_re_tokens);
}

}  // namespace

bool IsPronoun(std::string_view word) {
  const std::string lower = ToLower(word);
  for (const auto& entry : kPronouns) {
    if (entry.form == lower) return true;
  }
  return false;
}

bool IsPronoun(const TokenList& re) {
  return re.size() == 1 && IsPronoun(re.front());
}

std::optional<std::string> PronounLemma(std::string_view word) {
  const std::string lower = ToLower(word);
  for (const auto& entry : kPronouns) {
    if (entry.form == lower && !entry.lemma.empty()) return std::string(entry.lemma);
  }
  return std::nullopt;
}

std::optional<Paradigm> ParadigmForLemma(std::string_view lemma) {
  if (lemma == "he") return Paradigm::He();
  if (lemma == "she") return Paradigm::She();
  if (lemma == "it") return Paradigm::It();
  if (lemma == "they") return Paradigm::They();
  return std::nullopt;
}

Paradigm ParadigmFromMeta(const EntityMeta& meta) {
  if (meta.pronoun_paradigm) return *meta.pronoun_paradigm;
  const bool person = ToLower(meta.entity_type) == "person";
  if (person && meta.gender == Gender::kFemale) return Paradigm::She();
  if (person && meta.gender == Gender::kMale) return Paradigm::He();
  if (meta.plurality == Plurality::kPlural) return Paradigm::They();
  return Paradigm::It();
}

void PronounTable::Set(const std::string& tag, Paradigm paradigm) {
  if (paradigm.nominative.empty() || paradigm.accusative.empty()) {
    throw std::invalid_argument("pronoun paradigm for " + tag + " lacks nom/acc forms");
  }
  learned_.insert_or_assign(tag, std::move(paradigm));
}

const Paradigm* PronounTable::FindLearned(std::string_view tag) const {
  auto it = learned_.find(tag);
  return it == learned_.end() ? nullptr : &it->second;
}

Paradigm PronounTable::Resolve(std::string_view tag) const {
  if (const Paradigm* p = FindLearned(tag)) return *p;
  if (const EntityMeta* meta = registry_.Find(tag)) return ParadigmFromMeta(*meta);
  return ParadigmFromMeta(EntityRegistry::Default(tag));
}

PronounTable BuildPronounTable(std::span<const Document* const> training,
                               const EntityRegistry& registry) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const Document* doc : training) {
    for (const auto& slot : doc->slots) {
      if (!IsPronominalGold(slot) || slot.gold_re_tokens.size() != 1) continue;
      if (auto lemma = PronounLemma(slot.gold_re_tokens.front())) {
        ++counts[slot.entity_tag][*lemma];
      }
    }
  }
  PronounTable table(registry);
  for (const auto& [tag, lemmas] : counts) {
    std::string best;
    std::size_t best_count = 0;
    for (const auto& [lemma, count] : lemmas) {
      if (count > best_count || (count == best_count && LemmaRank(lemma) < LemmaRank(best))) {
        best = lemma;
        best_count = count;
      }
    }
    table.Set(tag, *ParadigmForLemma(best));
  }
  return table;
}

PronounTable BuildPronounTable(const Corpus& corpus, const EntityRegistry& registry) {
  const auto training = corpus.InSplit(Split::kTrain);
  return BuildPronounTable(std::span<const Document* const>(training), registry);
}

}  // namespace regctx
