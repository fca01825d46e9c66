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

#include "regctx/rules.h"

#include <algorithm>

namespace regctx {

namespace {

bool IsCoreRole(const std::optional<GrammaticalRole>& role) {
  return role && (*role == GrammaticalRole::kSubject || *role == GrammaticalRole::kObject);
}

}  // namespace

std::string_view ToString(RuleForm form) {
  return form == RuleForm::kPronominal ? "pronominal" : "non_pronominal";
}

std::string_view ToString(Rationale rationale) {
  switch (rationale) {
    case Rationale::kFirstMention: return "first_mention";
    case Rationale::kCompetitorPresent: return "competitor_present";
    case Rationale::kDiscourseOldNoCompetitor: return "discourse_old_no_competitor";
    case Rationale::kNoAntecedentInPreviousSentence: return "no_antecedent_in_previous_sentence";
    case Rationale::kParallelism: return "parallelism";
    case Rationale::kLocalFocusNoCompetitor: return "local_focus_no_competitor";
    case Rationale::kAntecedentNotInFocus: return "antecedent_not_in_focus";
    case Rationale::kCompetitorInFocus: return "competitor_in_focus";
  }
  return "first_mention";
}

bool IsDiscourseOld(const Instance& instance) {
  return std::any_of(instance.pre_context.begin(), instance.pre_context.end(),
                     [&](const Token& t) {
                       return t.is_entity_slot && t.surface == instance.entity_tag;
                     });
}

std::set<std::string> Competitors(const Instance& instance, const PronounTable& table,
                                  std::size_t previous_sentences) {
  const std::size_t current = instance.current_sentence_index;
  const std::size_t lowest = current >= previous_sentences ? current - previous_sentences : 0;
  const std::string target = table.Nominative(instance.entity_tag);
  std::set<std::string> out;
  for (const auto& slot : instance.window_slots) {
    if (slot.sentence < lowest || slot.sentence > current) continue;
    if (slot.entity_tag == instance.entity_tag) continue;
    if (table.Nominative(slot.entity_tag) == target) out.insert(slot.entity_tag);
  }
  return out;
}

FormDecision ApplyRregS(const Instance& instance, const PronounTable& table) {
  if (!IsDiscourseOld(instance)) return {RuleForm::kNonPronominal, Rationale::kFirstMention};
  if (!Competitors(instance, table, 1).empty()) {
    return {RuleForm::kNonPronominal, Rationale::kCompetitorPresent};
  }
  return {RuleForm::kPronominal, Rationale::kDiscourseOldNoCompetitor};
}

std::set<std::string> LocalFocusSet(std::span<const WindowSlot> sentence_slots,
                                    const std::set<std::string>& mentioned_before) {
  std::set<std::string> seen = mentioned_before;
  std::set<std::string> focus;
  for (const auto& slot : sentence_slots) {
    const bool discourse_old = seen.count(slot.entity_tag) > 0;
    const bool subject = slot.role && *slot.role == GrammaticalRole::kSubject;
    if (discourse_old || subject) focus.insert(slot.entity_tag);
    seen.insert(slot.entity_tag);
  }
  return focus;
}

std::vector<WindowSlot> PreviousSentenceSlots(const Instance& instance) {
  std::vector<WindowSlot> out;
  if (instance.current_sentence_index == 0) return out;
  const std::size_t previous = instance.current_sentence_index - 1;
  for (const auto& slot : instance.window_slots) {
    if (slot.sentence == previous) out.push_back(slot);
  }
  return out;
}

std::set<std::string> LocalFocusSet(const Instance& instance) {
  const std::vector<WindowSlot> u1 = PreviousSentenceSlots(instance);
  std::set<std::string> before;
  if (!u1.empty()) {
    for (const auto& slot : instance.window_slots) {
      if (slot.position < u1.front().position) before.insert(slot.entity_tag);
    }
  }
  return LocalFocusSet(u1, before);
}

FormDecision ApplyRregL(const Instance& instance, const PronounTable& table) {
  const std::vector<WindowSlot> u1 = PreviousSentenceSlots(instance);
  // The antecedent in u1 is the last mention of the entity there.
  const WindowSlot* antecedent = nullptr;
  for (const auto& slot : u1) {
    if (slot.entity_tag == instance.entity_tag) antecedent = &slot;
  }
  if (antecedent == nullptr) {
    return {RuleForm::kNonPronominal, Rationale::kNoAntecedentInPreviousSentence};
  }
  if (IsCoreRole(instance.grammatical_role) && instance.grammatical_role == antecedent->role) {
    return {RuleForm::kPronominal, Rationale::kParallelism};
  }

  const std::set<std::string> focus = LocalFocusSet(instance);
  if (focus.count(instance.entity_tag) == 0) {
    return {RuleForm::kNonPronominal, Rationale::kAntecedentNotInFocus};
  }
  const std::string target = table.Nominative(instance.entity_tag);
  for (const auto& other : focus) {
    if (other != instance.entity_tag && table.Nominative(other) == target) {
      return {RuleForm::kNonPronominal, Rationale::kCompetitorInFocus};
    }
  }
  return {RuleForm::kPronominal, Rationale::kLocalFocusNoCompetitor};
}

}  // namespace regctx
