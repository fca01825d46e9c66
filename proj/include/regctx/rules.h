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

#ifndef REGCTX_RULES_H_
#define REGCTX_RULES_H_

#include <set>
#include <span>
#include <string>
#include <string_view>

#include "regctx/corpus.h"
#include "regctx/pronouns.h"

namespace regctx {

enum class RuleForm { kPronominal, kNonPronominal };

// The rule or branch that produced a decision.
enum class Rationale {
  // Simple system.
  kFirstMention,
  kCompetitorPresent,
  kDiscourseOldNoCompetitor,
  // Linguistically informed system.
  kNoAntecedentInPreviousSentence,
  kParallelism,
  kLocalFocusNoCompetitor,
  kAntecedentNotInFocus,
  kCompetitorInFocus,
};

struct FormDecision {
  RuleForm form = RuleForm::kNonPronominal;
  Rationale rationale = Rationale::kFirstMention;

  bool pronominal() const { return form == RuleForm::kPronominal; }
  bool operator==(const FormDecision&) const = default;
};

std::string_view ToString(RuleForm form);
std::string_view ToString(Rationale rationale);

// True iff the target's tag occurs as an entity slot in the pre-context.
bool IsDiscourseOld(const Instance& instance);

// Entities other than the target, mentioned in the current sentence or in
// the `previous_sentences` sentences before it, that share the target's
// nominative pronoun.
std::set<std::string> Competitors(const Instance& instance, const PronounTable& table,
                                  std::size_t previous_sentences);

// Pronominal iff the target is discourse-old and has no competitor in the
// current and previous sentence.
FormDecision ApplyRregS(const Instance& instance, const PronounTable& table);

// Local focus of a sentence: entities that are discourse-old where they are
// mentioned, plus entities in subject position. `mentioned_before` holds the
// tags mentioned before the sentence starts.
std::set<std::string> LocalFocusSet(std::span<const WindowSlot> sentence_slots,
                                    const std::set<std::string>& mentioned_before);
// Local focus of the sentence preceding the instance's sentence.
std::set<std::string> LocalFocusSet(const Instance& instance);

// Slots of the sentence before the target's sentence (u1), in order.
std::vector<WindowSlot> PreviousSentenceSlots(const Instance& instance);

// Centering-style pronominalization: antecedent in the previous sentence,
// then parallelism, then local focus without a competitor in the focus set.
FormDecision ApplyRregL(const Instance& instance, const PronounTable& table);

}  // namespace regctx

#endif  // REGCTX_RULES_H_
