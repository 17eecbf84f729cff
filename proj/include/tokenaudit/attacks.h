//
// Copyright 2026 The TokenAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef TOKENAUDIT_ATTACKS_H_
#define TOKENAUDIT_ATTACKS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tokenaudit/classifier.h"
#include "tokenaudit/corpus.h"
#include "tokenaudit/saliency.h"

namespace tokenaudit {

enum class AttackKind { kLoo, kLooS, kAaS, kAaR, kAaQ };
enum class PositionPolicy { kAfterMaxSaliency, kPrepend };

std::string attack_kind_name(AttackKind kind);

// Fixed report ordering shared by tables and CSV output.
inline constexpr std::array<AttackKind, 5> kAttackOrder = {
    AttackKind::kLoo, AttackKind::kLooS, AttackKind::kAaS, AttackKind::kAaR,
    AttackKind::kAaQ};

struct AttackSpec {
  AttackKind kind = AttackKind::kLoo;
  PositionPolicy position_policy = PositionPolicy::kAfterMaxSaliency;
  // Insertion pools indexed by the gold class of the example under attack;
  // the class opposition is resolved before construction, so pools[c]
  // already holds the opposite class's words. Empty for removal kinds.
  std::vector<std::vector<std::string>> pools;
};

AttackSpec make_loo_spec();
AttackSpec make_loo_s_spec();
// kind must be kAaS or kAaR.
AttackSpec make_insertion_spec(AttackKind kind,
                               std::vector<std::vector<std::string>> pools);
// Every class receives the four question words, prepended.
AttackSpec make_aa_q_spec(int n_classes);

// Throws when the fields violate the kind's structural rules.
void validate_attack_spec(const AttackSpec& spec, int n_classes);

TokenizedDoc remove_token(const TokenizedDoc& doc, std::size_t index);
TokenizedDoc insert_token(const TokenizedDoc& doc, std::size_t position,
                          const std::string& word, const Vocab& vocab);

// Removes the max-salient token; nullopt is the skip signal for documents a
// removal would empty.
std::optional<TokenizedDoc> apply_loo(const SaliencyMap& map,
                                      const TokenizedDoc& doc);
TokenizedDoc apply_insertion(const TokenizedDoc& doc, const std::string& word,
                             const SaliencyMap& map, PositionPolicy policy,
                             const Vocab& vocab);

struct AttackOutcome {
  AttackKind kind = AttackKind::kLoo;
  double clean_accuracy = 0.0;     // over admissible examples
  double attacked_accuracy = 0.0;  // mean correctness over perturbed copies
  double degradation_points = 0.0;
  std::int64_t n_examples = 0;  // admissible
  std::int64_t n_skipped = 0;
};

AttackOutcome run_attack_hs(const HsModel& model, const Vocab& vocab,
                            const std::vector<HsExample>& test,
                            const AttackSpec& spec);
// Premise-side perturbation only; the hypothesis passes through unchanged.
AttackOutcome run_attack_sie(const SieModel& model, const Vocab& vocab,
                             const std::vector<SieExample>& test,
                             const AttackSpec& spec);

struct SuiteOptions {
  int pool_size = 5;
  std::int64_t rarity_threshold = 2;
  // When non-empty, replaces the mined rare-word pool for every class.
  std::vector<std::string> hs_rare_pool_override;
  std::vector<std::string> sie_rare_pool_override;
  // opposite[c] names the class whose pool attacks examples of gold class c.
  std::array<int, 2> hs_opposite = {1, 0};
  std::array<int, 3> sie_opposite = {1, 0, 0};
  // Subset of attacks to run; kAttackOrder decides the emitted order either
  // way.
  std::vector<AttackKind> kinds = {AttackKind::kLoo, AttackKind::kLooS,
                                   AttackKind::kAaS, AttackKind::kAaR,
                                   AttackKind::kAaQ};
};

// Single-task runners: build the needed pools from the train split, then
// evaluate the selected attacks on the test split in canonical order.
std::vector<AttackOutcome> run_hs_attacks(const HsModel& model,
                                          const Vocab& vocab,
                                          const std::vector<HsExample>& train,
                                          const std::vector<HsExample>& test,
                                          const SuiteOptions& options,
                                          std::vector<std::string>* notes);
std::vector<AttackOutcome> run_sie_attacks(
    const SieModel& model, const Vocab& vocab,
    const std::vector<SieExample>& train, const std::vector<SieExample>& test,
    const SuiteOptions& options, std::vector<std::string>* notes);

struct AblationReport {
  std::vector<AttackOutcome> hs;   // ordered per kAttackOrder
  std::vector<AttackOutcome> sie;  // same ordering
  double hs_clean_accuracy = 0.0;  // full test set
  double sie_clean_accuracy = 0.0;
  std::vector<std::string> notes;  // pool shortfalls and similar conditions
};

// Builds saliency tables and attack pools from the train splits only, then
// evaluates all five attacks on the test splits for both tasks.
AblationReport run_suite(const HsModel& hs_model, const Vocab& hs_vocab,
                         const std::vector<HsExample>& hs_train,
                         const std::vector<HsExample>& hs_test,
                         const SieModel& sie_model, const Vocab& sie_vocab,
                         const std::vector<SieExample>& sie_train,
                         const std::vector<SieExample>& sie_test,
                         const SuiteOptions& options);

std::string format_report_csv(const AblationReport& report);
std::string format_report_text(const AblationReport& report);

// Degradation points reported for the original full-scale classifiers, kept
// as an ordering reference for report sanity checks. The desk-scale
// surrogates here are not expected to reproduce them.
inline constexpr std::array<double, 5> kFullScaleHsDegradation = {
    11.4, 10.3, 14.1, 38.4, 19.2};
inline constexpr std::array<double, 5> kFullScaleSieDegradation = {
    5.2, 3.5, 10.6, 11.3, 2.6};

}  // namespace tokenaudit

#endif  // TOKENAUDIT_ATTACKS_H_
