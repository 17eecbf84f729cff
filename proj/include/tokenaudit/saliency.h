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

#ifndef TOKENAUDIT_SALIENCY_H_
#define TOKENAUDIT_SALIENCY_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tokenaudit/classifier.h"
#include "tokenaudit/corpus.h"

namespace tokenaudit {

enum class SaliencySide { kSingle, kPremise, kHypothesis };

// Per-token attribution for one document: raw_scores[i] is the dot product
// of token i's embedding with the gradient of the predicted-class logit with
// respect to that embedding; scores is its L1-normalized absolute value.
struct SaliencyMap {
  std::vector<std::string> tokens;
  std::vector<double> scores;
  std::vector<double> raw_scores;
  int predicted_class = 0;
  SaliencySide side = SaliencySide::kSingle;
};

SaliencyMap input_x_gradient_hs(const HsModel& model, const TokenizedDoc& doc);
// Premise map first, hypothesis map second; both target the same predicted
// class of the pair.
std::pair<SaliencyMap, SaliencyMap> input_x_gradient_sie(
    const SieModel& model, const TokenizedDoc& premise,
    const TokenizedDoc& hypothesis);

using TokenPredicate = std::function<bool(const std::string&)>;

// Index of the highest normalized score; ties go to the lowest index. With a
// predicate, only tokens satisfying it compete; throws when none do.
std::size_t max_salient_index(const SaliencyMap& map,
                              const TokenPredicate& restrict = nullptr);

struct TypeSaliencyCell {
  double sum = 0.0;
  std::int64_t occurrences = 0;
  std::int64_t documents = 0;

  double mean() const {
    return occurrences > 0 ? sum / static_cast<double>(occurrences) : 0.0;
  }
};

// Accumulates normalized scores per (word type, gold class). Means stay
// recomputable because the running sum is stored, never the mean itself.
class TypeSaliencyTable {
 public:
  explicit TypeSaliencyTable(int n_classes);

  void add_map(const SaliencyMap& map, int gold_class);
  const TypeSaliencyCell* find(const std::string& word, int gold_class) const;
  const std::map<std::string, std::vector<TypeSaliencyCell>>& cells() const {
    return cells_;
  }
  int n_classes() const { return n_classes_; }

 private:
  int n_classes_;
  std::map<std::string, std::vector<TypeSaliencyCell>> cells_;
};

TypeSaliencyTable build_hs_saliency_table(const HsModel& model,
                                          const std::vector<HsExample>& data);
// Both sides of every pair contribute; each side counts as one document for
// the per-type document tally.
TypeSaliencyTable build_sie_saliency_table(const SieModel& model,
                                           const std::vector<SieExample>& data);

struct PoolFilter {
  std::string name;
  TokenPredicate admit;
};

// Stopwords with negations removed.
PoolFilter stopword_non_negation_filter();
// Training frequency at most max_train_freq per the vocabulary's frequency
// table. The filter keeps a reference to `vocab`; it must outlive the filter.
PoolFilter rare_word_filter(const Vocab& vocab, std::int64_t max_train_freq);
PoolFilter question_stopword_filter();

struct PoolResult {
  std::vector<std::string> words;
  bool shortfall = false;  // fewer than k admissible types existed
};

// Top word types by mean saliency for one class, among types passing the
// filter with a per-class document count of at least 2. Ties break
// lexicographically.
PoolResult top_k_pool(const TypeSaliencyTable& table, int gold_class, int k,
                      const PoolFilter& filter);

void save_saliency_maps(const std::string& path,
                        const std::vector<SaliencyMap>& maps);
void save_pool(const std::string& path, const std::vector<std::string>& words);
std::vector<std::string> load_pool(const std::string& path);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_SALIENCY_H_
