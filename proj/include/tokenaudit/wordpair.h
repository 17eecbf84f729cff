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

#ifndef TOKENAUDIT_WORDPAIR_H_
#define TOKENAUDIT_WORDPAIR_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tokenaudit/classifier.h"
#include "tokenaudit/saliency.h"

namespace tokenaudit {

using PairKey = std::pair<std::string, std::string>;  // premise, hypothesis

struct PairObservation {
  double premise_saliency = 0.0;
  double hypothesis_saliency = 0.0;
  int gold_class = 0;
  std::size_t example_id = 0;
};

// One observation per example per co-occurring word pair; repeated
// occurrences inside an example collapse to the max saliency per side.
using PairObservations = std::map<PairKey, std::vector<PairObservation>>;

PairObservations collect_observations(const SieModel& model,
                                      const std::vector<SieExample>& train);

// Sample Pearson correlation; nullopt when either input has zero variance.
std::optional<double> pearson(const std::vector<double>& xs,
                              const std::vector<double>& ys);

struct WordPairStat {
  std::string premise_word;
  std::string hypothesis_word;
  double r = 0.0;
  std::int64_t support = 0;
  std::array<std::int64_t, 3> class_histogram = {0, 0, 0};
  std::optional<int> unique_class;
};

struct MineResult {
  std::vector<WordPairStat> stats;
  std::int64_t n_zero_variance = 0;  // support-qualified pairs dropped
};

// Pairs with support strictly greater than min_support and |r| at least
// min_r, ranked by |r| descending, then support descending, then
// lexicographically.
MineResult mine(const PairObservations& observations, std::int64_t min_support,
                double min_r);

std::vector<WordPairStat> class_unique(const std::vector<WordPairStat>& stats);

std::string format_pairs_csv(const std::vector<WordPairStat>& stats);
std::string format_pairs_summary(const MineResult& result, int top_n);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_WORDPAIR_H_
