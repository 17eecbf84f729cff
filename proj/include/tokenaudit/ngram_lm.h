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

#ifndef TOKENAUDIT_NGRAM_LM_H_
#define TOKENAUDIT_NGRAM_LM_H_

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace tokenaudit {

// Add-k n-gram language model. The prediction vocabulary is the training
// word types plus an OOV symbol and the end marker; the start marker appears
// only in contexts. Conditional probabilities over that vocabulary sum
// to 1 for any context.
class NgramLm {
 public:
  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";
  static constexpr const char* kOov = "<oov>";

  NgramLm(int order, double add_k);

  void fit(const std::vector<std::vector<std::string>>& sentences);

  // P(word | last order-1 context tokens), add-k smoothed. Unknown tokens
  // map to the OOV symbol on both sides.
  double cond_prob(const std::vector<std::string>& context,
                   const std::string& word) const;

  // Sum of word log conditionals with start-marker padding; the end marker
  // contributes counts during fitting but no scoring term, so every prefix
  // of a sentence scores at least as high as the sentence.
  double sentence_log_prob(const std::vector<std::string>& tokens) const;

  int order() const { return order_; }
  double add_k() const { return add_k_; }
  bool fitted() const { return fitted_; }
  std::size_t vocab_size() const { return vocab_.size(); }
  const std::set<std::string>& vocab() const { return vocab_; }

 private:
  std::string map_token(const std::string& token) const;
  std::string context_key(const std::vector<std::string>& padded,
                          std::size_t end) const;

  int order_;
  double add_k_;
  bool fitted_ = false;
  std::set<std::string> vocab_;
  std::unordered_map<std::string, std::int64_t> context_counts_;
  std::unordered_map<std::string, std::int64_t> ngram_counts_;
};

}  // namespace tokenaudit

#endif  // TOKENAUDIT_NGRAM_LM_H_
