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

#include "tokenaudit/ngram_lm.h"

#include <cmath>
#include <stdexcept>

namespace tokenaudit {
namespace {

// Tokens never contain whitespace or control bytes, so the unit separator
// is collision-free as a key joiner.
constexpr char kJoin = '\x1f';

}  // namespace

NgramLm::NgramLm(int order, double add_k) : order_(order), add_k_(add_k) {
  if (order < 1) throw std::invalid_argument("model order must be at least 1");
  if (add_k <= 0.0) {
    throw std::invalid_argument("smoothing constant must be positive");
  }
}

std::string NgramLm::map_token(const std::string& token) const {
  if (token == kBos || token == kEos) return token;
  return vocab_.count(token) > 0 ? token : kOov;
}

std::string NgramLm::context_key(const std::vector<std::string>& padded,
                                 std::size_t end) const {
  // Context is padded[end - (order-1) .. end - 1].
  std::string key;
  for (std::size_t i = end - static_cast<std::size_t>(order_ - 1); i < end;
       ++i) {
    if (!key.empty()) key += kJoin;
    key += padded[i];
  }
  return key;
}

void NgramLm::fit(const std::vector<std::vector<std::string>>& sentences) {
  vocab_.clear();
  context_counts_.clear();
  ngram_counts_.clear();
  for (const auto& sentence : sentences) {
    for (const auto& token : sentence) {
      if (token.empty()) {
        throw std::invalid_argument("empty token in training sentence");
      }
      if (token == kBos || token == kEos || token == kOov) {
        throw std::invalid_argument("reserved marker in training sentence");
      }
      vocab_.insert(token);
    }
  }
  vocab_.insert(kOov);
  vocab_.insert(kEos);

  const std::size_t pad = static_cast<std::size_t>(order_ - 1);
  for (const auto& sentence : sentences) {
    if (sentence.empty()) continue;
    std::vector<std::string> padded;
    padded.reserve(pad + sentence.size() + 1);
    padded.insert(padded.end(), pad, kBos);
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.push_back(kEos);
    for (std::size_t i = pad; i < padded.size(); ++i) {
      std::string ctx = context_key(padded, i);
      context_counts_[ctx] += 1;
      ngram_counts_[ctx + kJoin + padded[i]] += 1;
    }
  }
  fitted_ = true;
}

double NgramLm::cond_prob(const std::vector<std::string>& context,
                          const std::string& word) const {
  if (!fitted_) throw std::runtime_error("language model not fitted");
  std::vector<std::string> padded;
  const std::size_t pad = static_cast<std::size_t>(order_ - 1);
  if (context.size() < pad) {
    padded.insert(padded.end(), pad - context.size(), kBos);
  }
  for (std::size_t i = context.size() > pad ? context.size() - pad : 0;
       i < context.size(); ++i) {
    padded.push_back(map_token(context[i]));
  }
  std::string ctx = context_key(padded, padded.size());
  std::string w = map_token(word);

  auto ctx_it = context_counts_.find(ctx);
  const double ctx_count =
      ctx_it == context_counts_.end() ? 0.0 : static_cast<double>(ctx_it->second);
  auto ngram_it = ngram_counts_.find(ctx + kJoin + w);
  const double ngram_count =
      ngram_it == ngram_counts_.end() ? 0.0
                                      : static_cast<double>(ngram_it->second);
  const double v = static_cast<double>(vocab_.size());
  return (ngram_count + add_k_) / (ctx_count + add_k_ * v);
}

double NgramLm::sentence_log_prob(
    const std::vector<std::string>& tokens) const {
  if (!fitted_) throw std::runtime_error("language model not fitted");
  if (tokens.empty()) {
    throw std::invalid_argument("cannot score an empty sentence");
  }
  const std::size_t pad = static_cast<std::size_t>(order_ - 1);
  std::vector<std::string> padded;
  padded.reserve(pad + tokens.size());
  padded.insert(padded.end(), pad, kBos);
  for (const auto& t : tokens) padded.push_back(map_token(t));

  double log_prob = 0.0;
  for (std::size_t i = pad; i < padded.size(); ++i) {
    std::string ctx = context_key(padded, i);
    auto ctx_it = context_counts_.find(ctx);
    const double ctx_count = ctx_it == context_counts_.end()
                                 ? 0.0
                                 : static_cast<double>(ctx_it->second);
    auto ngram_it = ngram_counts_.find(ctx + kJoin + padded[i]);
    const double ngram_count = ngram_it == ngram_counts_.end()
                                   ? 0.0
                                   : static_cast<double>(ngram_it->second);
    const double v = static_cast<double>(vocab_.size());
    log_prob += std::log((ngram_count + add_k_) / (ctx_count + add_k_ * v));
  }
  return log_prob;
}

}  // namespace tokenaudit
