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

#include "tokenaudit/saliency.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "tokenaudit/stopwords.h"

namespace tokenaudit {
namespace {

// Raw dot products -> non-negative scores summing to 1. Uniform fallback
// when every raw score is exactly zero.
std::vector<double> normalize_scores(const std::vector<double>& raw) {
  std::vector<double> scores(raw.size());
  double total = 0.0;
  for (double r : raw) total += std::abs(r);
  if (total == 0.0) {
    const double u = 1.0 / static_cast<double>(raw.size());
    std::fill(scores.begin(), scores.end(), u);
    return scores;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    scores[i] = std::abs(raw[i]) / total;
  }
  return scores;
}

std::vector<double> dot_rows(const Eigen::MatrixXd& inputs,
                             const Eigen::MatrixXd& grads) {
  std::vector<double> raw(static_cast<std::size_t>(inputs.rows()));
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
    raw[static_cast<std::size_t>(i)] = inputs.row(i).dot(grads.row(i));
  }
  return raw;
}

}  // namespace

SaliencyMap input_x_gradient_hs(const HsModel& model, const TokenizedDoc& doc) {
  HsCache cache = forward_hs(model, doc);
  int pred = predicted_class(cache.probs);
  Eigen::MatrixXd grads = input_gradients_hs(model, cache, pred);
  SaliencyMap map;
  map.tokens = doc.tokens;
  map.raw_scores = dot_rows(cache.inputs, grads);
  map.scores = normalize_scores(map.raw_scores);
  map.predicted_class = pred;
  map.side = SaliencySide::kSingle;
  return map;
}

std::pair<SaliencyMap, SaliencyMap> input_x_gradient_sie(
    const SieModel& model, const TokenizedDoc& premise,
    const TokenizedDoc& hypothesis) {
  SieCache cache = forward_sie(model, premise, hypothesis);
  int pred = predicted_class(cache.probs);
  auto [premise_grads, hypothesis_grads] =
      input_gradients_sie(model, cache, pred);

  SaliencyMap p;
  p.tokens = premise.tokens;
  p.raw_scores = dot_rows(cache.premise_inputs, premise_grads);
  p.scores = normalize_scores(p.raw_scores);
  p.predicted_class = pred;
  p.side = SaliencySide::kPremise;

  SaliencyMap h;
  h.tokens = hypothesis.tokens;
  h.raw_scores = dot_rows(cache.hypothesis_inputs, hypothesis_grads);
  h.scores = normalize_scores(h.raw_scores);
  h.predicted_class = pred;
  h.side = SaliencySide::kHypothesis;

  return {std::move(p), std::move(h)};
}

std::size_t max_salient_index(const SaliencyMap& map,
                              const TokenPredicate& restrict) {
  if (map.tokens.empty()) throw std::invalid_argument("empty saliency map");
  if (map.tokens.size() != map.scores.size()) {
    throw std::invalid_argument("saliency map token/score size mismatch");
  }
  bool found = false;
  std::size_t best = 0;
  for (std::size_t i = 0; i < map.tokens.size(); ++i) {
    if (restrict && !restrict(map.tokens[i])) continue;
    if (!found || map.scores[i] > map.scores[best]) {
      best = i;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("no admissible token");
  return best;
}

TypeSaliencyTable::TypeSaliencyTable(int n_classes) : n_classes_(n_classes) {
  if (n_classes < 2) {
    throw std::invalid_argument("saliency table needs at least two classes");
  }
}

void TypeSaliencyTable::add_map(const SaliencyMap& map, int gold_class) {
  if (gold_class < 0 || gold_class >= n_classes_) {
    throw std::out_of_range("gold class outside table range");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < map.tokens.size(); ++i) {
    auto [it, inserted] = cells_.try_emplace(
        map.tokens[i], std::vector<TypeSaliencyCell>(n_classes_));
    TypeSaliencyCell& cell = it->second[gold_class];
    cell.sum += map.scores[i];
    cell.occurrences += 1;
    if (seen.insert(map.tokens[i]).second) cell.documents += 1;
  }
}

const TypeSaliencyCell* TypeSaliencyTable::find(const std::string& word,
                                                int gold_class) const {
  if (gold_class < 0 || gold_class >= n_classes_) {
    throw std::out_of_range("gold class outside table range");
  }
  auto it = cells_.find(word);
  if (it == cells_.end()) return nullptr;
  const TypeSaliencyCell& cell = it->second[gold_class];
  if (cell.occurrences == 0) return nullptr;
  return &cell;
}

TypeSaliencyTable build_hs_saliency_table(const HsModel& model,
                                          const std::vector<HsExample>& data) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  TypeSaliencyTable table(2);
  for (const auto& ex : data) {
    table.add_map(input_x_gradient_hs(model, ex.doc), ex.label);
  }
  return table;
}

TypeSaliencyTable build_sie_saliency_table(
    const SieModel& model, const std::vector<SieExample>& data) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  TypeSaliencyTable table(3);
  for (const auto& ex : data) {
    auto [premise_map, hypothesis_map] =
        input_x_gradient_sie(model, ex.premise, ex.hypothesis);
    table.add_map(premise_map, ex.label);
    table.add_map(hypothesis_map, ex.label);
  }
  return table;
}

PoolFilter stopword_non_negation_filter() {
  return {"stopword-non-negation", [](const std::string& w) {
            return is_stopword(w) && !is_negation(w);
          }};
}

PoolFilter rare_word_filter(const Vocab& vocab, std::int64_t max_train_freq) {
  if (max_train_freq < 1) {
    throw std::invalid_argument("rarity threshold must be at least 1");
  }
  // Frequencies come from the vocabulary's full training tally, which covers
  // types below the vocabulary cutoff as well.
  return {"rare", [&vocab, max_train_freq](const std::string& w) {
            std::int64_t freq = vocab.frequency(w);
            return freq >= 1 && freq <= max_train_freq;
          }};
}

PoolFilter question_stopword_filter() {
  return {"question-stopword",
          [](const std::string& w) { return is_question_stopword(w); }};
}

PoolResult top_k_pool(const TypeSaliencyTable& table, int gold_class, int k,
                      const PoolFilter& filter) {
  if (k < 1) throw std::invalid_argument("pool size must be at least 1");
  if (gold_class < 0 || gold_class >= table.n_classes()) {
    throw std::out_of_range("gold class outside table range");
  }
  struct Entry {
    std::string word;
    double mean;
  };
  std::vector<Entry> entries;
  for (const auto& [word, cells] : table.cells()) {
    const TypeSaliencyCell& cell = cells[static_cast<std::size_t>(gold_class)];
    if (cell.occurrences == 0) continue;
    if (cell.documents < 2) continue;
    if (!filter.admit(word)) continue;
    entries.push_back({word, cell.mean()});
  }
  if (entries.empty()) {
    throw std::runtime_error("empty pool: no admissible word type for filter " +
                             filter.name);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.mean != b.mean) return a.mean > b.mean;
    return a.word < b.word;
  });
  PoolResult result;
  result.shortfall = static_cast<int>(entries.size()) < k;
  const std::size_t take = std::min<std::size_t>(entries.size(),
                                                 static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < take; ++i) result.words.push_back(entries[i].word);
  return result;
}

void save_saliency_maps(const std::string& path,
                        const std::vector<SaliencyMap>& maps) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open saliency dump for writing: " + path);
  for (const auto& map : maps) {
    nlohmann::ordered_json rec;
    rec["tokens"] = map.tokens;
    rec["scores"] = map.scores;
    rec["raw_scores"] = map.raw_scores;
    rec["predicted_class"] = map.predicted_class;
    switch (map.side) {
      case SaliencySide::kSingle: rec["side"] = "single"; break;
      case SaliencySide::kPremise: rec["side"] = "premise"; break;
      case SaliencySide::kHypothesis: rec["side"] = "hypothesis"; break;
    }
    out << rec.dump() << "\n";
  }
  if (!out) throw std::runtime_error("failed writing saliency dump: " + path);
}

void save_pool(const std::string& path, const std::vector<std::string>& words) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open pool file for writing: " + path);
  for (const auto& w : words) out << w << "\n";
  if (!out) throw std::runtime_error("failed writing pool file: " + path);
}

std::vector<std::string> load_pool(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pool file: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

}  // namespace tokenaudit
