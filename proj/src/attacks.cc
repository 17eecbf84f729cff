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

#include "tokenaudit/attacks.h"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "tokenaudit/stopwords.h"

namespace tokenaudit {

std::string attack_kind_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::kLoo: return "LOO";
    case AttackKind::kLooS: return "LOO-S";
    case AttackKind::kAaS: return "AA-S";
    case AttackKind::kAaR: return "AA-R";
    case AttackKind::kAaQ: return "AA-Q";
  }
  throw std::invalid_argument("unknown attack kind");
}

AttackSpec make_loo_spec() {
  AttackSpec spec;
  spec.kind = AttackKind::kLoo;
  return spec;
}

AttackSpec make_loo_s_spec() {
  AttackSpec spec;
  spec.kind = AttackKind::kLooS;
  return spec;
}

AttackSpec make_insertion_spec(AttackKind kind,
                               std::vector<std::vector<std::string>> pools) {
  if (kind != AttackKind::kAaS && kind != AttackKind::kAaR) {
    throw std::invalid_argument(
        "insertion spec factory covers AA-S and AA-R only");
  }
  AttackSpec spec;
  spec.kind = kind;
  spec.position_policy = PositionPolicy::kAfterMaxSaliency;
  spec.pools = std::move(pools);
  return spec;
}

AttackSpec make_aa_q_spec(int n_classes) {
  if (n_classes < 2) throw std::invalid_argument("need at least two classes");
  AttackSpec spec;
  spec.kind = AttackKind::kAaQ;
  spec.position_policy = PositionPolicy::kPrepend;
  spec.pools.assign(static_cast<std::size_t>(n_classes), question_stopwords());
  return spec;
}

void validate_attack_spec(const AttackSpec& spec, int n_classes) {
  const bool removal =
      spec.kind == AttackKind::kLoo || spec.kind == AttackKind::kLooS;
  if (removal) {
    if (!spec.pools.empty()) {
      throw std::invalid_argument("removal attacks take no pool");
    }
    return;
  }
  if (spec.pools.size() != static_cast<std::size_t>(n_classes)) {
    throw std::invalid_argument("insertion attack needs one pool per class");
  }
  for (const auto& pool : spec.pools) {
    if (pool.empty()) {
      throw std::invalid_argument("insertion attack pools must be non-empty");
    }
  }
  if (spec.kind == AttackKind::kAaQ) {
    if (spec.position_policy != PositionPolicy::kPrepend) {
      throw std::invalid_argument("question attack must prepend");
    }
    for (const auto& pool : spec.pools) {
      for (const auto& w : pool) {
        if (!is_question_stopword(w)) {
          throw std::invalid_argument(
              "question attack pool admits only what, whats, how, why");
        }
      }
    }
  }
}

TokenizedDoc remove_token(const TokenizedDoc& doc, std::size_t index) {
  if (doc.tokens.size() < 2) {
    throw std::invalid_argument("removal would empty the document");
  }
  if (index >= doc.tokens.size()) {
    throw std::out_of_range("token index outside document");
  }
  TokenizedDoc out = doc;
  out.tokens.erase(out.tokens.begin() + static_cast<std::ptrdiff_t>(index));
  out.ids.erase(out.ids.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

TokenizedDoc insert_token(const TokenizedDoc& doc, std::size_t position,
                          const std::string& word, const Vocab& vocab) {
  if (position > doc.tokens.size()) {
    throw std::out_of_range("insert position outside document");
  }
  TokenizedDoc out = doc;
  out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(position),
                    word);
  out.ids.insert(out.ids.begin() + static_cast<std::ptrdiff_t>(position),
                 vocab.lookup(word));
  return out;
}

std::optional<TokenizedDoc> apply_loo(const SaliencyMap& map,
                                      const TokenizedDoc& doc) {
  if (doc.tokens.size() < 2) return std::nullopt;
  return remove_token(doc, max_salient_index(map));
}

TokenizedDoc apply_insertion(const TokenizedDoc& doc, const std::string& word,
                             const SaliencyMap& map, PositionPolicy policy,
                             const Vocab& vocab) {
  std::size_t position = 0;
  if (policy == PositionPolicy::kAfterMaxSaliency) {
    position = max_salient_index(map) + 1;
  }
  return insert_token(doc, position, word, vocab);
}

namespace {

struct Tally {
  std::int64_t clean_correct = 0;
  std::int64_t n_admissible = 0;
  std::int64_t n_skipped = 0;
  std::int64_t copies = 0;
  std::int64_t copies_correct = 0;
};

AttackOutcome finish(AttackKind kind, const Tally& t) {
  if (t.n_admissible == 0) {
    throw std::runtime_error("empty admissible set for attack " +
                             attack_kind_name(kind));
  }
  AttackOutcome out;
  out.kind = kind;
  out.n_examples = t.n_admissible;
  out.n_skipped = t.n_skipped;
  out.clean_accuracy =
      static_cast<double>(t.clean_correct) / static_cast<double>(t.n_admissible);
  out.attacked_accuracy =
      static_cast<double>(t.copies_correct) / static_cast<double>(t.copies);
  out.degradation_points =
      100.0 * (out.clean_accuracy - out.attacked_accuracy);
  return out;
}

}  // namespace

AttackOutcome run_attack_hs(const HsModel& model, const Vocab& vocab,
                            const std::vector<HsExample>& test,
                            const AttackSpec& spec) {
  validate_attack_spec(spec, 2);
  if (test.empty()) throw std::invalid_argument("empty test set");
  const bool removal =
      spec.kind == AttackKind::kLoo || spec.kind == AttackKind::kLooS;
  Tally t;
  for (const auto& ex : test) {
    SaliencyMap map = input_x_gradient_hs(model, ex.doc);
    if (removal) {
      std::optional<TokenizedDoc> perturbed = apply_loo(map, ex.doc);
      if (!perturbed.has_value()) {
        ++t.n_skipped;
        continue;
      }
      if (spec.kind == AttackKind::kLooS &&
          !is_stopword(map.tokens[max_salient_index(map)])) {
        ++t.n_skipped;
        continue;
      }
      ++t.n_admissible;
      if (map.predicted_class == ex.label) ++t.clean_correct;
      ++t.copies;
      if (predict_hs(model, *perturbed) == ex.label) ++t.copies_correct;
    } else {
      ++t.n_admissible;
      if (map.predicted_class == ex.label) ++t.clean_correct;
      for (const auto& word : spec.pools[static_cast<std::size_t>(ex.label)]) {
        TokenizedDoc perturbed =
            apply_insertion(ex.doc, word, map, spec.position_policy, vocab);
        ++t.copies;
        if (predict_hs(model, perturbed) == ex.label) ++t.copies_correct;
      }
    }
  }
  return finish(spec.kind, t);
}

AttackOutcome run_attack_sie(const SieModel& model, const Vocab& vocab,
                             const std::vector<SieExample>& test,
                             const AttackSpec& spec) {
  validate_attack_spec(spec, 3);
  if (test.empty()) throw std::invalid_argument("empty test set");
  const bool removal =
      spec.kind == AttackKind::kLoo || spec.kind == AttackKind::kLooS;
  Tally t;
  for (const auto& ex : test) {
    auto [premise_map, hypothesis_map] =
        input_x_gradient_sie(model, ex.premise, ex.hypothesis);
    (void)hypothesis_map;
    if (removal) {
      std::optional<TokenizedDoc> perturbed =
          apply_loo(premise_map, ex.premise);
      if (!perturbed.has_value()) {
        ++t.n_skipped;
        continue;
      }
      if (spec.kind == AttackKind::kLooS &&
          !is_stopword(premise_map.tokens[max_salient_index(premise_map)])) {
        ++t.n_skipped;
        continue;
      }
      ++t.n_admissible;
      if (premise_map.predicted_class == ex.label) ++t.clean_correct;
      ++t.copies;
      if (predict_sie(model, *perturbed, ex.hypothesis) == ex.label) {
        ++t.copies_correct;
      }
    } else {
      ++t.n_admissible;
      if (premise_map.predicted_class == ex.label) ++t.clean_correct;
      for (const auto& word : spec.pools[static_cast<std::size_t>(ex.label)]) {
        TokenizedDoc perturbed = apply_insertion(
            ex.premise, word, premise_map, spec.position_policy, vocab);
        ++t.copies;
        if (predict_sie(model, perturbed, ex.hypothesis) == ex.label) {
          ++t.copies_correct;
        }
      }
    }
  }
  return finish(spec.kind, t);
}

namespace {

// Builds the per-gold-class pool vector for one filter by reading the
// opposite class's table slice.
template <std::size_t N>
std::vector<std::vector<std::string>> opposed_pools(
    const TypeSaliencyTable& table, const std::array<int, N>& opposite, int k,
    const PoolFilter& filter, const std::string& task,
    std::vector<std::string>* notes) {
  std::vector<std::vector<std::string>> pools(N);
  for (std::size_t c = 0; c < N; ++c) {
    PoolResult r = top_k_pool(table, opposite[c], k, filter);
    if (r.shortfall && notes != nullptr) {
      notes->push_back(task + " " + filter.name + " pool for class " +
                       std::to_string(opposite[c]) + " has only " +
                       std::to_string(r.words.size()) + " words");
    }
    pools[c] = std::move(r.words);
  }
  return pools;
}

}  // namespace

namespace {

bool wants(const SuiteOptions& options, AttackKind kind) {
  return std::find(options.kinds.begin(), options.kinds.end(), kind) !=
         options.kinds.end();
}

}  // namespace

std::vector<AttackOutcome> run_hs_attacks(const HsModel& model,
                                          const Vocab& vocab,
                                          const std::vector<HsExample>& train,
                                          const std::vector<HsExample>& test,
                                          const SuiteOptions& options,
                                          std::vector<std::string>* notes) {
  if (options.pool_size < 1) {
    throw std::invalid_argument("pool size must be at least 1");
  }
  // Pools come from the train-split saliency table; the test split is only
  // ever evaluated, never aggregated.
  std::optional<TypeSaliencyTable> table;
  const bool needs_table =
      wants(options, AttackKind::kAaS) ||
      (wants(options, AttackKind::kAaR) &&
       options.hs_rare_pool_override.empty());
  if (needs_table) table = build_hs_saliency_table(model, train);

  std::vector<AttackOutcome> outcomes;
  for (AttackKind kind : kAttackOrder) {
    if (!wants(options, kind)) continue;
    AttackSpec spec;
    switch (kind) {
      case AttackKind::kLoo: spec = make_loo_spec(); break;
      case AttackKind::kLooS: spec = make_loo_s_spec(); break;
      case AttackKind::kAaS:
        spec = make_insertion_spec(
            kind, opposed_pools(*table, options.hs_opposite,
                                options.pool_size,
                                stopword_non_negation_filter(), "HS", notes));
        break;
      case AttackKind::kAaR:
        if (!options.hs_rare_pool_override.empty()) {
          spec = make_insertion_spec(
              kind, std::vector<std::vector<std::string>>(
                        2, options.hs_rare_pool_override));
        } else {
          spec = make_insertion_spec(
              kind,
              opposed_pools(*table, options.hs_opposite, options.pool_size,
                            rare_word_filter(vocab, options.rarity_threshold),
                            "HS", notes));
        }
        break;
      case AttackKind::kAaQ: spec = make_aa_q_spec(2); break;
    }
    outcomes.push_back(run_attack_hs(model, vocab, test, spec));
  }
  return outcomes;
}

std::vector<AttackOutcome> run_sie_attacks(
    const SieModel& model, const Vocab& vocab,
    const std::vector<SieExample>& train, const std::vector<SieExample>& test,
    const SuiteOptions& options, std::vector<std::string>* notes) {
  if (options.pool_size < 1) {
    throw std::invalid_argument("pool size must be at least 1");
  }
  std::optional<TypeSaliencyTable> table;
  const bool needs_table =
      wants(options, AttackKind::kAaS) ||
      (wants(options, AttackKind::kAaR) &&
       options.sie_rare_pool_override.empty());
  if (needs_table) table = build_sie_saliency_table(model, train);

  std::vector<AttackOutcome> outcomes;
  for (AttackKind kind : kAttackOrder) {
    if (!wants(options, kind)) continue;
    AttackSpec spec;
    switch (kind) {
      case AttackKind::kLoo: spec = make_loo_spec(); break;
      case AttackKind::kLooS: spec = make_loo_s_spec(); break;
      case AttackKind::kAaS:
        spec = make_insertion_spec(
            kind, opposed_pools(*table, options.sie_opposite,
                                options.pool_size,
                                stopword_non_negation_filter(), "SIE", notes));
        break;
      case AttackKind::kAaR:
        if (!options.sie_rare_pool_override.empty()) {
          spec = make_insertion_spec(
              kind, std::vector<std::vector<std::string>>(
                        3, options.sie_rare_pool_override));
        } else {
          spec = make_insertion_spec(
              kind,
              opposed_pools(*table, options.sie_opposite, options.pool_size,
                            rare_word_filter(vocab, options.rarity_threshold),
                            "SIE", notes));
        }
        break;
      case AttackKind::kAaQ: spec = make_aa_q_spec(3); break;
    }
    outcomes.push_back(run_attack_sie(model, vocab, test, spec));
  }
  return outcomes;
}

AblationReport run_suite(const HsModel& hs_model, const Vocab& hs_vocab,
                         const std::vector<HsExample>& hs_train,
                         const std::vector<HsExample>& hs_test,
                         const SieModel& sie_model, const Vocab& sie_vocab,
                         const std::vector<SieExample>& sie_train,
                         const std::vector<SieExample>& sie_test,
                         const SuiteOptions& options) {
  AblationReport report;
  report.hs_clean_accuracy = evaluate_hs(hs_model, hs_test).accuracy;
  report.sie_clean_accuracy = evaluate_sie(sie_model, sie_test).accuracy;
  report.hs = run_hs_attacks(hs_model, hs_vocab, hs_train, hs_test, options,
                             &report.notes);
  report.sie = run_sie_attacks(sie_model, sie_vocab, sie_train, sie_test,
                               options, &report.notes);
  return report;
}

std::string format_report_csv(const AblationReport& report) {
  std::ostringstream out;
  out << "task,attack,clean_accuracy,attacked_accuracy,degradation_points,"
         "n_examples,n_skipped\n";
  out << std::fixed << std::setprecision(6);
  auto emit = [&out](const std::string& task, const AttackOutcome& o) {
    out << task << ',' << attack_kind_name(o.kind) << ',' << o.clean_accuracy
        << ',' << o.attacked_accuracy << ',' << o.degradation_points << ','
        << o.n_examples << ',' << o.n_skipped << "\n";
  };
  for (const auto& o : report.hs) emit("HS", o);
  for (const auto& o : report.sie) emit("SIE", o);
  return out.str();
}

std::string format_report_text(const AblationReport& report) {
  const std::vector<AttackOutcome>& header_row =
      report.hs.empty() ? report.sie : report.hs;
  std::ostringstream out;
  out << std::fixed << std::setprecision(1);
  out << "accuracy degradation in points; higher means more damage\n";
  out << std::left << std::setw(6) << "task";
  for (const auto& o : header_row) {
    out << std::right << std::setw(8) << attack_kind_name(o.kind);
  }
  out << std::right << std::setw(10) << "clean" << "\n";
  auto emit = [&out](const std::string& task,
                     const std::vector<AttackOutcome>& row, double clean) {
    if (row.empty()) return;
    out << std::left << std::setw(6) << task;
    for (const auto& o : row) {
      out << std::right << std::setw(8) << o.degradation_points;
    }
    out << std::right << std::setw(9) << 100.0 * clean << "%\n";
  };
  emit("HS", report.hs, report.hs_clean_accuracy);
  emit("SIE", report.sie, report.sie_clean_accuracy);
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  return out.str();
}

}  // namespace tokenaudit
