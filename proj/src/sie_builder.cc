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

#include "tokenaudit/sie_builder.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "tokenaudit/rng.h"
#include "tokenaudit/stopwords.h"

namespace tokenaudit {
namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string provenance_kind_name(Provenance::Kind kind) {
  switch (kind) {
    case Provenance::Kind::kHumanStereotype: return "human-stereotype";
    case Provenance::Kind::kRandomAssignment: return "random-assignment";
    case Provenance::Kind::kLowSimilarityAssignment:
      return "low-similarity-assignment";
    case Provenance::Kind::kAntonymSubstitution:
      return "antonym-substitution";
  }
  throw std::invalid_argument("unknown provenance kind");
}

Provenance::Kind provenance_kind_from_name(const std::string& name) {
  if (name == "human-stereotype") return Provenance::Kind::kHumanStereotype;
  if (name == "random-assignment") return Provenance::Kind::kRandomAssignment;
  if (name == "low-similarity-assignment") {
    return Provenance::Kind::kLowSimilarityAssignment;
  }
  if (name == "antonym-substitution") {
    return Provenance::Kind::kAntonymSubstitution;
  }
  throw std::runtime_error("unknown provenance kind: " + name);
}

}  // namespace

std::string sie_label_name(SieLabel label) {
  switch (label) {
    case SieLabel::kEntail: return "entail";
    case SieLabel::kNeutral: return "neutral";
    case SieLabel::kContradict: return "contradict";
  }
  throw std::invalid_argument("unknown label");
}

SieLabel sie_label_from_int(int value) {
  if (value < 0 || value > 2) {
    throw std::runtime_error("label outside the three-class range: " +
                             std::to_string(value));
  }
  return static_cast<SieLabel>(value);
}

std::vector<StereotypeEntry> build_stereotype_bank(
    const std::vector<AnnotatedPost>& posts) {
  std::vector<StereotypeEntry> bank;
  std::set<std::string> seen;
  for (const auto& post : posts) {
    if (!post.hs_label || post.target_groups.empty()) continue;
    for (const auto& stereotype : post.stereotypes) {
      if (seen.insert(stereotype).second) {
        bank.push_back({stereotype, post.target_groups.front()});
      }
    }
  }
  return bank;
}

std::vector<SiePair> build_entailment(const std::vector<AnnotatedPost>& posts) {
  std::vector<SiePair> pairs;
  for (const auto& post : posts) {
    if (!post.hs_label) continue;
    for (const auto& stereotype : post.stereotypes) {
      SiePair pair;
      pair.premise = post.text;
      pair.hypothesis = stereotype;
      pair.label = SieLabel::kEntail;
      pair.provenance.kind = Provenance::Kind::kHumanStereotype;
      pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

std::vector<SiePair> build_neutral(const std::vector<AnnotatedPost>& posts,
                                   const std::vector<StereotypeEntry>& bank,
                                   const EmbeddingTable& emb,
                                   double sim_threshold, std::uint64_t seed,
                                   std::int64_t* n_skipped) {
  if (bank.empty()) throw std::invalid_argument("empty stereotype bank");
  Rng rng = make_rng(seed);
  std::vector<SiePair> pairs;
  std::int64_t skipped = 0;
  for (const auto& post : posts) {
    if (!post.hs_label) {
      const StereotypeEntry& entry = bank[uniform_index(rng, bank.size())];
      SiePair pair;
      pair.premise = post.text;
      pair.hypothesis = entry.text;
      pair.label = SieLabel::kNeutral;
      pair.provenance.kind = Provenance::Kind::kRandomAssignment;
      pair.provenance.source_group = entry.source_group;
      pairs.push_back(std::move(pair));
      continue;
    }
    if (post.target_groups.empty()) {
      ++skipped;
      continue;
    }
    // A candidate must sit below the threshold against every group the post
    // targets; the provenance keeps the worst similarity for auditing.
    struct Candidate {
      std::size_t bank_index;
      double max_similarity;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < bank.size(); ++i) {
      double max_sim = -1.0;
      bool qualifies = true;
      for (const auto& group : post.target_groups) {
        double sim = group_similarity(bank[i].source_group, group, emb);
        max_sim = std::max(max_sim, sim);
        if (sim >= sim_threshold) {
          qualifies = false;
          break;
        }
      }
      if (qualifies) candidates.push_back({i, max_sim});
    }
    if (candidates.empty()) {
      ++skipped;
      continue;
    }
    const Candidate& chosen = candidates[uniform_index(rng, candidates.size())];
    const StereotypeEntry& entry = bank[chosen.bank_index];
    SiePair pair;
    pair.premise = post.text;
    pair.hypothesis = entry.text;
    pair.label = SieLabel::kNeutral;
    pair.provenance.kind = Provenance::Kind::kLowSimilarityAssignment;
    pair.provenance.source_group = entry.source_group;
    pair.provenance.max_similarity = chosen.max_similarity;
    pairs.push_back(std::move(pair));
  }
  if (n_skipped != nullptr) *n_skipped = skipped;
  return pairs;
}

std::vector<AntonymCandidate> antonym_candidates(
    const std::vector<std::string>& tokens, const AntonymLexicon& lexicon) {
  std::vector<AntonymCandidate> candidates;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    if (is_stopword(tokens[pos])) continue;
    const std::vector<std::string>* antonyms = lexicon.find(tokens[pos]);
    if (antonyms == nullptr) continue;
    for (const auto& antonym : *antonyms) {
      candidates.push_back({pos, tokens[pos], antonym});
    }
  }
  return candidates;
}

std::vector<SiePair> build_contradiction(
    const std::vector<AnnotatedPost>& posts, const NgramLm& lm,
    const AntonymLexicon& lexicon, std::int64_t* n_skipped) {
  std::vector<SiePair> pairs;
  std::int64_t skipped = 0;
  for (const auto& post : posts) {
    if (!post.hs_label) continue;
    for (const auto& stereotype : post.stereotypes) {
      std::vector<std::string> tokens = tokenize(stereotype);
      std::vector<AntonymCandidate> candidates =
          antonym_candidates(tokens, lexicon);
      if (candidates.empty()) {
        ++skipped;
        continue;
      }
      // Candidates arrive ordered by (position, antonym), so keeping only a
      // strictly better score realizes the tie-break.
      bool have_best = false;
      double best_score = 0.0;
      std::vector<std::string> best_tokens;
      const AntonymCandidate* best_candidate = nullptr;
      for (const auto& candidate : candidates) {
        std::vector<std::string> substituted = tokens;
        substituted[candidate.position] = candidate.antonym;
        double score = lm.sentence_log_prob(substituted);
        if (!have_best || score > best_score) {
          have_best = true;
          best_score = score;
          best_tokens = std::move(substituted);
          best_candidate = &candidate;
        }
      }
      SiePair pair;
      pair.premise = post.text;
      pair.hypothesis = join_tokens(best_tokens);
      pair.label = SieLabel::kContradict;
      pair.provenance.kind = Provenance::Kind::kAntonymSubstitution;
      pair.provenance.original_word = best_candidate->original;
      pair.provenance.replacement_word = best_candidate->antonym;
      pair.provenance.position = static_cast<int>(best_candidate->position);
      pairs.push_back(std::move(pair));
    }
  }
  if (n_skipped != nullptr) *n_skipped = skipped;
  return pairs;
}

std::vector<SiePair> assemble_dataset(const std::vector<SiePair>& entail,
                                      const std::vector<SiePair>& neutral,
                                      const std::vector<SiePair>& contradict,
                                      std::uint64_t seed, double test_frac) {
  if (entail.empty()) throw std::runtime_error("entail class is empty");
  if (neutral.empty()) throw std::runtime_error("neutral class is empty");
  if (contradict.empty()) throw std::runtime_error("contradict class is empty");

  const std::size_t target = std::min(
      {entail.size(), neutral.size(), contradict.size()});
  Rng sample_rng = make_rng(derive_seed(seed, 1));
  auto take = [&](const std::vector<SiePair>& pairs) {
    std::vector<SiePair> kept;
    if (pairs.size() == target) {
      kept = pairs;
    } else {
      for (std::size_t i :
           sample_without_replacement(pairs.size(), target, sample_rng)) {
        kept.push_back(pairs[i]);
      }
    }
    return kept;
  };

  std::vector<SiePair> all;
  for (auto& p : take(entail)) all.push_back(std::move(p));
  for (auto& p : take(neutral)) all.push_back(std::move(p));
  for (auto& p : take(contradict)) all.push_back(std::move(p));

  Rng shuffle_rng = make_rng(derive_seed(seed, 2));
  shuffle_vector(all, shuffle_rng);

  std::vector<int> labels;
  labels.reserve(all.size());
  for (const auto& p : all) labels.push_back(static_cast<int>(p.label));
  std::vector<bool> in_test =
      stratified_split_flags(labels, test_frac, derive_seed(seed, 3));
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i].split = in_test[i] ? "test" : "train";
  }
  return all;
}

void save_sie_jsonl(const std::string& path,
                    const std::vector<SiePair>& pairs) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open dataset file for writing: " + path);
  for (const auto& pair : pairs) {
    nlohmann::ordered_json rec;
    rec["premise"] = pair.premise;
    rec["hypothesis"] = pair.hypothesis;
    rec["label"] = static_cast<int>(pair.label);
    rec["label_name"] = sie_label_name(pair.label);
    nlohmann::ordered_json prov;
    prov["kind"] = provenance_kind_name(pair.provenance.kind);
    switch (pair.provenance.kind) {
      case Provenance::Kind::kHumanStereotype:
        break;
      case Provenance::Kind::kRandomAssignment:
        prov["source_group"] = pair.provenance.source_group;
        break;
      case Provenance::Kind::kLowSimilarityAssignment:
        prov["source_group"] = pair.provenance.source_group;
        prov["max_similarity"] = pair.provenance.max_similarity;
        break;
      case Provenance::Kind::kAntonymSubstitution:
        prov["original"] = pair.provenance.original_word;
        prov["replacement"] = pair.provenance.replacement_word;
        prov["position"] = pair.provenance.position;
        break;
    }
    rec["provenance"] = prov;
    if (!pair.split.empty()) rec["split"] = pair.split;
    out << rec.dump() << "\n";
  }
  if (!out) throw std::runtime_error("failed writing dataset file: " + path);
}

std::vector<SiePair> load_sie_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  std::vector<SiePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      throw std::runtime_error("malformed dataset record at line " +
                               std::to_string(line_no) + " in " + path);
    }
    try {
      SiePair pair;
      pair.premise = rec.at("premise").get<std::string>();
      pair.hypothesis = rec.at("hypothesis").get<std::string>();
      pair.label = sie_label_from_int(rec.at("label").get<int>());
      const auto& prov = rec.at("provenance");
      pair.provenance.kind =
          provenance_kind_from_name(prov.at("kind").get<std::string>());
      switch (pair.provenance.kind) {
        case Provenance::Kind::kHumanStereotype:
          break;
        case Provenance::Kind::kRandomAssignment:
          pair.provenance.source_group =
              prov.at("source_group").get<std::string>();
          break;
        case Provenance::Kind::kLowSimilarityAssignment:
          pair.provenance.source_group =
              prov.at("source_group").get<std::string>();
          pair.provenance.max_similarity =
              prov.at("max_similarity").get<double>();
          break;
        case Provenance::Kind::kAntonymSubstitution:
          pair.provenance.original_word =
              prov.at("original").get<std::string>();
          pair.provenance.replacement_word =
              prov.at("replacement").get<std::string>();
          pair.provenance.position = prov.at("position").get<int>();
          break;
      }
      if (rec.contains("split")) {
        pair.split = rec.at("split").get<std::string>();
      }
      if (pair.premise.empty() || pair.hypothesis.empty()) {
        throw std::runtime_error("empty premise or hypothesis");
      }
      pairs.push_back(std::move(pair));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("malformed dataset record at line " +
                               std::to_string(line_no) + " in " + path + ": " +
                               e.what());
    }
  }
  return pairs;
}

}  // namespace tokenaudit
