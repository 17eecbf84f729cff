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

#ifndef TOKENAUDIT_SIE_BUILDER_H_
#define TOKENAUDIT_SIE_BUILDER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tokenaudit/antonyms.h"
#include "tokenaudit/corpus.h"
#include "tokenaudit/embeddings.h"
#include "tokenaudit/ngram_lm.h"

namespace tokenaudit {

enum class SieLabel { kEntail = 0, kNeutral = 1, kContradict = 2 };

std::string sie_label_name(SieLabel label);
SieLabel sie_label_from_int(int value);

struct Provenance {
  enum class Kind {
    kHumanStereotype,
    kRandomAssignment,
    kLowSimilarityAssignment,
    kAntonymSubstitution,
  };
  Kind kind = Kind::kHumanStereotype;
  // Stereotype-assignment provenance.
  std::string source_group;
  double max_similarity = 0.0;  // low-similarity assignments only
  // Antonym-substitution provenance.
  std::string original_word;
  std::string replacement_word;
  int position = -1;
};

struct SiePair {
  std::string premise;
  std::string hypothesis;
  SieLabel label = SieLabel::kEntail;
  Provenance provenance;
  std::string split;  // "train" or "test" once assembled, empty before
};

// A stereotype string with the target group of the first post it appeared
// on. Posts without a target group contribute no bank entries because their
// stereotypes cannot take part in similarity screening.
struct StereotypeEntry {
  std::string text;
  std::string source_group;
};

std::vector<StereotypeEntry> build_stereotype_bank(
    const std::vector<AnnotatedPost>& posts);

// One entail pair per (hostile post, distinct stereotype).
std::vector<SiePair> build_entailment(const std::vector<AnnotatedPost>& posts);

// Non-hostile posts draw a uniformly random stereotype; hostile posts draw
// among stereotypes whose source group stays below sim_threshold cosine
// similarity against every target group of the post. Hostile posts with no
// qualifying stereotype are skipped and counted.
std::vector<SiePair> build_neutral(const std::vector<AnnotatedPost>& posts,
                                   const std::vector<StereotypeEntry>& bank,
                                   const EmbeddingTable& emb,
                                   double sim_threshold, std::uint64_t seed,
                                   std::int64_t* n_skipped);

struct AntonymCandidate {
  std::size_t position = 0;
  std::string original;
  std::string antonym;
};

// Candidates enumerate positions ascending and antonyms in sorted order;
// stopword positions are excluded.
std::vector<AntonymCandidate> antonym_candidates(
    const std::vector<std::string>& tokens, const AntonymLexicon& lexicon);

// For each (hostile post, stereotype), substitutes the antonym whose
// sentence scores highest under the language model; ties go to the lowest
// position, then the lexicographically smallest antonym. Stereotypes with
// no candidate are skipped and counted.
std::vector<SiePair> build_contradiction(
    const std::vector<AnnotatedPost>& posts, const NgramLm& lm,
    const AntonymLexicon& lexicon, std::int64_t* n_skipped);

// Downsamples every class to the smallest class size, shuffles, and tags a
// stratified train/test split.
std::vector<SiePair> assemble_dataset(const std::vector<SiePair>& entail,
                                      const std::vector<SiePair>& neutral,
                                      const std::vector<SiePair>& contradict,
                                      std::uint64_t seed,
                                      double test_frac = 0.25);

void save_sie_jsonl(const std::string& path, const std::vector<SiePair>& pairs);
std::vector<SiePair> load_sie_jsonl(const std::string& path);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_SIE_BUILDER_H_
