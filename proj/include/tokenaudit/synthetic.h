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

#ifndef TOKENAUDIT_SYNTHETIC_H_
#define TOKENAUDIT_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tokenaudit/corpus.h"

namespace tokenaudit {

// One fictional demographic with its attribute word and stereotype template.
// "{g}" and "{a}" expand to the group name and attribute.
struct GroupTemplate {
  std::string name;
  std::string attribute;
  std::string stereotype_template;
};

// Desk-scale stand-in corpus. Hostile posts carry a group name, the group's
// attribute word and (with probability p_spur) one planted spurious token;
// their rows carry the instantiated stereotype sentence. Benign rows have no
// stereotype. Question-word rates differ between the classes so that
// question-word prepending is a meaningful probe.
//
// The benign noise rates below leak every hostile surface signal except the
// planted tokens into benign posts (praise of a group, a marker used about a
// thing, an attribute word in an innocuous sense). A classifier fit on the
// corpus then leans on the planted tokens, which is the failure mode the
// insertion probes are built to expose.
struct SyntheticSpec {
  int n_posts = 2000;
  double hs_fraction = 0.4;
  double p_spur = 0.8;
  int benign_vocab = 80;  // benign filler word types used
  int marker_vocab = 24;  // hostile marker word types used
  std::vector<GroupTemplate> groups;
  std::vector<std::string> spurious_tokens;
  double hs_question_rate = 0.5;
  double benign_question_rate = 0.05;
  double offensive_only_rate = 0.1;  // benign posts labeled offensive=1, intent=0
  double benign_group_mention_rate = 0.45;   // "<group> are <praise>" in benign
  double benign_marker_rate = 0.4;          // marker word amid benign filler
  double benign_attribute_rate = 0.35;      // attribute word amid benign filler
  int min_tokens = 7;
  int max_tokens = 12;
};

// Eight fictional groups, six planted tokens, defaults above.
SyntheticSpec default_synthetic_spec();

std::vector<AnnotationRow> generate_synthetic_corpus(const SyntheticSpec& spec,
                                                     std::uint64_t seed);

// Companion resources matching the generator's built-in groups, written in
// the formats the pipeline consumes elsewhere.

// word<TAB>antonym lines covering the group attributes plus "always/never".
std::vector<std::pair<std::string, std::string>> synthetic_antonym_pairs(
    const SyntheticSpec& spec);

// Group-name vectors arranged on a circle so that some group pairs are
// similar and others are not; includes the attribute words.
struct SyntheticEmbedding {
  std::string word;
  std::vector<double> values;
};
std::vector<SyntheticEmbedding> synthetic_embeddings(const SyntheticSpec& spec);

void write_synthetic_aux_files(const SyntheticSpec& spec,
                               const std::string& antonym_path,
                               const std::string& embedding_path,
                               const std::string& spurious_pool_path);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_SYNTHETIC_H_
