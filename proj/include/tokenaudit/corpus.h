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

#ifndef TOKENAUDIT_CORPUS_H_
#define TOKENAUDIT_CORPUS_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tokenaudit {

// One annotator judgment for one post. Empty strings stand for absent
// optional fields. Label values are validated at load time, not by the
// struct itself, so that aggregation outputs can be re-expanded as rows.
struct AnnotationRow {
  std::string post_text;
  double offensive = 0.0;         // {0, 0.5, 1}
  double intent_to_offend = 0.0;  // {0, 0.5, 1}
  std::string target_group;
  std::string stereotype;  // full declarative sentence
};

// A post with annotator judgments collapsed. hs_label = 1 iff the post was
// judged both offensive and intending to offend a group (mean >= 0.5 on both).
struct AnnotatedPost {
  std::string text;
  double offensive_frac = 0.0;
  double intent_frac = 0.0;
  std::vector<std::string> target_groups;  // non-empty strings, deduplicated
  std::vector<std::string> stereotypes;    // deduplicated, first-seen order
  int hs_label = 0;
};

inline int hs_label_from(double offensive_frac, double intent_frac) {
  return (offensive_frac >= 0.5 && intent_frac >= 0.5) ? 1 : 0;
}

enum class CorpusFormat { kCsv, kJsonl };

// Logical field -> input column/key names.
struct ColumnMap {
  std::string post_text = "post_text";
  std::string offensive = "offensive";
  std::string intent_to_offend = "intent_to_offend";
  std::string target_group = "target_group";
  std::string stereotype = "stereotype";
};

struct LoadReport {
  std::size_t n_parsed = 0;
  std::size_t n_rejected = 0;
  std::vector<std::string> messages;  // one per rejected record
};

// Reads annotation rows from a CSV (header row) or JSONL file. File-level
// problems (missing file, missing declared column) throw; record-level
// problems reject the record and are counted in the report.
std::vector<AnnotationRow> load_rows(const std::string& path,
                                     CorpusFormat format,
                                     const ColumnMap& columns,
                                     LoadReport* report);

inline std::vector<AnnotationRow> load_rows(const std::string& path,
                                            CorpusFormat format,
                                            LoadReport* report) {
  return load_rows(path, format, ColumnMap{}, report);
}

// Writes rows in the same schema load_rows reads, so generated corpora are
// interchangeable with ingested ones.
void save_rows(const std::string& path, const std::vector<AnnotationRow>& rows,
               CorpusFormat format, const ColumnMap& columns = ColumnMap{});

// Groups rows by exact post text (first-appearance order), averages the two
// label fields, unions target groups and stereotypes.
std::vector<AnnotatedPost> aggregate(const std::vector<AnnotationRow>& rows);

// Lowercases, splits on whitespace, maps URLs and @-mentions to "<url>" /
// "<user>", removes apostrophes, strips leading/trailing punctuation and
// drops tokens that end up empty. Throws "empty document" when nothing
// survives.
std::vector<std::string> tokenize(const std::string& text);

class Vocab;

struct TokenizedDoc {
  std::vector<std::string> tokens;
  std::vector<int> ids;
  std::string source;  // originating text
};

// Tokenizes `text` and looks tokens up in `vocab`.
TokenizedDoc make_doc(const std::string& text, const Vocab& vocab);

// Builds a doc from an already-tokenized list (e.g. a perturbed copy).
TokenizedDoc doc_from_tokens(std::vector<std::string> tokens,
                             const Vocab& vocab, std::string source);

// Token -> index mapping with reserved OOV index 0. Indices 1..V-1 are
// assigned in descending training frequency (ties lexicographic). The
// frequency table covers every training token, including ones below the
// min_freq cutoff.
class Vocab {
 public:
  static constexpr int kOovIndex = 0;
  static constexpr const char* kOovToken = "<oov>";

  int lookup(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? kOovIndex : it->second;
  }
  const std::string& token(int index) const { return tokens_.at(index); }
  int size() const { return static_cast<int>(tokens_.size()); }
  std::int64_t frequency(const std::string& token) const {
    auto it = freq_.find(token);
    return it == freq_.end() ? 0 : it->second;
  }
  // FNV-1a over the index->token list; used to bind checkpoints to a vocab.
  std::uint64_t hash() const;

  friend Vocab build_vocab(const std::vector<std::vector<std::string>>& docs,
                           int min_freq);

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int64_t> freq_;
};

Vocab build_vocab(const std::vector<std::vector<std::string>>& train_docs,
                  int min_freq);

// Deterministic stratified partition: per class, round(n_class * test_frac)
// members go to test. Returns a flag per input index. Throws when test_frac
// is outside (0,1) or any class has fewer than 2 members.
std::vector<bool> stratified_split_flags(const std::vector<int>& labels,
                                         double test_frac, std::uint64_t seed);

std::pair<std::vector<AnnotatedPost>, std::vector<AnnotatedPost>> split(
    const std::vector<AnnotatedPost>& posts, double test_frac,
    std::uint64_t seed);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_CORPUS_H_
