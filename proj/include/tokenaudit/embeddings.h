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

#ifndef TOKENAUDIT_EMBEDDINGS_H_
#define TOKENAUDIT_EMBEDDINGS_H_

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace tokenaudit {

// Static word vectors loaded from a text file: one line per word, the token
// followed by its components. An optional leading header line gives the
// word count and dimension.
class EmbeddingTable {
 public:
  static EmbeddingTable load(const std::string& path);

  int dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const Eigen::VectorXd* find(const std::string& word) const;
  // Mean of the in-vocabulary word vectors; a phrase with none is an error.
  Eigen::VectorXd phrase_vector(const std::vector<std::string>& words) const;

 private:
  int dim_ = 0;
  std::map<std::string, Eigen::VectorXd> vectors_;
};

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Cosine between mean phrase vectors of two group names.
double group_similarity(const std::string& group_a, const std::string& group_b,
                        const EmbeddingTable& emb);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_EMBEDDINGS_H_
