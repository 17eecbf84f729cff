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

#include "tokenaudit/embeddings.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tokenaudit/corpus.h"

namespace tokenaudit {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> fields;
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = split_ws(line);
    if (fields.empty()) continue;
    if (first_content_line && fields.size() == 2 && is_integer(fields[0]) &&
        is_integer(fields[1])) {
      // Count-and-dimension header; the counts are advisory only.
      first_content_line = false;
      continue;
    }
    first_content_line = false;
    if (fields.size() < 2) {
      throw std::runtime_error("malformed embedding line " +
                               std::to_string(line_no) + " in " + path);
    }
    const int d = static_cast<int>(fields.size()) - 1;
    if (table.dim_ == 0) {
      table.dim_ = d;
    } else if (d != table.dim_) {
      throw std::runtime_error("inconsistent embedding dimension at line " +
                               std::to_string(line_no) + " in " + path);
    }
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) {
      try {
        std::size_t consumed = 0;
        v(i) = std::stod(fields[static_cast<std::size_t>(i) + 1], &consumed);
        if (consumed != fields[static_cast<std::size_t>(i) + 1].size()) {
          throw std::invalid_argument("trailing characters");
        }
      } catch (const std::exception&) {
        throw std::runtime_error("unparseable embedding value at line " +
                                 std::to_string(line_no) + " in " + path);
      }
    }
    if (!table.vectors_.emplace(fields[0], std::move(v)).second) {
      throw std::runtime_error("duplicate embedding for word '" + fields[0] +
                               "' in " + path);
    }
  }
  if (table.vectors_.empty()) {
    throw std::runtime_error("embedding file holds no vectors: " + path);
  }
  return table;
}

const Eigen::VectorXd* EmbeddingTable::find(const std::string& word) const {
  auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

Eigen::VectorXd EmbeddingTable::phrase_vector(
    const std::vector<std::string>& words) const {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim_);
  int hits = 0;
  for (const auto& w : words) {
    if (const Eigen::VectorXd* v = find(w)) {
      sum += *v;
      ++hits;
    }
  }
  if (hits == 0) {
    std::string phrase;
    for (const auto& w : words) {
      if (!phrase.empty()) phrase += ' ';
      phrase += w;
    }
    throw std::runtime_error("phrase has no in-vocabulary word: " + phrase);
  }
  return sum / static_cast<double>(hits);
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine over mismatched dimensions");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("cosine of a zero vector is undefined");
  }
  return a.dot(b) / (na * nb);
}

double group_similarity(const std::string& group_a, const std::string& group_b,
                        const EmbeddingTable& emb) {
  return cosine(emb.phrase_vector(tokenize(group_a)),
                emb.phrase_vector(tokenize(group_b)));
}

}  // namespace tokenaudit
