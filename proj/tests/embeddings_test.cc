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

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "gtest/gtest.h"

namespace tokenaudit {
namespace {

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("tokenaudit_emb_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  std::filesystem::path dir_;
};

std::string write_table(TempDir& tmp, const std::string& content) {
  const std::string path = tmp.path("vectors.txt");
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

TEST(EmbeddingTable, LoadsWithAndWithoutHeader) {
  TempDir tmp;
  EmbeddingTable with_header =
      EmbeddingTable::load(write_table(tmp, "2 3\ncat 1 0 0\ndog 0 1 0\n"));
  EXPECT_EQ(with_header.size(), 2u);
  EXPECT_EQ(with_header.dim(), 3);

  EmbeddingTable bare =
      EmbeddingTable::load(write_table(tmp, "cat 1 0 0\ndog 0 1 0\n"));
  EXPECT_EQ(bare.size(), 2u);
  ASSERT_NE(bare.find("cat"), nullptr);
  EXPECT_EQ((*bare.find("cat"))(0), 1.0);
  EXPECT_EQ(bare.find("missing"), nullptr);
}

TEST(EmbeddingTable, RejectsInconsistentDimsAndDuplicates) {
  TempDir tmp;
  EXPECT_THROW(EmbeddingTable::load(write_table(tmp, "cat 1 0\ndog 1\n")),
               std::runtime_error);
  EXPECT_THROW(EmbeddingTable::load(write_table(tmp, "cat 1 0\ncat 0 1\n")),
               std::runtime_error);
  EXPECT_THROW(EmbeddingTable::load(write_table(tmp, "")), std::runtime_error);
  EXPECT_THROW(EmbeddingTable::load("/nonexistent/vectors.txt"),
               std::runtime_error);
}

TEST(Cosine, HandValues) {
  Eigen::VectorXd a(2), b(2), c(2);
  a << 1, 0;
  b << 0, 1;
  c << 1, 1;
  EXPECT_NEAR(cosine(a, a), 1.0, 1e-12);
  EXPECT_NEAR(cosine(a, b), 0.0, 1e-12);
  EXPECT_NEAR(cosine(c, a), 0.70711, 1e-5);
}

TEST(Cosine, RejectsZeroVectorAndDimMismatch) {
  Eigen::VectorXd a(2), z(2), w(3);
  a << 1, 0;
  z << 0, 0;
  w << 1, 1, 1;
  EXPECT_THROW(cosine(a, z), std::invalid_argument);
  EXPECT_THROW(cosine(a, w), std::invalid_argument);
}

TEST(PhraseVector, MeansInVocabularyWordsOnly) {
  TempDir tmp;
  EmbeddingTable table =
      EmbeddingTable::load(write_table(tmp, "cat 1 0\ndog 0 1\n"));
  Eigen::VectorXd mixed = table.phrase_vector({"cat", "dog", "unseen"});
  EXPECT_NEAR(mixed(0), 0.5, 1e-12);
  EXPECT_NEAR(mixed(1), 0.5, 1e-12);
  try {
    table.phrase_vector({"unseen", "also-unseen"});
    FAIL() << "expected no-in-vocabulary-word error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("phrase has no in-vocabulary word"),
              std::string::npos);
  }
}

TEST(GroupSimilarity, IdenticalPhrasesAreOne) {
  TempDir tmp;
  EmbeddingTable table =
      EmbeddingTable::load(write_table(tmp, "cat 1 0\ndog 0 1\n"));
  EXPECT_NEAR(group_similarity("cat", "cat", table), 1.0, 1e-12);
  EXPECT_NEAR(group_similarity("cat", "dog", table), 0.0, 1e-12);
}

}  // namespace
}  // namespace tokenaudit
