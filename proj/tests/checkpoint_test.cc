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

#include "tokenaudit/checkpoint.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "tokenaudit/classifier.h"

namespace tokenaudit {
namespace {

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("tokenaudit_ckpt_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  std::filesystem::path dir_;
};

TEST(Checkpoint, HsRoundTripBitExact) {
  TempDir tmp;
  HsModel model = HsModel::init(9, 4, 5, 123, 0.2);
  const std::string path = tmp.path("hs.bin");
  save_hs_checkpoint(path, model, 777);
  HsModel loaded = load_hs_checkpoint(path, 777);
  EXPECT_TRUE(model.embeddings == loaded.embeddings);
  EXPECT_TRUE(model.w1 == loaded.w1);
  EXPECT_TRUE(model.b1 == loaded.b1);
  EXPECT_TRUE(model.w2 == loaded.w2);
  EXPECT_TRUE(model.b2 == loaded.b2);
}

TEST(Checkpoint, SieRoundTripBitExact) {
  TempDir tmp;
  SieModel model = SieModel::init(7, 3, 4, 55, 0.3);
  const std::string path = tmp.path("sie.bin");
  save_sie_checkpoint(path, model, 31);
  SieModel loaded = load_sie_checkpoint(path, 31);
  EXPECT_TRUE(model.embeddings == loaded.embeddings);
  EXPECT_TRUE(model.w1 == loaded.w1);
  EXPECT_TRUE(model.b1 == loaded.b1);
  EXPECT_TRUE(model.w2 == loaded.w2);
  EXPECT_TRUE(model.b2 == loaded.b2);
}

TEST(Checkpoint, VocabHashMismatchRejected) {
  TempDir tmp;
  HsModel model = HsModel::init(5, 2, 3, 1, 0.1);
  const std::string path = tmp.path("hs.bin");
  save_hs_checkpoint(path, model, 100);
  try {
    load_hs_checkpoint(path, 101);
    FAIL() << "expected vocabulary hash mismatch";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("vocabulary hash mismatch"),
              std::string::npos);
  }
}

TEST(Checkpoint, KindMismatchRejected) {
  TempDir tmp;
  HsModel model = HsModel::init(5, 2, 3, 1, 0.1);
  const std::string path = tmp.path("hs.bin");
  save_hs_checkpoint(path, model, 100);
  EXPECT_THROW(load_sie_checkpoint(path, 100), std::runtime_error);
}

TEST(Checkpoint, GarbageFileRejected) {
  TempDir tmp;
  const std::string path = tmp.path("junk.bin");
  std::ofstream(path, std::ios::binary) << "this is not a checkpoint at all";
  EXPECT_THROW(load_hs_checkpoint(path, 0), std::runtime_error);
}

TEST(Checkpoint, TruncatedFileRejected) {
  TempDir tmp;
  HsModel model = HsModel::init(6, 3, 3, 2, 0.1);
  const std::string path = tmp.path("hs.bin");
  save_hs_checkpoint(path, model, 5);
  auto size = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, size - 16);
  EXPECT_THROW(load_hs_checkpoint(path, 5), std::runtime_error);
}

TEST(Checkpoint, MissingFileRejected) {
  EXPECT_THROW(load_hs_checkpoint("/nonexistent/model.bin", 0),
               std::runtime_error);
}

}  // namespace
}  // namespace tokenaudit
