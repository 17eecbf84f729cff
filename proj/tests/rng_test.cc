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

#include "tokenaudit/rng.h"

#include <algorithm>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace tokenaudit {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a = make_rng(42);
  Rng b = make_rng(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(DeriveSeed, StagesDecorrelate) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t stage = 0; stage < 64; ++stage)
    seen.insert(derive_seed(1, stage));
  EXPECT_EQ(seen.size(), 64u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(UniformIndex, InRangeAndRejectsZero) {
  Rng rng = make_rng(9);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(uniform_index(rng, 7), 7u);
  EXPECT_THROW(uniform_index(rng, 0), std::invalid_argument);
}

TEST(UniformReal, HalfOpenUnitInterval) {
  Rng rng = make_rng(5);
  for (int i = 0; i < 1000; ++i) {
    double x = uniform_real(rng);
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(UniformRange, Bounds) {
  Rng rng = make_rng(6);
  for (int i = 0; i < 1000; ++i) {
    double x = uniform_range(rng, -0.1, 0.1);
    EXPECT_GE(x, -0.1);
    EXPECT_LT(x, 0.1);
  }
}

TEST(ShuffleVector, PermutationAndDeterminism) {
  std::vector<int> values(50);
  for (int i = 0; i < 50; ++i) values[i] = i;
  std::vector<int> first = values;
  Rng rng1 = make_rng(11);
  shuffle_vector(first, rng1);
  std::vector<int> second = values;
  Rng rng2 = make_rng(11);
  shuffle_vector(second, rng2);
  EXPECT_EQ(first, second);
  std::vector<int> sorted = first;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, values);
  EXPECT_NE(first, values);
}

TEST(SampleWithoutReplacement, DistinctAscendingSubset) {
  Rng rng = make_rng(13);
  auto picks = sample_without_replacement(100, 30, rng);
  ASSERT_EQ(picks.size(), 30u);
  for (std::size_t i = 0; i + 1 < picks.size(); ++i)
    EXPECT_LT(picks[i], picks[i + 1]);
  EXPECT_LT(picks.back(), 100u);
}

TEST(SampleWithoutReplacement, FullDrawIsEverything) {
  Rng rng = make_rng(14);
  auto picks = sample_without_replacement(5, 5, rng);
  EXPECT_EQ(picks, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(SampleWithoutReplacement, OverdrawThrows) {
  Rng rng = make_rng(15);
  EXPECT_THROW(sample_without_replacement(3, 4, rng), std::invalid_argument);
}

}  // namespace
}  // namespace tokenaudit
