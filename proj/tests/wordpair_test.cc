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

#include "tokenaudit/wordpair.h"

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gtest/gtest.h"
#include "tokenaudit/corpus.h"
#include "tokenaudit/rng.h"
#include "tokenaudit/saliency.h"

namespace tokenaudit {
namespace {

Vocab miner_vocab() {
  return build_vocab(
      {{"aa", "bb", "cc", "dd"}, {"ee", "ff", "gg", "hh"}}, 1);
}

SieModel random_model(const Vocab& vocab, std::uint64_t seed) {
  return SieModel::init(vocab.size(), 6, 5, seed, 0.6);
}

std::vector<SieExample> random_examples(const Vocab& vocab, std::size_t count,
                                        std::uint64_t seed) {
  const std::vector<std::string> words = {"aa", "bb", "cc", "dd",
                                          "ee", "ff", "gg", "hh"};
  Rng rng(seed);
  std::vector<SieExample> examples(count);
  for (auto& ex : examples) {
    const std::size_t p_len = 2 + uniform_index(rng, 3);
    const std::size_t h_len = 2 + uniform_index(rng, 3);
    std::vector<std::string> premise(p_len), hypothesis(h_len);
    for (auto& w : premise) w = words[uniform_index(rng, words.size())];
    for (auto& w : hypothesis) w = words[uniform_index(rng, words.size())];
    ex.premise = doc_from_tokens(premise, vocab, "");
    ex.hypothesis = doc_from_tokens(hypothesis, vocab, "");
    ex.label = static_cast<int>(uniform_index(rng, 3));
  }
  return examples;
}

TEST(CollectObservations, CrossProductOnePerExample) {
  Vocab vocab = miner_vocab();
  SieModel model = random_model(vocab, 3);
  SieExample ex;
  ex.premise = doc_from_tokens({"aa", "bb"}, vocab, "");
  ex.hypothesis = doc_from_tokens({"cc", "dd", "ee"}, vocab, "");
  ex.label = 2;
  auto obs = collect_observations(model, {ex});
  EXPECT_EQ(obs.size(), 6u);  // 2 premise types x 3 hypothesis types
  for (const char* p : {"aa", "bb"}) {
    for (const char* h : {"cc", "dd", "ee"}) {
      auto it = obs.find({p, h});
      ASSERT_NE(it, obs.end()) << p << "," << h;
      ASSERT_EQ(it->second.size(), 1u);
      EXPECT_EQ(it->second[0].gold_class, 2);
      EXPECT_EQ(it->second[0].example_id, 0u);
    }
  }
}

TEST(CollectObservations, RepeatedTypeCollapsesToMaxOfItsOccurrences) {
  Vocab vocab = miner_vocab();
  SieModel model = random_model(vocab, 5);
  SieExample ex;
  ex.premise = doc_from_tokens({"aa", "bb", "aa"}, vocab, "");
  ex.hypothesis = doc_from_tokens({"cc"}, vocab, "");
  ex.label = 0;
  auto obs = collect_observations(model, {ex});
  // Two premise types despite three premise tokens.
  ASSERT_EQ(obs.size(), 2u);
  auto [premise_map, hypothesis_map] =
      input_x_gradient_sie(model, ex.premise, ex.hypothesis);
  double max_aa = 0.0;
  for (std::size_t i = 0; i < premise_map.tokens.size(); ++i) {
    if (premise_map.tokens[i] == "aa")
      max_aa = std::max(max_aa, premise_map.scores[i]);
  }
  const auto& rec = obs.at({"aa", "cc"});
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_DOUBLE_EQ(rec[0].premise_saliency, max_aa);
  EXPECT_DOUBLE_EQ(rec[0].hypothesis_saliency, hypothesis_map.scores[0]);
}

TEST(Pearson, HandValues) {
  EXPECT_DOUBLE_EQ(*pearson({1, 2, 3}, {2, 4, 6}), 1.0);
  EXPECT_DOUBLE_EQ(*pearson({1, 2, 3}, {3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(*pearson({1, 2, 3}, {1, 3, 2}), 0.5);
}

TEST(Pearson, SymmetricInArguments) {
  std::vector<double> xs = {0.3, 1.7, 2.9, 0.1, 5.5};
  std::vector<double> ys = {2.0, 0.4, 3.3, 1.1, 0.9};
  EXPECT_DOUBLE_EQ(*pearson(xs, ys), *pearson(ys, xs));
}

TEST(Pearson, InvariantUnderPositiveAffineMaps) {
  std::vector<double> xs = {0.3, 1.7, 2.9, 0.1, 5.5};
  std::vector<double> ys = {2.0, 0.4, 3.3, 1.1, 0.9};
  std::vector<double> xs2(xs.size()), ys2(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs2[i] = 3.0 * xs[i] - 7.0;
    ys2[i] = 0.25 * ys[i] + 11.0;
  }
  EXPECT_NEAR(*pearson(xs, ys), *pearson(xs2, ys2), 1e-9);
  // Negating one side flips the sign.
  for (auto& x : xs2) x = -x;
  EXPECT_NEAR(*pearson(xs, ys), -*pearson(xs2, ys2), 1e-9);
}

TEST(Pearson, ZeroVarianceIsNullopt) {
  EXPECT_FALSE(pearson({1, 1, 1}, {2, 3, 4}).has_value());
  EXPECT_FALSE(pearson({2, 3, 4}, {5, 5, 5}).has_value());
}

TEST(Pearson, RejectsBadInputs) {
  EXPECT_THROW(pearson({1, 2}, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(pearson({1}, {2}), std::invalid_argument);
  EXPECT_THROW(pearson({}, {}), std::invalid_argument);
}

PairObservations hand_observations() {
  PairObservations obs;
  // Perfectly correlated, support 4, classes mixed.
  obs[{"aa", "xx"}] = {{0.1, 0.2, 0, 0},
                       {0.2, 0.4, 1, 1},
                       {0.3, 0.6, 0, 2},
                       {0.4, 0.8, 2, 3}};
  // Support exactly 3: excluded at min_support 3.
  obs[{"bb", "xx"}] = {{0.1, 0.9, 0, 0}, {0.5, 0.1, 0, 1}, {0.9, 0.5, 0, 2}};
  // Zero variance on the hypothesis side, support 4.
  obs[{"cc", "yy"}] = {{0.1, 0.5, 1, 0},
                       {0.2, 0.5, 1, 1},
                       {0.3, 0.5, 1, 2},
                       {0.4, 0.5, 1, 3}};
  // Anti-correlated, support 5, single class.
  obs[{"dd", "zz"}] = {{0.5, 0.1, 2, 0},
                       {0.4, 0.2, 2, 1},
                       {0.3, 0.3, 2, 2},
                       {0.2, 0.4, 2, 3},
                       {0.1, 0.5, 2, 4}};
  // Weak correlation, support 4: below min_r 0.7.
  obs[{"ee", "ww"}] = {{0.1, 0.3, 0, 0},
                       {0.9, 0.1, 1, 1},
                       {0.2, 0.9, 0, 2},
                       {0.8, 0.8, 1, 3}};
  return obs;
}

TEST(Mine, SupportMustExceedThreshold) {
  auto result = mine(hand_observations(), 3, 0.7);
  for (const auto& stat : result.stats) {
    EXPECT_GT(stat.support, 3);
    EXPECT_NE(stat.premise_word, "bb");
  }
}

TEST(Mine, ZeroVarianceCountedNotRanked) {
  auto result = mine(hand_observations(), 3, 0.7);
  EXPECT_EQ(result.n_zero_variance, 1);
  for (const auto& stat : result.stats) EXPECT_NE(stat.premise_word, "cc");
}

TEST(Mine, StatsRankedWithHistogramAndUniqueness) {
  auto result = mine(hand_observations(), 3, 0.7);
  ASSERT_EQ(result.stats.size(), 2u);
  // |r| = 1 for both; support 5 beats support 4.
  EXPECT_EQ(result.stats[0].premise_word, "dd");
  EXPECT_DOUBLE_EQ(result.stats[0].r, -1.0);
  EXPECT_EQ(result.stats[0].support, 5);
  EXPECT_EQ(result.stats[0].class_histogram, (std::array<std::int64_t, 3>{0, 0, 5}));
  ASSERT_TRUE(result.stats[0].unique_class.has_value());
  EXPECT_EQ(*result.stats[0].unique_class, 2);
  EXPECT_EQ(result.stats[1].premise_word, "aa");
  EXPECT_DOUBLE_EQ(result.stats[1].r, 1.0);
  EXPECT_EQ(result.stats[1].class_histogram, (std::array<std::int64_t, 3>{2, 1, 1}));
  EXPECT_FALSE(result.stats[1].unique_class.has_value());
}

TEST(Mine, RejectsBadThresholds) {
  EXPECT_THROW(mine({}, 1, 0.7), std::invalid_argument);
  EXPECT_THROW(mine({}, 3, -0.1), std::invalid_argument);
  EXPECT_THROW(mine({}, 3, 1.5), std::invalid_argument);
}

// Straight re-derivation of the whole pipeline on a random model: group
// observations by hand, compute the correlation from its textbook formula,
// and require exact agreement with the mined statistics.
TEST(Mine, MatchesBruteForceOnRandomExamples) {
  Vocab vocab = miner_vocab();
  SieModel model = random_model(vocab, 11);
  auto examples = random_examples(vocab, 60, 29);
  auto obs = collect_observations(model, examples);
  const std::int64_t min_support = 3;
  const double min_r = 0.5;
  auto result = mine(obs, min_support, min_r);

  std::map<PairKey, std::pair<double, std::int64_t>> brute;
  std::int64_t brute_zero_variance = 0;
  for (const auto& [key, vec] : obs) {
    const auto n = static_cast<std::int64_t>(vec.size());
    if (n <= min_support) continue;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const auto& o : vec) {
      sx += o.premise_saliency;
      sy += o.hypothesis_saliency;
      sxx += o.premise_saliency * o.premise_saliency;
      syy += o.hypothesis_saliency * o.hypothesis_saliency;
      sxy += o.premise_saliency * o.hypothesis_saliency;
    }
    const double dn = static_cast<double>(n);
    const double var_x = sxx - sx * sx / dn;
    const double var_y = syy - sy * sy / dn;
    if (var_x <= 0.0 || var_y <= 0.0) {
      ++brute_zero_variance;
      continue;
    }
    const double r = (sxy - sx * sy / dn) / std::sqrt(var_x * var_y);
    if (std::abs(r) < min_r) continue;
    brute[key] = {r, n};
  }

  EXPECT_EQ(result.n_zero_variance, brute_zero_variance);
  ASSERT_EQ(result.stats.size(), brute.size());
  for (const auto& stat : result.stats) {
    auto it = brute.find({stat.premise_word, stat.hypothesis_word});
    ASSERT_NE(it, brute.end())
        << stat.premise_word << "," << stat.hypothesis_word;
    EXPECT_NEAR(stat.r, it->second.first, 1e-12);
    EXPECT_EQ(stat.support, it->second.second);
  }
  // Ranking: |r| descending with the documented tie-breaks.
  for (std::size_t i = 1; i < result.stats.size(); ++i) {
    const auto& a = result.stats[i - 1];
    const auto& b = result.stats[i];
    const double ra = std::abs(a.r);
    const double rb = std::abs(b.r);
    EXPECT_TRUE(ra > rb ||
                (ra == rb &&
                 (a.support > b.support ||
                  (a.support == b.support &&
                   std::tie(a.premise_word, a.hypothesis_word) <
                       std::tie(b.premise_word, b.hypothesis_word)))));
  }
}

TEST(ClassUnique, KeepsOnlySingleClassPairs) {
  auto result = mine(hand_observations(), 3, 0.7);
  auto unique = class_unique(result.stats);
  ASSERT_EQ(unique.size(), 1u);
  EXPECT_EQ(unique[0].premise_word, "dd");
  EXPECT_EQ(*unique[0].unique_class, 2);
}

TEST(PairsCsv, HeaderAndRows) {
  auto result = mine(hand_observations(), 3, 0.7);
  std::string csv = format_pairs_csv(result.stats);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "premise_word,hypothesis_word,r,support,entail_count,"
            "neutral_count,contradict_count,unique_class");
  EXPECT_NE(csv.find("dd,zz,-1.000000,5,0,0,5,contradict"), std::string::npos);
  EXPECT_NE(csv.find("aa,xx,1.000000,4,2,1,1,\n"), std::string::npos);
}

TEST(PairsCsv, EmptyStatsStillHasHeader) {
  std::string csv = format_pairs_csv({});
  EXPECT_EQ(csv,
            "premise_word,hypothesis_word,r,support,entail_count,"
            "neutral_count,contradict_count,unique_class\n");
}

TEST(PairsSummary, ListsTopAndClassUniqueSections) {
  auto result = mine(hand_observations(), 3, 0.7);
  std::string summary = format_pairs_summary(result, 1);
  EXPECT_NE(summary.find("mined pairs: 2"), std::string::npos);
  EXPECT_NE(summary.find("zero-variance dropped: 1"), std::string::npos);
  EXPECT_NE(summary.find("top pairs by |r|:"), std::string::npos);
  EXPECT_NE(summary.find("(dd, zz)"), std::string::npos);
  // top_n of 1 keeps the runner-up out of the top section.
  EXPECT_EQ(summary.find("(aa, xx)"), std::string::npos);
  EXPECT_NE(summary.find("class-unique pairs: 1"), std::string::npos);
  EXPECT_NE(summary.find("class=contradict"), std::string::npos);
}

}  // namespace
}  // namespace tokenaudit
