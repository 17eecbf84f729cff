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

#include "tokenaudit/classifier.h"

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tokenaudit/rng.h"

namespace tokenaudit {
namespace {

constexpr double kFdStep = 1e-5;
constexpr double kFdTolerance = 1e-4;

double relative_error(double analytic, double numeric) {
  double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / denom;
}

TokenizedDoc doc_with_ids(std::vector<int> ids) {
  TokenizedDoc doc;
  doc.ids = std::move(ids);
  doc.tokens.resize(doc.ids.size(), "w");
  return doc;
}

HsModel random_hs_model(int vocab, int dim, int hidden, std::uint64_t seed) {
  return HsModel::init(vocab, dim, hidden, seed, 0.5);
}

SieModel random_sie_model(int vocab, int dim, int hidden, std::uint64_t seed) {
  return SieModel::init(vocab, dim, hidden, seed, 0.5);
}

std::vector<int> random_ids(Rng& rng, int vocab, std::size_t min_len,
                            std::size_t max_len) {
  std::size_t len = min_len + uniform_index(rng, max_len - min_len + 1);
  std::vector<int> ids(len);
  for (auto& id : ids)
    id = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(vocab)));
  return ids;
}

TEST(ForwardHs, ZeroParametersGiveEvenSplit) {
  HsModel model = HsModel::init(5, 3, 4, 0, 0.0);
  HsCache cache = forward_hs(model, doc_with_ids({1, 2, 3}));
  EXPECT_NEAR(cache.probs(0), 0.5, 1e-12);
  EXPECT_NEAR(cache.probs(1), 0.5, 1e-12);
}

TEST(ForwardHs, RepetitionOfSingleTokenPoolsIdentically) {
  HsModel model = random_hs_model(6, 4, 3, 7);
  HsCache once = forward_hs(model, doc_with_ids({2}));
  HsCache thrice = forward_hs(model, doc_with_ids({2, 2, 2}));
  EXPECT_LT((once.probs - thrice.probs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ForwardHs, ProbabilitiesSumToOne) {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    HsModel model = random_hs_model(8, 5, 4, 100 + trial);
    auto ids = random_ids(rng, 8, 1, 6);
    HsCache cache = forward_hs(model, doc_with_ids(ids));
    EXPECT_NEAR(cache.probs.sum(), 1.0, 1e-9);
  }
}

TEST(ForwardSie, ZeroParametersGiveUniformThirds) {
  SieModel model = SieModel::init(5, 3, 4, 0, 0.0);
  SieCache cache =
      forward_sie(model, doc_with_ids({1, 2}), doc_with_ids({3}));
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(cache.probs(c), 1.0 / 3.0, 1e-12);
}

TEST(ForwardSie, IdenticalSidesZeroAbsDifferenceBlock) {
  SieModel model = random_sie_model(6, 4, 3, 11);
  SieCache cache =
      forward_sie(model, doc_with_ids({1, 4}), doc_with_ids({1, 4}));
  int d = model.dim();
  EXPECT_LT(cache.combined.segment(2 * d, d).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ForwardSie, SwappingSidesChangesOutput) {
  SieModel model = random_sie_model(6, 4, 3, 13);
  SieCache ab = forward_sie(model, doc_with_ids({1, 2}), doc_with_ids({3}));
  SieCache ba = forward_sie(model, doc_with_ids({3}), doc_with_ids({1, 2}));
  EXPECT_GT((ab.probs - ba.probs).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(InputGradientsHs, MatchCentralFiniteDifferences) {
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    HsModel model = random_hs_model(7, 4, 5, 200 + trial);
    auto ids = random_ids(rng, 7, 1, 5);
    HsCache cache = forward_hs(model, doc_with_ids(ids));
    int target = static_cast<int>(uniform_index(rng, 2));
    Eigen::MatrixXd analytic = input_gradients_hs(model, cache, target);
    ASSERT_EQ(analytic.rows(), static_cast<int>(ids.size()));
    for (int i = 0; i < analytic.rows(); ++i) {
      for (int j = 0; j < analytic.cols(); ++j) {
        Eigen::MatrixXd plus = cache.inputs;
        Eigen::MatrixXd minus = cache.inputs;
        plus(i, j) += kFdStep;
        minus(i, j) -= kFdStep;
        double numeric = (forward_hs_from_embeddings(model, plus).logits(target) -
                          forward_hs_from_embeddings(model, minus)
                              .logits(target)) /
                         (2.0 * kFdStep);
        EXPECT_LT(relative_error(analytic(i, j), numeric), kFdTolerance)
            << "trial " << trial << " pos " << i << " coord " << j;
      }
    }
  }
}

// The |u-v| term in the combination vector is not differentiable where a
// coordinate of u-v is zero; trials are drawn away from that set.
bool sie_near_kink(const SieCache& cache, int dim) {
  for (int k = 0; k < dim; ++k) {
    if (std::abs(cache.premise_pooled(k) - cache.hypothesis_pooled(k)) < 1e-3)
      return true;
  }
  return false;
}

TEST(InputGradientsSie, MatchCentralFiniteDifferences) {
  Rng rng = make_rng(19);
  int done = 0;
  int attempts = 0;
  while (done < 40 && attempts < 400) {
    ++attempts;
    SieModel model =
        random_sie_model(7, 3, 4, 300 + static_cast<std::uint64_t>(attempts));
    auto p_ids = random_ids(rng, 7, 1, 4);
    auto h_ids = random_ids(rng, 7, 1, 4);
    SieCache cache =
        forward_sie(model, doc_with_ids(p_ids), doc_with_ids(h_ids));
    if (sie_near_kink(cache, model.dim())) continue;
    ++done;
    int target = static_cast<int>(uniform_index(rng, 3));
    auto [grad_p, grad_h] = input_gradients_sie(model, cache, target);
    for (int i = 0; i < grad_p.rows(); ++i) {
      for (int j = 0; j < grad_p.cols(); ++j) {
        Eigen::MatrixXd plus = cache.premise_inputs;
        Eigen::MatrixXd minus = cache.premise_inputs;
        plus(i, j) += kFdStep;
        minus(i, j) -= kFdStep;
        double numeric =
            (forward_sie_from_embeddings(model, plus, cache.hypothesis_inputs)
                 .logits(target) -
             forward_sie_from_embeddings(model, minus, cache.hypothesis_inputs)
                 .logits(target)) /
            (2.0 * kFdStep);
        EXPECT_LT(relative_error(grad_p(i, j), numeric), kFdTolerance);
      }
    }
    for (int i = 0; i < grad_h.rows(); ++i) {
      for (int j = 0; j < grad_h.cols(); ++j) {
        Eigen::MatrixXd plus = cache.hypothesis_inputs;
        Eigen::MatrixXd minus = cache.hypothesis_inputs;
        plus(i, j) += kFdStep;
        minus(i, j) -= kFdStep;
        double numeric =
            (forward_sie_from_embeddings(model, cache.premise_inputs, plus)
                 .logits(target) -
             forward_sie_from_embeddings(model, cache.premise_inputs, minus)
                 .logits(target)) /
            (2.0 * kFdStep);
        EXPECT_LT(relative_error(grad_h(i, j), numeric), kFdTolerance);
      }
    }
  }
  ASSERT_EQ(done, 40) << "kink-free resampling exhausted its attempt budget";
}

TEST(InputGradientsHs, ZeroOutputWeightsZeroGradients) {
  HsModel model = random_hs_model(6, 3, 4, 23);
  model.w2.setZero();
  HsCache cache = forward_hs(model, doc_with_ids({1, 2, 3}));
  Eigen::MatrixXd grads = input_gradients_hs(model, cache, 0);
  EXPECT_LT(grads.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(InputGradientsHs, DuplicatedTokenGetsIdenticalRows) {
  HsModel model = random_hs_model(6, 3, 4, 29);
  HsCache cache = forward_hs(model, doc_with_ids({2, 4, 2}));
  Eigen::MatrixXd grads = input_gradients_hs(model, cache, 1);
  EXPECT_LT((grads.row(0) - grads.row(2)).cwiseAbs().maxCoeff(), 1e-15);
}

double hs_loss_on(const HsModel& model, const TokenizedDoc& doc, int label) {
  HsGradients scratch = HsGradients::zeros_like(model);
  return accumulate_hs_loss_gradients(model, doc, label, &scratch);
}

TEST(LossGradientsHs, ParametersMatchCentralFiniteDifferences) {
  Rng rng = make_rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    HsModel model = random_hs_model(5, 3, 3, 400 + trial);
    auto ids = random_ids(rng, 5, 1, 4);
    TokenizedDoc doc = doc_with_ids(ids);
    int label = static_cast<int>(uniform_index(rng, 2));
    HsGradients grads = HsGradients::zeros_like(model);
    accumulate_hs_loss_gradients(model, doc, label, &grads);

    auto check = [&](double* param, double analytic) {
      double saved = *param;
      *param = saved + kFdStep;
      double up = hs_loss_on(model, doc, label);
      *param = saved - kFdStep;
      double down = hs_loss_on(model, doc, label);
      *param = saved;
      double numeric = (up - down) / (2.0 * kFdStep);
      EXPECT_LT(relative_error(analytic, numeric), kFdTolerance);
    };
    for (int r = 0; r < model.embeddings.rows(); ++r)
      for (int c = 0; c < model.embeddings.cols(); ++c)
        check(&model.embeddings(r, c), grads.embeddings(r, c));
    for (int r = 0; r < model.w1.rows(); ++r)
      for (int c = 0; c < model.w1.cols(); ++c)
        check(&model.w1(r, c), grads.w1(r, c));
    for (int r = 0; r < model.b1.size(); ++r) check(&model.b1(r), grads.b1(r));
    for (int r = 0; r < model.w2.rows(); ++r)
      for (int c = 0; c < model.w2.cols(); ++c)
        check(&model.w2(r, c), grads.w2(r, c));
    for (int r = 0; r < model.b2.size(); ++r) check(&model.b2(r), grads.b2(r));
  }
}

double sie_loss_on(const SieModel& model, const SieExample& ex) {
  SieGradients scratch = SieGradients::zeros_like(model);
  return accumulate_sie_loss_gradients(model, ex, &scratch);
}

TEST(LossGradientsSie, ParametersMatchCentralFiniteDifferences) {
  Rng rng = make_rng(37);
  int done = 0;
  int attempts = 0;
  while (done < 15 && attempts < 200) {
    ++attempts;
    SieModel model =
        random_sie_model(5, 3, 3, 500 + static_cast<std::uint64_t>(attempts));
    SieExample ex;
    ex.premise = doc_with_ids(random_ids(rng, 5, 1, 4));
    ex.hypothesis = doc_with_ids(random_ids(rng, 5, 1, 4));
    ex.label = static_cast<int>(uniform_index(rng, 3));
    SieCache cache = forward_sie(model, ex.premise, ex.hypothesis);
    if (sie_near_kink(cache, model.dim())) continue;
    ++done;
    SieGradients grads = SieGradients::zeros_like(model);
    accumulate_sie_loss_gradients(model, ex, &grads);

    auto check = [&](double* param, double analytic) {
      double saved = *param;
      *param = saved + kFdStep;
      double up = sie_loss_on(model, ex);
      *param = saved - kFdStep;
      double down = sie_loss_on(model, ex);
      *param = saved;
      double numeric = (up - down) / (2.0 * kFdStep);
      EXPECT_LT(relative_error(analytic, numeric), kFdTolerance);
    };
    for (int r = 0; r < model.embeddings.rows(); ++r)
      for (int c = 0; c < model.embeddings.cols(); ++c)
        check(&model.embeddings(r, c), grads.embeddings(r, c));
    for (int r = 0; r < model.w1.rows(); ++r)
      for (int c = 0; c < model.w1.cols(); ++c)
        check(&model.w1(r, c), grads.w1(r, c));
    for (int r = 0; r < model.b1.size(); ++r) check(&model.b1(r), grads.b1(r));
    for (int r = 0; r < model.w2.rows(); ++r)
      for (int c = 0; c < model.w2.cols(); ++c)
        check(&model.w2(r, c), grads.w2(r, c));
    for (int r = 0; r < model.b2.size(); ++r) check(&model.b2(r), grads.b2(r));
  }
  ASSERT_EQ(done, 15) << "kink-free resampling exhausted its attempt budget";
}

std::vector<HsExample> separable_set(int n, int vocab) {
  // Class decided by which half of the id range dominates the document.
  std::vector<HsExample> out;
  Rng rng = make_rng(99);
  for (int i = 0; i < n; ++i) {
    int label = i % 2;
    std::vector<int> ids;
    int lo = label == 0 ? 1 : vocab / 2;
    int hi = label == 0 ? vocab / 2 : vocab;
    for (int t = 0; t < 6; ++t)
      ids.push_back(lo + static_cast<int>(uniform_index(
                             rng, static_cast<std::size_t>(hi - lo))));
    HsExample ex;
    ex.doc = doc_with_ids(ids);
    ex.label = label;
    out.push_back(std::move(ex));
  }
  return out;
}

TEST(TrainHs, FitsSeparableSet) {
  auto data = separable_set(200, 30);
  TrainConfig config;
  config.seed = 5;
  Metrics train_metrics;
  HsModel model = train_hs(data, 30, 64, 64, config, &train_metrics);
  EXPECT_GE(train_metrics.accuracy, 0.95);
  EXPECT_TRUE(model.finite());
}

TEST(TrainHs, ZeroEpochsForbidden) {
  auto data = separable_set(20, 10);
  TrainConfig config;
  config.epochs = 0;
  EXPECT_THROW(train_hs(data, 10, 8, 8, config, nullptr),
               std::invalid_argument);
}

TEST(TrainHs, SingleLabelSetForbidden) {
  auto data = separable_set(20, 10);
  for (auto& ex : data) ex.label = 1;
  TrainConfig config;
  EXPECT_THROW(train_hs(data, 10, 8, 8, config, nullptr),
               std::runtime_error);
}

TEST(TrainHs, SameSeedBitwiseIdenticalParameters) {
  auto data = separable_set(60, 20);
  TrainConfig config;
  config.seed = 8;
  config.epochs = 3;
  HsModel a = train_hs(data, 20, 8, 6, config, nullptr);
  HsModel b = train_hs(data, 20, 8, 6, config, nullptr);
  EXPECT_TRUE(a.embeddings == b.embeddings);
  EXPECT_TRUE(a.w1 == b.w1);
  EXPECT_TRUE(a.b1 == b.b1);
  EXPECT_TRUE(a.w2 == b.w2);
  EXPECT_TRUE(a.b2 == b.b2);
}

// One full-batch step at a small learning rate must not increase the
// objective (mean cross-entropy plus the l2 term) it descends.
TEST(TrainHs, SmallFullBatchStepDoesNotIncreaseObjective) {
  auto data = separable_set(50, 16);
  TrainConfig config;
  config.seed = 21;
  config.epochs = 1;
  config.batch_size = static_cast<int>(data.size());
  config.learning_rate = 1e-4;

  auto objective = [&](const HsModel& model) {
    double total = 0.0;
    for (const auto& ex : data) total += hs_loss_on(model, ex.doc, ex.label);
    double mean = total / static_cast<double>(data.size());
    double sq = model.embeddings.squaredNorm() + model.w1.squaredNorm() +
                model.b1.squaredNorm() + model.w2.squaredNorm() +
                model.b2.squaredNorm();
    return mean + config.l2 * sq;
  };

  HsModel before = HsModel::init(16, 8, 6, derive_seed(config.seed, kHsInitStage),
                                 config.init_scale);
  HsModel after = train_hs(data, 16, 8, 6, config, nullptr);
  EXPECT_LE(objective(after), objective(before) + 1e-12);
}

TEST(TrainSie, LearnsAndIsDeterministic) {
  // Labels decided by the hypothesis id block, so the task is learnable.
  std::vector<SieExample> data;
  Rng rng = make_rng(77);
  for (int i = 0; i < 120; ++i) {
    int label = i % 3;
    SieExample ex;
    ex.premise = doc_with_ids(random_ids(rng, 12, 2, 5));
    std::vector<int> h_ids;
    for (int t = 0; t < 3; ++t)
      h_ids.push_back(1 + label * 4 +
                      static_cast<int>(uniform_index(rng, 4)));
    ex.hypothesis = doc_with_ids(h_ids);
    ex.label = label;
    data.push_back(std::move(ex));
  }
  TrainConfig config;
  config.seed = 4;
  config.epochs = 80;
  Metrics metrics;
  SieModel a = train_sie(data, 14, 16, 16, config, &metrics);
  EXPECT_GE(metrics.accuracy, 0.9);
  SieModel b = train_sie(data, 14, 16, 16, config, nullptr);
  EXPECT_TRUE(a.embeddings == b.embeddings);
  EXPECT_TRUE(a.w2 == b.w2);
}

TEST(Metrics, PerfectPredictions) {
  Metrics m = metrics_from_confusion({{5, 0}, {0, 5}});
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.f1, 1.0);
}

TEST(Metrics, AllNegativePredictionsZeroF1) {
  Metrics m = metrics_from_confusion({{6, 0}, {4, 0}});
  EXPECT_NEAR(m.accuracy, 0.6, 1e-12);
  EXPECT_EQ(m.f1, 0.0);
}

TEST(Metrics, HandComputedBinaryF1) {
  // gold 1 row: TP=2, FN=1; gold 0 row: FP=1, TN=6.
  Metrics m = metrics_from_confusion({{6, 1}, {1, 2}});
  EXPECT_NEAR(m.accuracy, 0.8, 1e-12);
  EXPECT_NEAR(m.f1, 2.0 / 3.0, 1e-12);
}

TEST(PredictedClass, ArgmaxWithLowestIndexTieBreak) {
  Eigen::VectorXd p(3);
  p << 0.2, 0.5, 0.3;
  EXPECT_EQ(predicted_class(p), 1);
  p << 0.4, 0.4, 0.2;
  EXPECT_EQ(predicted_class(p), 0);
}

}  // namespace
}  // namespace tokenaudit
