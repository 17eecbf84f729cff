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

#ifndef TOKENAUDIT_CLASSIFIER_H_
#define TOKENAUDIT_CLASSIFIER_H_

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "tokenaudit/corpus.h"

namespace tokenaudit {

struct TrainConfig {
  double learning_rate = 0.05;
  int epochs = 20;
  int batch_size = 32;
  double l2 = 1e-5;
  std::uint64_t seed = 0;
  double init_scale = 0.1;
};

inline constexpr double kMomentum = 0.9;

// derive_seed stages consumed by the trainers; exposed so that a caller can
// reproduce the exact initial parameters of a training run.
inline constexpr std::uint64_t kHsInitStage = 11;
inline constexpr std::uint64_t kHsShuffleStage = 12;
inline constexpr std::uint64_t kSieInitStage = 21;
inline constexpr std::uint64_t kSieShuffleStage = 22;

struct Metrics {
  double accuracy = 0.0;
  double f1 = 0.0;  // binary F1 on class 1 for 2 classes, macro-F1 otherwise
  std::vector<std::vector<std::int64_t>> confusion;  // [gold][pred]
};

Metrics metrics_from_confusion(
    const std::vector<std::vector<std::int64_t>>& confusion);

struct HsExample {
  TokenizedDoc doc;
  int label = 0;  // 1 = hostile
};

struct SieExample {
  TokenizedDoc premise;
  TokenizedDoc hypothesis;
  int label = 0;  // 0 entail, 1 neutral, 2 contradict
};

// Mean-pooled embeddings -> tanh hidden layer -> 2-way softmax.
struct HsModel {
  Eigen::MatrixXd embeddings;  // V x d
  Eigen::MatrixXd w1;          // d x h
  Eigen::VectorXd b1;          // h
  Eigen::MatrixXd w2;          // h x 2
  Eigen::VectorXd b2;          // 2

  int vocab_size() const { return static_cast<int>(embeddings.rows()); }
  int dim() const { return static_cast<int>(embeddings.cols()); }
  int hidden() const { return static_cast<int>(w1.cols()); }

  static HsModel init(int vocab, int dim, int hidden, std::uint64_t seed,
                      double scale);
  bool finite() const;
};

// Dual encoder over a shared embedding matrix. Premise and hypothesis are
// mean-pooled to u and v, combined as [u; v; |u-v|; u.*v], then passed
// through a tanh hidden layer to a 3-way softmax.
struct SieModel {
  Eigen::MatrixXd embeddings;  // V x d
  Eigen::MatrixXd w1;          // 4d x h
  Eigen::VectorXd b1;          // h
  Eigen::MatrixXd w2;          // h x 3
  Eigen::VectorXd b2;          // 3

  int vocab_size() const { return static_cast<int>(embeddings.rows()); }
  int dim() const { return static_cast<int>(embeddings.cols()); }
  int hidden() const { return static_cast<int>(w1.cols()); }

  static SieModel init(int vocab, int dim, int hidden, std::uint64_t seed,
                       double scale);
  bool finite() const;
};

// Token id rows gathered from the embedding matrix, one row per position.
Eigen::MatrixXd embed(const Eigen::MatrixXd& embeddings,
                      const std::vector<int>& ids);

struct HsCache {
  Eigen::MatrixXd inputs;  // n x d
  Eigen::VectorXd pooled;
  Eigen::VectorXd hidden;
  Eigen::VectorXd logits;
  Eigen::VectorXd probs;
};

// The *_from_embeddings variants take explicit per-position input vectors;
// gradient checks perturb those directly.
HsCache forward_hs_from_embeddings(const HsModel& model,
                                   const Eigen::MatrixXd& inputs);
HsCache forward_hs(const HsModel& model, const TokenizedDoc& doc);

struct SieCache {
  Eigen::MatrixXd premise_inputs;     // n_p x d
  Eigen::MatrixXd hypothesis_inputs;  // n_h x d
  Eigen::VectorXd premise_pooled;     // u
  Eigen::VectorXd hypothesis_pooled;  // v
  Eigen::VectorXd combined;           // 4d
  Eigen::VectorXd hidden;
  Eigen::VectorXd logits;
  Eigen::VectorXd probs;
};

SieCache forward_sie_from_embeddings(const SieModel& model,
                                     const Eigen::MatrixXd& premise_inputs,
                                     const Eigen::MatrixXd& hypothesis_inputs);
SieCache forward_sie(const SieModel& model, const TokenizedDoc& premise,
                     const TokenizedDoc& hypothesis);

// Argmax with ties broken toward the lowest index.
int predicted_class(const Eigen::VectorXd& probs);

// d logit_target / d e_i, one row per token position.
Eigen::MatrixXd input_gradients_hs(const HsModel& model, const HsCache& cache,
                                   int target);
// Premise-side rows first, hypothesis-side rows second.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> input_gradients_sie(
    const SieModel& model, const SieCache& cache, int target);

struct HsGradients {
  Eigen::MatrixXd embeddings, w1, w2;
  Eigen::VectorXd b1, b2;
  static HsGradients zeros_like(const HsModel& model);
};
struct SieGradients {
  Eigen::MatrixXd embeddings, w1, w2;
  Eigen::VectorXd b1, b2;
  static SieGradients zeros_like(const SieModel& model);
};

// Adds d(cross-entropy)/d(params) for one example into `grads`; returns the
// example loss.
double accumulate_hs_loss_gradients(const HsModel& model,
                                    const TokenizedDoc& doc, int label,
                                    HsGradients* grads);
double accumulate_sie_loss_gradients(const SieModel& model,
                                     const SieExample& example,
                                     SieGradients* grads);

// Mini-batch SGD with momentum on mean cross-entropy + l2 * ||params||^2.
// Deterministic given the config seed; throws when the loss goes non-finite.
HsModel train_hs(const std::vector<HsExample>& examples, int vocab_size,
                 int dim, int hidden, const TrainConfig& config,
                 Metrics* train_metrics);
SieModel train_sie(const std::vector<SieExample>& examples, int vocab_size,
                   int dim, int hidden, const TrainConfig& config,
                   Metrics* train_metrics);

int predict_hs(const HsModel& model, const TokenizedDoc& doc);
int predict_sie(const SieModel& model, const TokenizedDoc& premise,
                const TokenizedDoc& hypothesis);

Metrics evaluate_hs(const HsModel& model, const std::vector<HsExample>& data);
Metrics evaluate_sie(const SieModel& model,
                     const std::vector<SieExample>& data);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_CLASSIFIER_H_
