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
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "tokenaudit/rng.h"

namespace tokenaudit {
namespace {

void fill_uniform(Rng& rng, double scale, Eigen::MatrixXd* m) {
  for (Eigen::Index r = 0; r < m->rows(); ++r) {
    for (Eigen::Index c = 0; c < m->cols(); ++c) {
      (*m)(r, c) = uniform_range(rng, -scale, scale);
    }
  }
}

void fill_uniform(Rng& rng, double scale, Eigen::VectorXd* v) {
  for (Eigen::Index i = 0; i < v->size(); ++i) {
    (*v)(i) = uniform_range(rng, -scale, scale);
  }
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd shifted = logits.array() - logits.maxCoeff();
  Eigen::VectorXd exps = shifted.array().exp();
  return exps / exps.sum();
}

// Elementwise sign with sign(0) = 0; the subgradient used at the |u-v| kink.
Eigen::VectorXd sign_vector(const Eigen::VectorXd& x) {
  Eigen::VectorXd s(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s(i) = x(i) > 0.0 ? 1.0 : (x(i) < 0.0 ? -1.0 : 0.0);
  }
  return s;
}

void check_dims(int vocab, int dim, int hidden) {
  if (vocab < 1 || dim < 1 || hidden < 1) {
    throw std::invalid_argument("model dimensions must be positive");
  }
}

void check_config(const TrainConfig& config) {
  if (config.learning_rate <= 0.0) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (config.epochs < 1) {
    throw std::invalid_argument("epochs must be at least 1");
  }
  if (config.batch_size < 1) {
    throw std::invalid_argument("batch size must be at least 1");
  }
  if (config.l2 < 0.0) {
    throw std::invalid_argument("l2 strength must be non-negative");
  }
  if (config.init_scale <= 0.0) {
    throw std::invalid_argument("init scale must be positive");
  }
}

}  // namespace

Metrics metrics_from_confusion(
    const std::vector<std::vector<std::int64_t>>& confusion) {
  const std::size_t n = confusion.size();
  if (n == 0) throw std::invalid_argument("empty confusion matrix");
  for (const auto& row : confusion) {
    if (row.size() != n) {
      throw std::invalid_argument("confusion matrix must be square");
    }
  }
  std::int64_t total = 0;
  std::int64_t diag = 0;
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t p = 0; p < n; ++p) total += confusion[g][p];
    diag += confusion[g][g];
  }
  if (total == 0) throw std::invalid_argument("empty confusion matrix");

  Metrics m;
  m.confusion = confusion;
  m.accuracy = static_cast<double>(diag) / static_cast<double>(total);

  auto class_f1 = [&](std::size_t c) {
    std::int64_t tp = confusion[c][c];
    std::int64_t pred_c = 0;
    std::int64_t gold_c = 0;
    for (std::size_t g = 0; g < n; ++g) pred_c += confusion[g][c];
    for (std::size_t p = 0; p < n; ++p) gold_c += confusion[c][p];
    double precision = pred_c > 0 ? static_cast<double>(tp) / pred_c : 0.0;
    double recall = gold_c > 0 ? static_cast<double>(tp) / gold_c : 0.0;
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
  };

  if (n == 2) {
    m.f1 = class_f1(1);
  } else {
    double sum = 0.0;
    for (std::size_t c = 0; c < n; ++c) sum += class_f1(c);
    m.f1 = sum / static_cast<double>(n);
  }
  return m;
}

HsModel HsModel::init(int vocab, int dim, int hidden, std::uint64_t seed,
                      double scale) {
  check_dims(vocab, dim, hidden);
  HsModel model;
  model.embeddings.resize(vocab, dim);
  model.w1.resize(dim, hidden);
  model.b1.resize(hidden);
  model.w2.resize(hidden, 2);
  model.b2.resize(2);
  Rng rng = make_rng(seed);
  fill_uniform(rng, scale, &model.embeddings);
  fill_uniform(rng, scale, &model.w1);
  fill_uniform(rng, scale, &model.b1);
  fill_uniform(rng, scale, &model.w2);
  fill_uniform(rng, scale, &model.b2);
  return model;
}

SieModel SieModel::init(int vocab, int dim, int hidden, std::uint64_t seed,
                        double scale) {
  check_dims(vocab, dim, hidden);
  SieModel model;
  model.embeddings.resize(vocab, dim);
  model.w1.resize(4 * dim, hidden);
  model.b1.resize(hidden);
  model.w2.resize(hidden, 3);
  model.b2.resize(3);
  Rng rng = make_rng(seed);
  fill_uniform(rng, scale, &model.embeddings);
  fill_uniform(rng, scale, &model.w1);
  fill_uniform(rng, scale, &model.b1);
  fill_uniform(rng, scale, &model.w2);
  fill_uniform(rng, scale, &model.b2);
  return model;
}

bool HsModel::finite() const {
  return embeddings.allFinite() && w1.allFinite() && b1.allFinite() &&
         w2.allFinite() && b2.allFinite();
}

bool SieModel::finite() const {
  return embeddings.allFinite() && w1.allFinite() && b1.allFinite() &&
         w2.allFinite() && b2.allFinite();
}

Eigen::MatrixXd embed(const Eigen::MatrixXd& embeddings,
                      const std::vector<int>& ids) {
  if (ids.empty()) throw std::invalid_argument("cannot embed an empty document");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()),
                      embeddings.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= embeddings.rows()) {
      throw std::out_of_range("token id outside embedding table");
    }
    out.row(static_cast<Eigen::Index>(i)) = embeddings.row(ids[i]);
  }
  return out;
}

HsCache forward_hs_from_embeddings(const HsModel& model,
                                   const Eigen::MatrixXd& inputs) {
  if (inputs.rows() < 1) {
    throw std::invalid_argument("cannot embed an empty document");
  }
  if (inputs.cols() != model.dim()) {
    throw std::invalid_argument("input width does not match embedding dim");
  }
  HsCache cache;
  cache.inputs = inputs;
  cache.pooled = inputs.colwise().mean().transpose();
  cache.hidden =
      (model.w1.transpose() * cache.pooled + model.b1).array().tanh();
  cache.logits = model.w2.transpose() * cache.hidden + model.b2;
  cache.probs = softmax(cache.logits);
  return cache;
}

HsCache forward_hs(const HsModel& model, const TokenizedDoc& doc) {
  return forward_hs_from_embeddings(model, embed(model.embeddings, doc.ids));
}

SieCache forward_sie_from_embeddings(const SieModel& model,
                                     const Eigen::MatrixXd& premise_inputs,
                                     const Eigen::MatrixXd& hypothesis_inputs) {
  if (premise_inputs.rows() < 1 || hypothesis_inputs.rows() < 1) {
    throw std::invalid_argument("cannot embed an empty document");
  }
  if (premise_inputs.cols() != model.dim() ||
      hypothesis_inputs.cols() != model.dim()) {
    throw std::invalid_argument("input width does not match embedding dim");
  }
  const int d = model.dim();
  SieCache cache;
  cache.premise_inputs = premise_inputs;
  cache.hypothesis_inputs = hypothesis_inputs;
  cache.premise_pooled = premise_inputs.colwise().mean().transpose();
  cache.hypothesis_pooled = hypothesis_inputs.colwise().mean().transpose();
  const Eigen::VectorXd& u = cache.premise_pooled;
  const Eigen::VectorXd& v = cache.hypothesis_pooled;
  cache.combined.resize(4 * d);
  cache.combined.segment(0, d) = u;
  cache.combined.segment(d, d) = v;
  cache.combined.segment(2 * d, d) = (u - v).cwiseAbs();
  cache.combined.segment(3 * d, d) = u.cwiseProduct(v);
  cache.hidden =
      (model.w1.transpose() * cache.combined + model.b1).array().tanh();
  cache.logits = model.w2.transpose() * cache.hidden + model.b2;
  cache.probs = softmax(cache.logits);
  return cache;
}

SieCache forward_sie(const SieModel& model, const TokenizedDoc& premise,
                     const TokenizedDoc& hypothesis) {
  return forward_sie_from_embeddings(model,
                                     embed(model.embeddings, premise.ids),
                                     embed(model.embeddings, hypothesis.ids));
}

int predicted_class(const Eigen::VectorXd& probs) {
  if (probs.size() == 0) throw std::invalid_argument("empty probability vector");
  int best = 0;
  for (int i = 1; i < probs.size(); ++i) {
    if (probs(i) > probs(best)) best = i;
  }
  return best;
}

Eigen::MatrixXd input_gradients_hs(const HsModel& model, const HsCache& cache,
                                   int target) {
  if (target < 0 || target >= 2) {
    throw std::out_of_range("target class out of range");
  }
  const Eigen::Index n = cache.inputs.rows();
  // Mean pooling spreads d logit / d pooled evenly across positions.
  Eigen::VectorXd dpre =
      (1.0 - cache.hidden.array().square()).matrix().cwiseProduct(
          model.w2.col(target));
  Eigen::VectorXd dpooled = model.w1 * dpre;
  Eigen::MatrixXd grads(n, model.dim());
  grads.rowwise() = (dpooled / static_cast<double>(n)).transpose();
  return grads;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> input_gradients_sie(
    const SieModel& model, const SieCache& cache, int target) {
  if (target < 0 || target >= 3) {
    throw std::out_of_range("target class out of range");
  }
  const int d = model.dim();
  const Eigen::Index n_p = cache.premise_inputs.rows();
  const Eigen::Index n_h = cache.hypothesis_inputs.rows();
  Eigen::VectorXd dpre =
      (1.0 - cache.hidden.array().square()).matrix().cwiseProduct(
          model.w2.col(target));
  Eigen::VectorXd dc = model.w1 * dpre;
  Eigen::VectorXd s =
      sign_vector(cache.premise_pooled - cache.hypothesis_pooled);
  Eigen::VectorXd du = dc.segment(0, d) +
                       s.cwiseProduct(dc.segment(2 * d, d)) +
                       cache.hypothesis_pooled.cwiseProduct(
                           dc.segment(3 * d, d));
  Eigen::VectorXd dv = dc.segment(d, d) -
                       s.cwiseProduct(dc.segment(2 * d, d)) +
                       cache.premise_pooled.cwiseProduct(
                           dc.segment(3 * d, d));
  Eigen::MatrixXd premise_grads(n_p, d);
  premise_grads.rowwise() = (du / static_cast<double>(n_p)).transpose();
  Eigen::MatrixXd hypothesis_grads(n_h, d);
  hypothesis_grads.rowwise() = (dv / static_cast<double>(n_h)).transpose();
  return {premise_grads, hypothesis_grads};
}

HsGradients HsGradients::zeros_like(const HsModel& model) {
  HsGradients g;
  g.embeddings = Eigen::MatrixXd::Zero(model.embeddings.rows(),
                                       model.embeddings.cols());
  g.w1 = Eigen::MatrixXd::Zero(model.w1.rows(), model.w1.cols());
  g.b1 = Eigen::VectorXd::Zero(model.b1.size());
  g.w2 = Eigen::MatrixXd::Zero(model.w2.rows(), model.w2.cols());
  g.b2 = Eigen::VectorXd::Zero(model.b2.size());
  return g;
}

SieGradients SieGradients::zeros_like(const SieModel& model) {
  SieGradients g;
  g.embeddings = Eigen::MatrixXd::Zero(model.embeddings.rows(),
                                       model.embeddings.cols());
  g.w1 = Eigen::MatrixXd::Zero(model.w1.rows(), model.w1.cols());
  g.b1 = Eigen::VectorXd::Zero(model.b1.size());
  g.w2 = Eigen::MatrixXd::Zero(model.w2.rows(), model.w2.cols());
  g.b2 = Eigen::VectorXd::Zero(model.b2.size());
  return g;
}

double accumulate_hs_loss_gradients(const HsModel& model,
                                    const TokenizedDoc& doc, int label,
                                    HsGradients* grads) {
  if (label < 0 || label >= 2) {
    throw std::invalid_argument("label out of range for binary model");
  }
  HsCache cache = forward_hs(model, doc);
  double loss = -std::log(std::max(cache.probs(label), 1e-300));

  Eigen::VectorXd dlogits = cache.probs;
  dlogits(label) -= 1.0;
  grads->w2 += cache.hidden * dlogits.transpose();
  grads->b2 += dlogits;
  Eigen::VectorXd dhidden = model.w2 * dlogits;
  Eigen::VectorXd dpre =
      (1.0 - cache.hidden.array().square()).matrix().cwiseProduct(dhidden);
  grads->w1 += cache.pooled * dpre.transpose();
  grads->b1 += dpre;
  Eigen::VectorXd dpooled = model.w1 * dpre;
  const double inv_n = 1.0 / static_cast<double>(doc.ids.size());
  for (int id : doc.ids) {
    grads->embeddings.row(id) += inv_n * dpooled.transpose();
  }
  return loss;
}

double accumulate_sie_loss_gradients(const SieModel& model,
                                     const SieExample& example,
                                     SieGradients* grads) {
  if (example.label < 0 || example.label >= 3) {
    throw std::invalid_argument("label out of range for three-way model");
  }
  const int d = model.dim();
  SieCache cache = forward_sie(model, example.premise, example.hypothesis);
  double loss = -std::log(std::max(cache.probs(example.label), 1e-300));

  Eigen::VectorXd dlogits = cache.probs;
  dlogits(example.label) -= 1.0;
  grads->w2 += cache.hidden * dlogits.transpose();
  grads->b2 += dlogits;
  Eigen::VectorXd dhidden = model.w2 * dlogits;
  Eigen::VectorXd dpre =
      (1.0 - cache.hidden.array().square()).matrix().cwiseProduct(dhidden);
  grads->w1 += cache.combined * dpre.transpose();
  grads->b1 += dpre;
  Eigen::VectorXd dc = model.w1 * dpre;
  Eigen::VectorXd s =
      sign_vector(cache.premise_pooled - cache.hypothesis_pooled);
  Eigen::VectorXd du = dc.segment(0, d) +
                       s.cwiseProduct(dc.segment(2 * d, d)) +
                       cache.hypothesis_pooled.cwiseProduct(
                           dc.segment(3 * d, d));
  Eigen::VectorXd dv = dc.segment(d, d) -
                       s.cwiseProduct(dc.segment(2 * d, d)) +
                       cache.premise_pooled.cwiseProduct(
                           dc.segment(3 * d, d));
  const double inv_np = 1.0 / static_cast<double>(example.premise.ids.size());
  for (int id : example.premise.ids) {
    grads->embeddings.row(id) += inv_np * du.transpose();
  }
  const double inv_nh =
      1.0 / static_cast<double>(example.hypothesis.ids.size());
  for (int id : example.hypothesis.ids) {
    grads->embeddings.row(id) += inv_nh * dv.transpose();
  }
  return loss;
}

namespace {

// One optimizer step shared by both models: v <- mu*v + g, p <- p - lr*v.
void momentum_step(Eigen::MatrixXd* param, Eigen::MatrixXd* velocity,
                   const Eigen::MatrixXd& grad, double lr) {
  *velocity = kMomentum * *velocity + grad;
  *param -= lr * *velocity;
}
void momentum_step(Eigen::VectorXd* param, Eigen::VectorXd* velocity,
                   const Eigen::VectorXd& grad, double lr) {
  *velocity = kMomentum * *velocity + grad;
  *param -= lr * *velocity;
}

template <typename Example>
void check_training_set(const std::vector<Example>& examples,
                        int distinct_needed) {
  if (examples.empty()) throw std::invalid_argument("empty training set");
  std::set<int> labels;
  for (const auto& ex : examples) labels.insert(ex.label);
  if (static_cast<int>(labels.size()) < distinct_needed) {
    throw std::runtime_error(
        "training set must contain at least two distinct labels");
  }
}

}  // namespace

HsModel train_hs(const std::vector<HsExample>& examples, int vocab_size,
                 int dim, int hidden, const TrainConfig& config,
                 Metrics* train_metrics) {
  check_config(config);
  check_training_set(examples, 2);
  HsModel model = HsModel::init(vocab_size, dim, hidden,
                                derive_seed(config.seed, kHsInitStage), config.init_scale);
  HsGradients velocity = HsGradients::zeros_like(model);
  Rng shuffle_rng = make_rng(derive_seed(config.seed, kHsShuffleStage));
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_vector(order, shuffle_rng);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      std::size_t end = std::min(
          order.size(), start + static_cast<std::size_t>(config.batch_size));
      HsGradients grads = HsGradients::zeros_like(model);
      double batch_loss = 0.0;
      for (std::size_t i = start; i < end; ++i) {
        const HsExample& ex = examples[order[i]];
        batch_loss +=
            accumulate_hs_loss_gradients(model, ex.doc, ex.label, &grads);
      }
      const double inv_b = 1.0 / static_cast<double>(end - start);
      if (!std::isfinite(batch_loss)) {
        throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                 std::to_string(epoch));
      }
      grads.embeddings = inv_b * grads.embeddings + 2.0 * config.l2 * model.embeddings;
      grads.w1 = inv_b * grads.w1 + 2.0 * config.l2 * model.w1;
      grads.b1 = inv_b * grads.b1 + 2.0 * config.l2 * model.b1;
      grads.w2 = inv_b * grads.w2 + 2.0 * config.l2 * model.w2;
      grads.b2 = inv_b * grads.b2 + 2.0 * config.l2 * model.b2;
      momentum_step(&model.embeddings, &velocity.embeddings, grads.embeddings,
                    config.learning_rate);
      momentum_step(&model.w1, &velocity.w1, grads.w1, config.learning_rate);
      momentum_step(&model.b1, &velocity.b1, grads.b1, config.learning_rate);
      momentum_step(&model.w2, &velocity.w2, grads.w2, config.learning_rate);
      momentum_step(&model.b2, &velocity.b2, grads.b2, config.learning_rate);
    }
    if (!model.finite()) {
      throw std::runtime_error(
          "training diverged: non-finite parameters at epoch " +
          std::to_string(epoch));
    }
  }
  if (train_metrics != nullptr) *train_metrics = evaluate_hs(model, examples);
  return model;
}

SieModel train_sie(const std::vector<SieExample>& examples, int vocab_size,
                   int dim, int hidden, const TrainConfig& config,
                   Metrics* train_metrics) {
  check_config(config);
  check_training_set(examples, 2);
  SieModel model = SieModel::init(vocab_size, dim, hidden,
                                  derive_seed(config.seed, kSieInitStage),
                                  config.init_scale);
  SieGradients velocity = SieGradients::zeros_like(model);
  Rng shuffle_rng = make_rng(derive_seed(config.seed, kSieShuffleStage));
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_vector(order, shuffle_rng);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      std::size_t end = std::min(
          order.size(), start + static_cast<std::size_t>(config.batch_size));
      SieGradients grads = SieGradients::zeros_like(model);
      double batch_loss = 0.0;
      for (std::size_t i = start; i < end; ++i) {
        batch_loss +=
            accumulate_sie_loss_gradients(model, examples[order[i]], &grads);
      }
      const double inv_b = 1.0 / static_cast<double>(end - start);
      if (!std::isfinite(batch_loss)) {
        throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                 std::to_string(epoch));
      }
      grads.embeddings = inv_b * grads.embeddings + 2.0 * config.l2 * model.embeddings;
      grads.w1 = inv_b * grads.w1 + 2.0 * config.l2 * model.w1;
      grads.b1 = inv_b * grads.b1 + 2.0 * config.l2 * model.b1;
      grads.w2 = inv_b * grads.w2 + 2.0 * config.l2 * model.w2;
      grads.b2 = inv_b * grads.b2 + 2.0 * config.l2 * model.b2;
      momentum_step(&model.embeddings, &velocity.embeddings, grads.embeddings,
                    config.learning_rate);
      momentum_step(&model.w1, &velocity.w1, grads.w1, config.learning_rate);
      momentum_step(&model.b1, &velocity.b1, grads.b1, config.learning_rate);
      momentum_step(&model.w2, &velocity.w2, grads.w2, config.learning_rate);
      momentum_step(&model.b2, &velocity.b2, grads.b2, config.learning_rate);
    }
    if (!model.finite()) {
      throw std::runtime_error(
          "training diverged: non-finite parameters at epoch " +
          std::to_string(epoch));
    }
  }
  if (train_metrics != nullptr) *train_metrics = evaluate_sie(model, examples);
  return model;
}

int predict_hs(const HsModel& model, const TokenizedDoc& doc) {
  return predicted_class(forward_hs(model, doc).probs);
}

int predict_sie(const SieModel& model, const TokenizedDoc& premise,
                const TokenizedDoc& hypothesis) {
  return predicted_class(forward_sie(model, premise, hypothesis).probs);
}

Metrics evaluate_hs(const HsModel& model, const std::vector<HsExample>& data) {
  if (data.empty()) throw std::invalid_argument("empty evaluation set");
  std::vector<std::vector<std::int64_t>> confusion(2,
                                                   std::vector<std::int64_t>(2, 0));
  for (const auto& ex : data) {
    if (ex.label < 0 || ex.label >= 2) {
      throw std::invalid_argument("label out of range for binary model");
    }
    confusion[ex.label][predict_hs(model, ex.doc)] += 1;
  }
  return metrics_from_confusion(confusion);
}

Metrics evaluate_sie(const SieModel& model,
                     const std::vector<SieExample>& data) {
  if (data.empty()) throw std::invalid_argument("empty evaluation set");
  std::vector<std::vector<std::int64_t>> confusion(3,
                                                   std::vector<std::int64_t>(3, 0));
  for (const auto& ex : data) {
    if (ex.label < 0 || ex.label >= 3) {
      throw std::invalid_argument("label out of range for three-way model");
    }
    confusion[ex.label][predict_sie(model, ex.premise, ex.hypothesis)] += 1;
  }
  return metrics_from_confusion(confusion);
}

}  // namespace tokenaudit
