// Copyright 2026 The cdcgcn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdcgcn/bpr.hpp"

#include <cmath>

#include <fmt/core.h>

namespace cdcgcn {

void TrainingConfig::validate() const {
  if (dim <= 0) throw UsageError("embedding dim must be positive");
  if (layers < 0) throw UsageError("layers must be non-negative");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError(fmt::format("learning_rate={} must be positive and finite", learning_rate));
  }
  if (!(l2_base >= 0.0) || !(l2_disc >= 0.0)) {
    throw UsageError("l2 coefficients must be non-negative");
  }
  if (batch_size <= 0) throw UsageError("batch_size must be positive");
  if (epochs < 0) throw UsageError("epochs must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError(fmt::format("alpha={} outside [0,1]", alpha));
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw UsageError(fmt::format("beta={} must be >= 0", beta));
  if (eval_every <= 0) throw UsageError("eval_every must be positive");
  if (patience <= 0) throw UsageError("patience must be positive");
}

namespace {

// -ln sigma(x), evaluated without overflow.
double neg_log_sigmoid(double x) {
  return x > 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

BprLoss pairwise_loss(const NodeTables& base, std::span<const Triplet> batch,
                      const PairwiseObjective& objective, NodeTables* grad_base) {
  if (objective.fairness_gamma != 0.0 && objective.communities == nullptr) {
    throw UsageError("fairness term needs community labels");
  }
  if (!objective.triplet_weights.empty() && objective.triplet_weights.size() != batch.size()) {
    throw UsageError("triplet weight count does not match the batch");
  }
  BprLoss loss;
  for (std::size_t t = 0; t < batch.size(); ++t) {
    const auto& [u, i, j] = batch[t];
    const double w = objective.triplet_weights.empty() ? 1.0 : objective.triplet_weights[t];
    const auto eu = base.user.row(u);
    const auto ei = base.item.row(i);
    const auto ej = base.item.row(j);
    const double x = eu.dot(ei) - eu.dot(ej);
    loss.ranking += w * neg_log_sigmoid(x);
    if (grad_base) {
      const double g = -w * sigmoid(-x);
      grad_base->user.row(u).noalias() += g * (ei - ej);
      grad_base->item.row(i).noalias() += g * eu;
      grad_base->item.row(j).noalias() -= g * eu;
    }
    if (objective.communities) {
      const auto& c = *objective.communities;
      const double chi = c.item_label(i) == c.item_label(j) ? 1.0 : -1.0;
      const Eigen::RowVectorXd diff = ei - ej;
      const double dist = diff.norm();
      loss.fairness -= chi * objective.fairness_gamma * dist;
      if (grad_base && dist > 0.0) {
        const double g = -chi * objective.fairness_gamma / dist;
        grad_base->item.row(i).noalias() += g * diff;
        grad_base->item.row(j).noalias() -= g * diff;
      }
    }
  }
  return loss;
}

double l2_penalty(const NodeTables& raw, std::span<const Triplet> batch, double l2,
                  NodeTables* grad_raw) {
  double total = 0.0;
  for (const auto& [u, i, j] : batch) {
    total += raw.user.row(u).squaredNorm() + raw.item.row(i).squaredNorm() +
             raw.item.row(j).squaredNorm();
    if (grad_raw) {
      grad_raw->user.row(u).noalias() += 2.0 * l2 * raw.user.row(u);
      grad_raw->item.row(i).noalias() += 2.0 * l2 * raw.item.row(i);
      grad_raw->item.row(j).noalias() += 2.0 * l2 * raw.item.row(j);
    }
  }
  return l2 * total;
}

BprGradient bpr_gradient(const EmbeddingModel& model, const BipartiteGraph& graph,
                         std::span<const Triplet> batch, double l2,
                         const PairwiseObjective& objective) {
  const NodeTables base = base_embeddings(model, graph);
  NodeTables grad_base = NodeTables::zeros(model.num_users(), model.num_items(), model.dim());
  BprGradient out;
  out.loss = pairwise_loss(base, batch, objective, &grad_base);
  out.raw = base_backward(model, graph, grad_base);
  out.loss.l2 = l2_penalty(model.tables, batch, l2, &out.raw);
  return out;
}

BprLoss bpr_step(EmbeddingModel& model, AdamState& adam, const BipartiteGraph& graph,
                 std::span<const Triplet> batch, const TrainingConfig& config,
                 const PairwiseObjective& objective) {
  auto grad = bpr_gradient(model, graph, batch, config.l2_base, objective);
  if (!std::isfinite(grad.loss.total())) {
    throw NumericError(fmt::format("non-finite BPR loss {} (user norm {:.6g}, item norm {:.6g})",
                                   grad.loss.total(), model.tables.user.norm(),
                                   model.tables.item.norm()));
  }
  adam.begin_step();
  adam.update(0, model.tables.user, grad.raw.user);
  adam.update(1, model.tables.item, grad.raw.item);
  check_finite(model, "bpr_step");
  return grad.loss;
}

}  // namespace cdcgcn
