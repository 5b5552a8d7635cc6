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

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cdcgcn/adam.hpp"
#include "cdcgcn/community.hpp"
#include "cdcgcn/embedding_model.hpp"

namespace cdcgcn {

struct Triplet {
  Index user = 0;
  Index pos = 0;
  Index neg = 0;
};

struct TrainingConfig {
  BaseKind kind = BaseKind::kLightGCN;
  int dim = 64;
  int layers = 3;
  double learning_rate = 1e-3;
  double l2_base = 1e-3;
  double l2_disc = 1e-7;
  int batch_size = 2048;
  int epochs = 1000;
  std::uint64_t seed = 42;
  double alpha = 0.0;  // community-enhanced negative sampling probability
  double beta = 0.0;   // adversarial strength (GRL coefficient)
  int eval_every = 1;
  int patience = 20;  // evaluations without validation Recall@20 improvement

  void validate() const;
};

// Extra terms layered on top of plain BPR by the baselines. The default value
// is plain BPR.
struct PairwiseObjective {
  std::span<const double> triplet_weights;  // IPS weight per triplet, empty = 1
  double fairness_gamma = 0.0;
  const CommunityAssignment* communities = nullptr;  // required when gamma != 0
};

struct BprLoss {
  double ranking = 0.0;   // -sum w ln sigma(s_ui - s_uj)
  double fairness = 0.0;  // -sum chi * gamma * ||e_i - e_j||
  double l2 = 0.0;        // l2 * sum over triplets of squared raw rows
  double total() const { return ranking + fairness + l2; }
};

// Loss on e^base; adds dL/de^base into grad_base when non-null.
BprLoss pairwise_loss(const NodeTables& base, std::span<const Triplet> batch,
                      const PairwiseObjective& objective, NodeTables* grad_base);

// l2 * (||e_u||^2 + ||e_i||^2 + ||e_j||^2) summed over the batch, on raw rows.
double l2_penalty(const NodeTables& raw, std::span<const Triplet> batch, double l2,
                  NodeTables* grad_raw);

struct BprGradient {
  BprLoss loss;
  NodeTables raw;  // gradient on the raw tables
};

BprGradient bpr_gradient(const EmbeddingModel& model, const BipartiteGraph& graph,
                         std::span<const Triplet> batch, double l2,
                         const PairwiseObjective& objective = {});

// One Adam step on the raw tables. Returns the batch loss (before the update).
BprLoss bpr_step(EmbeddingModel& model, AdamState& adam, const BipartiteGraph& graph,
                 std::span<const Triplet> batch, const TrainingConfig& config,
                 const PairwiseObjective& objective = {});

}  // namespace cdcgcn
