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

#include <span>
#include <vector>

#include "cdcgcn/ranking.hpp"
#include "cdcgcn/trainer.hpp"

namespace cdcgcn {

struct BaselineConfig {
  double lambda = 0.5;  // MMR relevance/diversity trade-off
  double gamma = 0.01;  // fairness strength
  double delta = 0.5;   // IPS propensity of intra-community interactions
  int pool_size = 1000;

  void validate() const;
};

// Greedy community-balanced re-ranking of a candidate pool. `scores` holds
// the raw score of each candidate. Sets *truncated when k exceeds the pool.
RankedList mmr_rerank(Index user, std::span<const Index> candidates,
                      std::span<const double> scores, const CommunityAssignment& communities,
                      double lambda, int k, bool* truncated = nullptr);

std::vector<RankedList> mmr_rank(const Scorer& scorer, const BipartiteGraph& train,
                                 const CommunityAssignment& communities, double lambda, int k,
                                 int pool_size);

// Per-triplet weight 1 when C_u = C_i, otherwise 1/delta.
std::vector<double> ips_weights(std::span<const Triplet> batch,
                                const CommunityAssignment& communities, double delta);

ObjectiveFactory fairness_objective(const CommunityAssignment& communities, double gamma);
ObjectiveFactory ips_objective(const CommunityAssignment& communities, double delta);

BprLoss fairness_bpr_step(EmbeddingModel& model, AdamState& adam, const BipartiteGraph& graph,
                          std::span<const Triplet> batch, const CommunityAssignment& communities,
                          double gamma, const TrainingConfig& config);

BprLoss ips_bpr_step(EmbeddingModel& model, AdamState& adam, const BipartiteGraph& graph,
                     std::span<const Triplet> batch, const CommunityAssignment& communities,
                     double delta, const TrainingConfig& config);

}  // namespace cdcgcn
