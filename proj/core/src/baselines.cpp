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

#include "cdcgcn/baselines.hpp"

#include <cmath>

#include <fmt/core.h>

namespace cdcgcn {

void BaselineConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError(fmt::format("lambda={} outside [0,1]", lambda));
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw UsageError(fmt::format("gamma={} must be >= 0", gamma));
  if (!(delta > 0.0 && delta <= 1.0)) throw UsageError(fmt::format("delta={} outside (0,1]", delta));
  if (pool_size <= 0) throw UsageError("pool_size must be positive");
}

RankedList mmr_rerank(Index user, std::span<const Index> candidates,
                      std::span<const double> scores, const CommunityAssignment& communities,
                      double lambda, int k, bool* truncated) {
  if (candidates.size() != scores.size()) throw UsageError("one score per candidate required");
  const std::size_t take = std::min(candidates.size(), static_cast<std::size_t>(std::max(k, 0)));
  if (truncated) *truncated = take < static_cast<std::size_t>(std::max(k, 0));
  std::vector<std::size_t> per_community(static_cast<std::size_t>(communities.num_communities), 0);
  std::vector<bool> used(candidates.size(), false);
  RankedList list;
  list.user = user;
  for (std::size_t step = 0; step < take; ++step) {
    std::size_t best = candidates.size();
    double best_value = 0.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      double value = scores[c];
      if (step > 0) {
        const double share =
            static_cast<double>(per_community[communities.item_label(candidates[c])]) /
            static_cast<double>(step);
        value = lambda * scores[c] - (1.0 - lambda) * share;
      }
      const bool better =
          best == candidates.size() || value > best_value ||
          (value == best_value && (scores[c] > scores[best] ||
                                   (scores[c] == scores[best] && candidates[c] < candidates[best])));
      if (better) {
        best = c;
        best_value = value;
      }
    }
    used[best] = true;
    ++per_community[communities.item_label(candidates[best])];
    list.items.push_back(candidates[best]);
    list.scores.push_back(scores[best]);
  }
  return list;
}

std::vector<RankedList> mmr_rank(const Scorer& scorer, const BipartiteGraph& train,
                                 const CommunityAssignment& communities, double lambda, int k,
                                 int pool_size) {
  auto pools = rank_topk(scorer, train, pool_size);
  std::vector<RankedList> lists;
  lists.reserve(pools.size());
  for (const auto& pool : pools) {
    lists.push_back(mmr_rerank(pool.user, pool.items, pool.scores, communities, lambda, k));
  }
  return lists;
}

std::vector<double> ips_weights(std::span<const Triplet> batch,
                                const CommunityAssignment& communities, double delta) {
  std::vector<double> weights;
  weights.reserve(batch.size());
  for (const auto& t : batch) {
    const bool intra = communities.user_label(t.user) == communities.item_label(t.pos);
    weights.push_back(intra ? 1.0 : 1.0 / delta);
  }
  return weights;
}

ObjectiveFactory fairness_objective(const CommunityAssignment& communities, double gamma) {
  return [&communities, gamma](std::span<const Triplet>, std::vector<double>&) {
    PairwiseObjective objective;
    objective.fairness_gamma = gamma;
    objective.communities = gamma != 0.0 ? &communities : nullptr;
    return objective;
  };
}

ObjectiveFactory ips_objective(const CommunityAssignment& communities, double delta) {
  return [&communities, delta](std::span<const Triplet> batch, std::vector<double>& weights) {
    weights = ips_weights(batch, communities, delta);
    PairwiseObjective objective;
    objective.triplet_weights = weights;
    return objective;
  };
}

BprLoss fairness_bpr_step(EmbeddingModel& model, AdamState& adam, const BipartiteGraph& graph,
                          std::span<const Triplet> batch, const CommunityAssignment& communities,
                          double gamma, const TrainingConfig& config) {
  std::vector<double> scratch;
  return bpr_step(model, adam, graph, batch, config,
                  fairness_objective(communities, gamma)(batch, scratch));
}

BprLoss ips_bpr_step(EmbeddingModel& model, AdamState& adam, const BipartiteGraph& graph,
                     std::span<const Triplet> batch, const CommunityAssignment& communities,
                     double delta, const TrainingConfig& config) {
  std::vector<double> weights;
  return bpr_step(model, adam, graph, batch, config,
                  ips_objective(communities, delta)(batch, weights));
}

}  // namespace cdcgcn
