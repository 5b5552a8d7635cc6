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

#include "cdcgcn/sampler.hpp"

#include <numeric>

#include <fmt/core.h>

namespace cdcgcn {

NegativeSampler::NegativeSampler(const BipartiteGraph& graph,
                                 const CommunityAssignment* communities)
    : graph_(&graph), communities_(communities) {
  all_items_.resize(static_cast<std::size_t>(graph.num_items()));
  std::iota(all_items_.begin(), all_items_.end(), 0);
  if (!communities) return;
  items_by_community_.resize(static_cast<std::size_t>(communities->num_communities));
  for (Index i = 0; i < graph.num_items(); ++i) {
    items_by_community_[communities->item_label(i)].push_back(i);
  }
  intra_interacted_.resize(static_cast<std::size_t>(graph.num_users()));
  for (Index u = 0; u < graph.num_users(); ++u) {
    const Index cu = communities->user_label(u);
    for (Index i : graph.user_neighbors(u)) {
      if (communities->item_label(i) == cu) ++intra_interacted_[u];
    }
  }
}

std::size_t NegativeSampler::global_pool_size(Index user) const {
  return static_cast<std::size_t>(graph_->num_items() - graph_->user_degree(user));
}

std::size_t NegativeSampler::intra_pool_size(Index user) const {
  if (!communities_) return 0;
  return items_by_community_[communities_->user_label(user)].size() - intra_interacted_[user];
}

Index NegativeSampler::draw_from(std::span<const Index> candidates, std::size_t pool_size,
                                 Index user, std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const Index item = candidates[pick(rng)];
    if (!graph_->has_edge(user, item)) return item;
  }
  std::uniform_int_distribution<std::size_t> slot(0, pool_size - 1);
  std::size_t target = slot(rng);
  for (Index item : candidates) {
    if (graph_->has_edge(user, item)) continue;
    if (target-- == 0) return item;
  }
  throw std::logic_error("negative pool size out of sync with adjacency");
}

Index NegativeSampler::sample(Index user, double alpha, std::mt19937_64& rng) const {
  const std::size_t global = global_pool_size(user);
  if (global == 0) {
    throw DataError(fmt::format("user {} interacted with every item; no negative exists", user));
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double x = coin(rng);
  if (x < alpha) {
    if (!communities_) throw UsageError("community sampling needs community labels");
    const std::size_t intra = intra_pool_size(user);
    if (intra > 0) {
      return draw_from(items_by_community_[communities_->user_label(user)], intra, user, rng);
    }
  }
  return draw_from(all_items_, global, user, rng);
}

}  // namespace cdcgcn
