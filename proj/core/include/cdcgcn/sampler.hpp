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

#include <random>
#include <vector>

#include "cdcgcn/community.hpp"

namespace cdcgcn {

// Community-enhanced negative sampling: with probability alpha draw uniformly
// from the user's non-interacted same-community items, otherwise uniformly
// from all non-interacted items. An empty intra-community pool falls back to
// the global pool.
class NegativeSampler {
 public:
  // `communities` may be null when only alpha = 0 is used.
  NegativeSampler(const BipartiteGraph& graph, const CommunityAssignment* communities);

  Index sample(Index user, double alpha, std::mt19937_64& rng) const;

  std::size_t global_pool_size(Index user) const;
  std::size_t intra_pool_size(Index user) const;

  static constexpr int kMaxRejections = 100;

 private:
  Index draw_from(std::span<const Index> candidates, std::size_t pool_size, Index user,
                  std::mt19937_64& rng) const;

  const BipartiteGraph* graph_;
  const CommunityAssignment* communities_;
  std::vector<Index> all_items_;
  std::vector<std::vector<Index>> items_by_community_;
  std::vector<std::size_t> intra_interacted_;  // |{i in N_u : C_i = C_u}|
};

}  // namespace cdcgcn
