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

#include <algorithm>
#include <map>
#include <random>

#include "cdcgcn/analysis.hpp"

namespace cdcgcn {

std::vector<Interaction> build_debiased_test(const InteractionDataset& dataset,
                                             const CommunityAssignment& communities,
                                             std::uint64_t seed) {
  const auto by_user = InteractionDataset::group_by_user(dataset.test, dataset.num_users);
  std::vector<Interaction> kept;
  for (Index u = 0; u < dataset.num_users; ++u) {
    if (by_user[u].empty()) continue;
    std::map<Index, std::vector<Index>> by_community;
    for (Index i : by_user[u]) by_community[communities.item_label(i)].push_back(i);
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(u)));
    for (const auto& [_, items] : by_community) {
      std::uniform_int_distribution<std::size_t> pick(0, items.size() - 1);
      kept.push_back({u, items[pick(rng)]});
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace cdcgcn
