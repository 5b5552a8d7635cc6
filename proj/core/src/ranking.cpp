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

#include "cdcgcn/ranking.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace cdcgcn {

void EmbeddingScorer::score_user(Index user, std::span<double> out) const {
  Eigen::Map<Eigen::VectorXd> scores(out.data(), static_cast<Eigen::Index>(out.size()));
  scores.noalias() = base_.item * base_.user.row(user).transpose();
}

RankedList topk_for_user(Index user, std::span<const double> scores, const BipartiteGraph& train,
                         int k) {
  const Index n = static_cast<Index>(scores.size());
  std::vector<Index> candidates;
  candidates.reserve(static_cast<std::size_t>(n));
  const auto seen = train.user_neighbors(user);
  auto next_seen = seen.begin();
  for (Index i = 0; i < n; ++i) {
    while (next_seen != seen.end() && *next_seen < i) ++next_seen;
    if (next_seen != seen.end() && *next_seen == i) continue;
    candidates.push_back(i);
  }
  const auto better = [&](Index a, Index b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  };
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)),
                                                 candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), better);
  RankedList list;
  list.user = user;
  list.items.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take));
  list.scores.reserve(take);
  for (Index i : list.items) list.scores.push_back(scores[i]);
  return list;
}

std::vector<RankedList> rank_topk(const Scorer& scorer, const BipartiteGraph& train, int k,
                                  bool* truncated) {
  std::vector<RankedList> lists;
  lists.reserve(static_cast<std::size_t>(scorer.num_users()));
  std::vector<double> scores(static_cast<std::size_t>(scorer.num_items()));
  bool short_list = false;
  for (Index u = 0; u < scorer.num_users(); ++u) {
    scorer.score_user(u, scores);
    lists.push_back(topk_for_user(u, scores, train, k));
    short_list |= lists.back().items.size() < static_cast<std::size_t>(k);
  }
  if (truncated) *truncated = short_list;
  return lists;
}

}  // namespace cdcgcn
