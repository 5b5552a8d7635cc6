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

#include "cdcgcn/community.hpp"
#include "cdcgcn/ranking.hpp"

namespace cdcgcn {

struct AccuracyMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double ndcg = 0.0;
  std::size_t hits = 0;
  std::size_t precision_users = 0;  // users in the precision mean
  std::size_t eval_users = 0;       // users with a non-empty test set
};

// P@k averages over users with a non-empty test set, as do R@k and N@k
// (binary relevance, IDCG truncated at min(k, |test_u|)). Only the first k
// entries of each list are used.
AccuracyMetrics precision_recall_ndcg(std::span<const RankedList> lists,
                                      const std::vector<std::vector<Index>>& test_by_user, int k);

// Share of recommended items that sit in the user's own community, over |U| * k.
double ilfbi_at_k(std::span<const RankedList> lists, const CommunityAssignment& communities,
                  int k);

enum class CgiAggregation { kPerUser, kPooled };

// 1 - 2 sum_{i<n} S_i / (n S_n) - 1/n over ascending community counts, with n
// the total number of communities (zero counts included).
double cgi_from_counts(std::vector<Index> counts);

double cgi_at_k(std::span<const RankedList> lists, const CommunityAssignment& communities, int k,
                CgiAggregation aggregation = CgiAggregation::kPerUser);

}  // namespace cdcgcn
