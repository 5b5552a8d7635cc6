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

#include "cdcgcn/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace cdcgcn {

AccuracyMetrics precision_recall_ndcg(std::span<const RankedList> lists,
                                      const std::vector<std::vector<Index>>& test_by_user, int k) {
  AccuracyMetrics m;
  double p_sum = 0.0, r_sum = 0.0, n_sum = 0.0;
  for (const auto& list : lists) {
    const auto& truth = test_by_user[list.user];
    if (truth.empty()) continue;
    const std::size_t depth = std::min<std::size_t>(list.items.size(), static_cast<std::size_t>(k));
    std::size_t hits = 0;
    double dcg = 0.0;
    for (std::size_t r = 0; r < depth; ++r) {
      if (std::binary_search(truth.begin(), truth.end(), list.items[r])) {
        ++hits;
        dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
      }
    }
    double idcg = 0.0;
    const std::size_t ideal = std::min<std::size_t>(truth.size(), static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < ideal; ++r) idcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    m.hits += hits;
    ++m.eval_users;
    p_sum += static_cast<double>(hits) / k;
    r_sum += static_cast<double>(hits) / static_cast<double>(truth.size());
    n_sum += dcg / idcg;
  }
  m.precision_users = m.eval_users;
  if (m.eval_users > 0) {
    const auto users = static_cast<double>(m.eval_users);
    m.precision = p_sum / users;
    m.recall = r_sum / users;
    m.ndcg = n_sum / users;
  }
  return m;
}

double ilfbi_at_k(std::span<const RankedList> lists, const CommunityAssignment& communities,
                  int k) {
  if (lists.empty() || k <= 0) return 0.0;
  std::size_t intra = 0;
  for (const auto& list : lists) {
    const Index cu = communities.user_label(list.user);
    const std::size_t depth = std::min<std::size_t>(list.items.size(), static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < depth; ++r) {
      intra += communities.item_label(list.items[r]) == cu ? 1 : 0;
    }
  }
  return static_cast<double>(intra) / (static_cast<double>(lists.size()) * k);
}

double cgi_from_counts(std::vector<Index> counts) {
  const auto n = static_cast<double>(counts.size());
  if (counts.size() <= 1) return 0.0;
  std::sort(counts.begin(), counts.end());
  double running = 0.0;
  double partial_sums = 0.0;  // S_1 + ... + S_{n-1}
  for (std::size_t c = 0; c + 1 < counts.size(); ++c) {
    running += counts[c];
    partial_sums += running;
  }
  const double total = running + counts.back();
  if (total <= 0.0) return 0.0;
  return 1.0 - 2.0 * partial_sums / (n * total) - 1.0 / n;
}

double cgi_at_k(std::span<const RankedList> lists, const CommunityAssignment& communities, int k,
                CgiAggregation aggregation) {
  if (lists.empty()) return 0.0;
  const auto n = static_cast<std::size_t>(communities.num_communities);
  std::vector<Index> pooled(n, 0);
  double sum = 0.0;
  for (const auto& list : lists) {
    std::vector<Index> counts(n, 0);
    const std::size_t depth = std::min<std::size_t>(list.items.size(), static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < depth; ++r) ++counts[communities.item_label(list.items[r])];
    for (std::size_t c = 0; c < n; ++c) pooled[c] += counts[c];
    if (aggregation == CgiAggregation::kPerUser) sum += cgi_from_counts(std::move(counts));
  }
  if (aggregation == CgiAggregation::kPooled) return cgi_from_counts(std::move(pooled));
  return sum / static_cast<double>(lists.size());
}

}  // namespace cdcgcn
