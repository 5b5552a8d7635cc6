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

#include "cdcgcn/cgcn.hpp"

#include <cmath>

#include <fmt/core.h>

namespace cdcgcn {

EdgeCoefficients cgcn_coefficients(const BipartiteGraph& graph,
                                   const CompatibilityWeights& weights) {
  for (Index u = 0; u < graph.num_users(); ++u) {
    if (graph.user_degree(u) > 0 && !(weights.user_norm[u] > 0.0)) {
      throw DataError(fmt::format("user {} has neighbors but compatibility norm {}", u,
                                  weights.user_norm[u]));
    }
  }
  for (Index i = 0; i < graph.num_items(); ++i) {
    if (graph.item_degree(i) > 0 && !(weights.item_norm[i] > 0.0)) {
      throw DataError(fmt::format("item {} has neighbors but compatibility norm {}", i,
                                  weights.item_norm[i]));
    }
  }
  EdgeCoefficients coef;
  coef.to_user.resize(graph.num_edges());
  coef.to_item.resize(graph.num_edges());
  for (Index u = 0; u < graph.num_users(); ++u) {
    const auto items = graph.user_neighbors(u);
    const std::size_t base = graph.user_edge_begin(u);
    for (std::size_t k = 0; k < items.size(); ++k) {
      const std::size_t e = base + k;
      const double norm = std::sqrt(weights.user_norm[u]) * std::sqrt(weights.item_norm[items[k]]);
      coef.to_user[e] = weights.user_side[e] / norm;
      coef.to_item[e] = weights.item_side[e] / norm;
    }
  }
  return coef;
}

CommunityEmbeddings cgcn_propagate(const NodeTables& e_base, const BipartiteGraph& graph,
                                   const EdgeCoefficients& coef, int depth, bool mean) {
  CommunityEmbeddings out;
  out.depth = depth;
  const double scale = mean ? 1.0 / static_cast<double>(depth + 1) : 1.0;
  out.comm = propagate_sum(graph, coef, e_base, depth, scale, &out.layers);
  return out;
}

NodeTables cgcn_backward(const NodeTables& grad_comm, const BipartiteGraph& graph,
                         const EdgeCoefficients& coef, int depth, bool mean) {
  const double scale = mean ? 1.0 / static_cast<double>(depth + 1) : 1.0;
  return propagate_sum(graph, coef.transposed(), grad_comm, depth, scale);
}

NodeTables grl_backward(const NodeTables& upstream, double beta) {
  NodeTables out = upstream;
  out *= -beta;
  return out;
}

}  // namespace cdcgcn
