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

#include <vector>

#include "cdcgcn/community.hpp"
#include "cdcgcn/propagation.hpp"

namespace cdcgcn {

// Community-reweighted propagation coefficients:
//   to_user[(u,i)] = h^i_u / (sqrt(user_norm[u]) sqrt(item_norm[i]))
//   to_item[(u,i)] = h^u_i / (sqrt(item_norm[i]) sqrt(user_norm[u]))
// Throws DataError when a node with neighbors has a non-positive norm.
EdgeCoefficients cgcn_coefficients(const BipartiteGraph& graph,
                                   const CompatibilityWeights& weights);

struct CommunityEmbeddings {
  std::vector<NodeTables> layers;  // e^(0) .. e^(L)
  NodeTables comm;                 // sum (or mean) over layers
  int depth = 0;
};

// Parameter-free; e^(0) is a copy of e_base.
CommunityEmbeddings cgcn_propagate(const NodeTables& e_base, const BipartiteGraph& graph,
                                   const EdgeCoefficients& coef, int depth, bool mean = false);

// dL/de_base given dL/de_comm.
NodeTables cgcn_backward(const NodeTables& grad_comm, const BipartiteGraph& graph,
                         const EdgeCoefficients& coef, int depth, bool mean = false);

// Gradient reversal: identity forward, -beta * upstream backward.
template <typename T>
T grl_forward(const T& x) {
  return x;
}
NodeTables grl_backward(const NodeTables& upstream, double beta);

}  // namespace cdcgcn
