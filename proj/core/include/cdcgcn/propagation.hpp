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

#include "cdcgcn/dataset.hpp"
#include "cdcgcn/embedding_model.hpp"

namespace cdcgcn {

// Per-edge coefficients of a linear bipartite propagation step, indexed by
// BipartiteGraph edge id:
//   out_u = sum_{e=(u,i)} to_user[e] * in_i
//   out_i = sum_{e=(u,i)} to_item[e] * in_u
struct EdgeCoefficients {
  std::vector<double> to_user;
  std::vector<double> to_item;

  // Coefficients of the adjoint step.
  EdgeCoefficients transposed() const { return {to_item, to_user}; }
};

// 1 / sqrt(|N_u| |N_i|) in both directions.
EdgeCoefficients lightgcn_coefficients(const BipartiteGraph& graph);

void propagate_step(const BipartiteGraph& graph, const EdgeCoefficients& coef,
                    const NodeTables& in, NodeTables& out);

// scale * sum_{k=0}^{layers} P^k x0. Individual layers are appended to
// `layers_out` when given (layer 0 first).
NodeTables propagate_sum(const BipartiteGraph& graph, const EdgeCoefficients& coef,
                         const NodeTables& x0, int layers, double scale,
                         std::vector<NodeTables>* layers_out = nullptr);

// LightGCN e^base = mean of layers 0..L. Zero-degree nodes keep their layer-0
// row. Requires model.kind == kLightGCN.
NodeTables lightgcn_propagate(const EmbeddingModel& model, const BipartiteGraph& graph);
NodeTables lightgcn_propagate(const NodeTables& layer0, const BipartiteGraph& graph, int layers);

// Adjoint of lightgcn_propagate (the normalized adjacency is symmetric).
NodeTables lightgcn_backward(const NodeTables& grad_out, const BipartiteGraph& graph, int layers);

}  // namespace cdcgcn
