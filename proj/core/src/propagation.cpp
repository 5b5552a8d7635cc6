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

#include "cdcgcn/propagation.hpp"

#include <cassert>
#include <cmath>

#include <fmt/core.h>

namespace cdcgcn {

EdgeCoefficients lightgcn_coefficients(const BipartiteGraph& graph) {
  EdgeCoefficients coef;
  coef.to_user.resize(graph.num_edges());
  for (Index u = 0; u < graph.num_users(); ++u) {
    const auto items = graph.user_neighbors(u);
    const std::size_t base = graph.user_edge_begin(u);
    for (std::size_t k = 0; k < items.size(); ++k) {
      coef.to_user[base + k] =
          1.0 / std::sqrt(static_cast<double>(graph.user_degree(u)) * graph.item_degree(items[k]));
    }
  }
  coef.to_item = coef.to_user;
  return coef;
}

void propagate_step(const BipartiteGraph& graph, const EdgeCoefficients& coef,
                    const NodeTables& in, NodeTables& out) {
  out.user.setZero(in.user.rows(), in.user.cols());
  out.item.setZero(in.item.rows(), in.item.cols());
  for (Index u = 0; u < graph.num_users(); ++u) {
    const auto items = graph.user_neighbors(u);
    const std::size_t base = graph.user_edge_begin(u);
    auto row = out.user.row(u);
    for (std::size_t k = 0; k < items.size(); ++k) {
      row.noalias() += coef.to_user[base + k] * in.item.row(items[k]);
    }
  }
  for (Index i = 0; i < graph.num_items(); ++i) {
    const auto users = graph.item_neighbors(i);
    const auto edges = graph.item_edges(i);
    auto row = out.item.row(i);
    for (std::size_t k = 0; k < users.size(); ++k) {
      row.noalias() += coef.to_item[edges[k]] * in.user.row(users[k]);
    }
  }
}

NodeTables propagate_sum(const BipartiteGraph& graph, const EdgeCoefficients& coef,
                         const NodeTables& x0, int layers, double scale,
                         std::vector<NodeTables>* layers_out) {
  NodeTables acc = x0;
  if (layers_out) layers_out->push_back(x0);
  NodeTables current = x0;
  NodeTables next;
  for (int k = 0; k < layers; ++k) {
    propagate_step(graph, coef, current, next);
    acc += next;
    if (layers_out) layers_out->push_back(next);
    std::swap(current, next);
  }
  if (scale != 1.0) acc *= scale;
  return acc;
}

namespace {

void keep_isolated_rows(const BipartiteGraph& graph, const NodeTables& x0, NodeTables& out) {
  for (Index u = 0; u < graph.num_users(); ++u) {
    if (graph.user_degree(u) == 0) out.user.row(u) = x0.user.row(u);
  }
  for (Index i = 0; i < graph.num_items(); ++i) {
    if (graph.item_degree(i) == 0) out.item.row(i) = x0.item.row(i);
  }
}

}  // namespace

NodeTables lightgcn_propagate(const NodeTables& layer0, const BipartiteGraph& graph, int layers) {
  if (layers == 0) return layer0;
  NodeTables out = propagate_sum(graph, lightgcn_coefficients(graph), layer0, layers,
                                 1.0 / static_cast<double>(layers + 1));
  keep_isolated_rows(graph, layer0, out);
  return out;
}

NodeTables lightgcn_propagate(const EmbeddingModel& model, const BipartiteGraph& graph) {
  assert(model.kind == BaseKind::kLightGCN);
  if (model.kind != BaseKind::kLightGCN) {
    throw UsageError("lightgcn_propagate called on a non-LightGCN model");
  }
  return lightgcn_propagate(model.tables, graph, model.layers);
}

NodeTables lightgcn_backward(const NodeTables& grad_out, const BipartiteGraph& graph,
                             int layers) {
  // symmetric operator with the same isolated-row rule, so the adjoint is itself
  return lightgcn_propagate(grad_out, graph, layers);
}

}  // namespace cdcgcn
