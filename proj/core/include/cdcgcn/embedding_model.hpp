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

#include <cstdint>
#include <string_view>

#include "cdcgcn/dataset.hpp"
#include "cdcgcn/types.hpp"

namespace cdcgcn {

enum class BaseKind : std::uint32_t { kMF = 0, kLightGCN = 1 };

std::string_view to_string(BaseKind kind);
BaseKind parse_base_kind(std::string_view name);

// Per-node tables for both sides of the bipartite graph.
struct NodeTables {
  Table user;
  Table item;

  static NodeTables zeros(Index num_users, Index num_items, Eigen::Index dim);
  NodeTables& operator+=(const NodeTables& other);
  NodeTables& operator*=(double s);
  double squared_norm() const { return user.squaredNorm() + item.squaredNorm(); }
};

// The base-model parameters: raw (layer-0) embedding tables plus the
// propagation rule that turns them into e^base.
struct EmbeddingModel {
  BaseKind kind = BaseKind::kMF;
  int layers = 3;  // LightGCN only
  std::uint64_t seed = 0;
  NodeTables tables;

  Index num_users() const { return static_cast<Index>(tables.user.rows()); }
  Index num_items() const { return static_cast<Index>(tables.item.rows()); }
  int dim() const { return static_cast<int>(tables.user.cols()); }

  // Entries drawn from N(0, stddev^2), reproducible for a fixed seed.
  static EmbeddingModel initialize(BaseKind kind, Index num_users, Index num_items, int dim,
                                   int layers, std::uint64_t seed, double stddev = 0.1);
};

// e^base: the raw tables for MF, the LightGCN layer mean otherwise.
NodeTables base_embeddings(const EmbeddingModel& model, const BipartiteGraph& graph);

// Maps dL/de^base back onto the raw tables.
NodeTables base_backward(const EmbeddingModel& model, const BipartiteGraph& graph,
                         const NodeTables& grad_base);

inline double score(const NodeTables& base, Index u, Index i) {
  return base.user.row(u).dot(base.item.row(i));
}

// Throws NumericError naming the offending table when any entry is NaN/Inf.
void check_finite(const EmbeddingModel& model, std::string_view context);

// Rounds every entry to the nearest float, matching what a checkpoint stores.
void round_to_float(NodeTables& tables);

}  // namespace cdcgcn
