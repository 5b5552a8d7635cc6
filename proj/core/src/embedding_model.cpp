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

#include "cdcgcn/embedding_model.hpp"

#include <cmath>
#include <random>

#include <fmt/core.h>

#include "cdcgcn/propagation.hpp"

namespace cdcgcn {

std::string_view to_string(BaseKind kind) {
  return kind == BaseKind::kMF ? "mf" : "lightgcn";
}

BaseKind parse_base_kind(std::string_view name) {
  if (name == "mf" || name == "MF") return BaseKind::kMF;
  if (name == "lightgcn" || name == "LightGCN") return BaseKind::kLightGCN;
  throw UsageError(fmt::format("unknown base model '{}' (expected mf|lightgcn)", name));
}

NodeTables NodeTables::zeros(Index num_users, Index num_items, Eigen::Index dim) {
  return {Table::Zero(num_users, dim), Table::Zero(num_items, dim)};
}

NodeTables& NodeTables::operator+=(const NodeTables& other) {
  user += other.user;
  item += other.item;
  return *this;
}

NodeTables& NodeTables::operator*=(double s) {
  user *= s;
  item *= s;
  return *this;
}

EmbeddingModel EmbeddingModel::initialize(BaseKind kind, Index num_users, Index num_items,
                                          int dim, int layers, std::uint64_t seed,
                                          double stddev) {
  EmbeddingModel model;
  model.kind = kind;
  model.layers = layers;
  model.seed = seed;
  model.tables = NodeTables::zeros(num_users, num_items, dim);
  std::mt19937_64 rng(derive_seed(seed, 0x454D42));
  std::normal_distribution<double> normal(0.0, stddev);
  for (Eigen::Index k = 0; k < model.tables.user.size(); ++k) model.tables.user.data()[k] = normal(rng);
  for (Eigen::Index k = 0; k < model.tables.item.size(); ++k) model.tables.item.data()[k] = normal(rng);
  return model;
}

NodeTables base_embeddings(const EmbeddingModel& model, const BipartiteGraph& graph) {
  if (model.kind == BaseKind::kMF) return model.tables;
  return lightgcn_propagate(model, graph);
}

NodeTables base_backward(const EmbeddingModel& model, const BipartiteGraph& graph,
                         const NodeTables& grad_base) {
  if (model.kind == BaseKind::kMF) return grad_base;
  return lightgcn_backward(grad_base, graph, model.layers);
}

namespace {

void check_table(const Table& t, std::string_view name, std::string_view context) {
  if (t.allFinite()) return;
  Eigen::Index bad = 0;
  while (bad < t.size() && std::isfinite(t.data()[bad])) ++bad;
  throw NumericError(fmt::format("{}: non-finite entry in {} table at row {} (norm {:.6g})",
                                 context, name, bad / t.cols(), t.norm()));
}

}  // namespace

void check_finite(const EmbeddingModel& model, std::string_view context) {
  check_table(model.tables.user, "user", context);
  check_table(model.tables.item, "item", context);
}

void round_to_float(NodeTables& tables) {
  auto round = [](Table& t) {
    for (Eigen::Index k = 0; k < t.size(); ++k) {
      t.data()[k] = static_cast<double>(static_cast<float>(t.data()[k]));
    }
  };
  round(tables.user);
  round(tables.item);
}

}  // namespace cdcgcn
