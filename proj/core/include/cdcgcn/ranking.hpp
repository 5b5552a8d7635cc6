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
#include "cdcgcn/embedding_model.hpp"

namespace cdcgcn {

// Full-catalog scoring for one user at a time.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual Index num_users() const = 0;
  virtual Index num_items() const = 0;
  virtual void score_user(Index user, std::span<double> out) const = 0;
};

// Inner product of precomputed e^base tables.
class EmbeddingScorer final : public Scorer {
 public:
  explicit EmbeddingScorer(NodeTables base) : base_(std::move(base)) {}
  EmbeddingScorer(const EmbeddingModel& model, const BipartiteGraph& graph)
      : base_(base_embeddings(model, graph)) {}

  Index num_users() const override { return static_cast<Index>(base_.user.rows()); }
  Index num_items() const override { return static_cast<Index>(base_.item.rows()); }
  void score_user(Index user, std::span<double> out) const override;
  const NodeTables& tables() const { return base_; }

 private:
  NodeTables base_;
};

struct RankedList {
  Index user = 0;
  std::vector<Index> items;
  std::vector<double> scores;
};

// Exact top-k over items the user has not interacted with in train; ties go
// to the lower item index. `truncated` is set when some list is shorter than k.
std::vector<RankedList> rank_topk(const Scorer& scorer, const BipartiteGraph& train, int k,
                                  bool* truncated = nullptr);

// Top-k of one score vector with train items of `user` masked.
RankedList topk_for_user(Index user, std::span<const double> scores, const BipartiteGraph& train,
                         int k);

}  // namespace cdcgcn
