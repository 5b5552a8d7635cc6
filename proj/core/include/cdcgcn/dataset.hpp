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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cdcgcn/types.hpp"

namespace cdcgcn {

struct Interaction {
  Index user = 0;
  Index item = 0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
  friend auto operator<=>(const Interaction&, const Interaction&) = default;
};

// External id <-> dense index, indexes assigned in first-appearance order.
class IdMap {
 public:
  Index intern(std::string_view external);
  Index find(std::string_view external) const;  // -1 when absent
  const std::string& external(Index index) const { return external_.at(index); }
  Index size() const { return static_cast<Index>(external_.size()); }
  const std::vector<std::string>& externals() const { return external_; }

 private:
  std::vector<std::string> external_;
  std::unordered_map<std::string, Index> index_;
};

enum class InputFormat {
  kPlain,   // whitespace separated, extra columns ignored
  kHetrec,  // as kPlain, first line is a header
};

InputFormat parse_input_format(std::string_view tag);

struct RawEdges {
  std::vector<Interaction> edges;
  IdMap users;
  IdMap items;
  std::size_t duplicates_dropped = 0;
};

RawEdges load_interactions(const std::filesystem::path& path,
                           InputFormat format = InputFormat::kPlain);
RawEdges parse_interactions(std::string_view text, InputFormat format = InputFormat::kPlain);

// Undirected bipartite train graph in CSR form, both directions.
// Edge ids follow the user-side order; item_edge maps item-side slots back to them.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(Index num_users, Index num_items, std::span<const Interaction> edges);

  Index num_users() const { return num_users_; }
  Index num_items() const { return num_items_; }
  std::size_t num_edges() const { return user_items_.size(); }

  std::span<const Index> user_neighbors(Index u) const {
    return {user_items_.data() + user_offsets_[u], user_items_.data() + user_offsets_[u + 1]};
  }
  std::span<const Index> item_neighbors(Index i) const {
    return {item_users_.data() + item_offsets_[i], item_users_.data() + item_offsets_[i + 1]};
  }
  // Edge ids (user-side order) of item i's incident edges, aligned with item_neighbors(i).
  std::span<const std::size_t> item_edges(Index i) const {
    return {item_edge_.data() + item_offsets_[i], item_edge_.data() + item_offsets_[i + 1]};
  }
  std::size_t user_edge_begin(Index u) const { return user_offsets_[u]; }

  Index user_degree(Index u) const {
    return static_cast<Index>(user_offsets_[u + 1] - user_offsets_[u]);
  }
  Index item_degree(Index i) const {
    return static_cast<Index>(item_offsets_[i + 1] - item_offsets_[i]);
  }
  bool has_edge(Index u, Index i) const;

 private:
  Index num_users_ = 0;
  Index num_items_ = 0;
  std::vector<std::size_t> user_offsets_{0};
  std::vector<Index> user_items_;
  std::vector<std::size_t> item_offsets_{0};
  std::vector<Index> item_users_;
  std::vector<std::size_t> item_edge_;
};

struct SplitRatios {
  double train = 0.7;
  double val = 0.1;
  double test = 0.2;
};

enum class SplitMode { kPerUser, kGlobal };

struct InteractionDataset {
  Index num_users = 0;
  Index num_items = 0;
  std::vector<Interaction> train;
  std::vector<Interaction> val;
  std::vector<Interaction> test;
  IdMap users;
  IdMap items;
  BipartiteGraph graph;  // train split only

  // Per-user item lists of a held-out split, sorted.
  static std::vector<std::vector<Index>> group_by_user(std::span<const Interaction> edges,
                                                       Index num_users);
};

InteractionDataset split_dataset(const RawEdges& raw, const SplitRatios& ratios,
                                 std::uint64_t seed, SplitMode mode = SplitMode::kPerUser);

// Rebuilds a dataset from already-split edge lists (dense indexes) and id maps.
InteractionDataset assemble_dataset(IdMap users, IdMap items, std::vector<Interaction> train,
                                    std::vector<Interaction> val, std::vector<Interaction> test);

// train.tsv / val.tsv / test.tsv / users.tsv / items.tsv / meta.json under dir.
void write_split(const InteractionDataset& dataset, const std::filesystem::path& dir,
                 std::uint64_t seed, const SplitRatios& ratios);
InteractionDataset read_split(const std::filesystem::path& dir);

void write_edge_list(const std::filesystem::path& path, std::span<const Interaction> edges);
std::vector<Interaction> read_edge_list(const std::filesystem::path& path);

}  // namespace cdcgcn
