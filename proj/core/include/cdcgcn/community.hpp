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
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "cdcgcn/dataset.hpp"

namespace cdcgcn {

// Symmetric weighted graph used by Louvain. Adjacency value A(i,j); a self
// loop of weight w is stored as A(i,i) = 2w so that degree(i) = sum_j A(i,j).
class WeightedGraph {
 public:
  explicit WeightedGraph(Index num_nodes = 0) : adj_(static_cast<std::size_t>(num_nodes)) {}

  static WeightedGraph from_bipartite(const BipartiteGraph& graph);

  // Adds an undirected edge of weight w (self loops allowed).
  void add_edge(Index a, Index b, double w = 1.0);

  Index num_nodes() const { return static_cast<Index>(adj_.size()); }
  const std::vector<std::pair<Index, double>>& neighbors(Index v) const { return adj_[v]; }
  double degree(Index v) const;
  double total_weight() const;  // 2m, sum of all degrees

 private:
  std::vector<std::vector<std::pair<Index, double>>> adj_;
};

double modularity(const WeightedGraph& graph, std::span<const Index> labels,
                  double resolution = 1.0);

struct CommunityAssignment {
  Index num_users = 0;
  Index num_items = 0;
  std::vector<Index> labels;  // users first, then items
  Index num_communities = 0;
  double modularity = 0.0;
  std::vector<double> level_modularity;  // after each aggregation level

  Index user_label(Index u) const { return labels[u]; }
  Index item_label(Index i) const { return labels[num_users + i]; }
};

struct LouvainOptions {
  std::uint64_t seed = 0;
  double resolution = 1.0;
  double min_improvement = 1e-12;
  int max_sweeps = 1000;
};

// Node-level Louvain on an arbitrary weighted graph. Returns contiguous labels
// ordered by decreasing community size; isolated nodes are folded into label 0.
struct LouvainResult {
  std::vector<Index> labels;
  Index num_communities = 0;
  double modularity = 0.0;
  std::vector<double> level_modularity;
};
LouvainResult louvain(const WeightedGraph& graph, const LouvainOptions& options);

// Louvain over the train bipartite graph (users 0..m-1, items m..m+n-1).
CommunityAssignment detect_communities(const BipartiteGraph& graph, const LouvainOptions& options);

double modularity(const BipartiteGraph& graph, const CommunityAssignment& assignment);

// h^i_u and h^u_i per train edge, in BipartiteGraph edge-id order.
struct CompatibilityWeights {
  std::vector<double> user_side;  // h^i_u: share of N_u in C_i
  std::vector<double> item_side;  // h^u_i: share of N_i in C_u
  std::vector<double> user_norm;  // sum_{i in N_u} h^i_u
  std::vector<double> item_norm;  // sum_{u in N_i} h^u_i
};

CompatibilityWeights compatibility(const BipartiteGraph& graph,
                                   const CommunityAssignment& assignment);

struct UserBubbleProfile {
  std::vector<double> ilfbi_init;  // share of intra-community train items per user
  double mean_ilfbi_init = 0.0;
};

UserBubbleProfile ilfbi_init(const BipartiteGraph& graph, const CommunityAssignment& assignment);

// communities.tsv: "# num_communities=<c> modularity=<q>" then one row per node:
// <u|i> <external id> <dense index> <community>
void write_communities(const std::filesystem::path& path, const InteractionDataset& dataset,
                       const CommunityAssignment& assignment);
CommunityAssignment read_communities(const std::filesystem::path& path,
                                     const InteractionDataset& dataset);

}  // namespace cdcgcn
