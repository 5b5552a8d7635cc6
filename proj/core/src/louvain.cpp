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

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "cdcgcn/community.hpp"

namespace cdcgcn {

WeightedGraph WeightedGraph::from_bipartite(const BipartiteGraph& graph) {
  WeightedGraph g(graph.num_users() + graph.num_items());
  for (Index u = 0; u < graph.num_users(); ++u) {
    for (Index i : graph.user_neighbors(u)) g.add_edge(u, graph.num_users() + i);
  }
  return g;
}

void WeightedGraph::add_edge(Index a, Index b, double w) {
  if (a == b) {
    adj_[a].emplace_back(a, 2.0 * w);
    return;
  }
  adj_[a].emplace_back(b, w);
  adj_[b].emplace_back(a, w);
}

double WeightedGraph::degree(Index v) const {
  double d = 0.0;
  for (const auto& [_, w] : adj_[v]) d += w;
  return d;
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (Index v = 0; v < num_nodes(); ++v) total += degree(v);
  return total;
}

double modularity(const WeightedGraph& graph, std::span<const Index> labels, double resolution) {
  const double two_m = graph.total_weight();
  if (two_m <= 0.0) return 0.0;
  const Index n_labels =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> inside(static_cast<std::size_t>(n_labels), 0.0);
  std::vector<double> total(static_cast<std::size_t>(n_labels), 0.0);
  for (Index v = 0; v < graph.num_nodes(); ++v) {
    for (const auto& [nb, w] : graph.neighbors(v)) {
      total[labels[v]] += w;
      if (labels[nb] == labels[v]) inside[labels[v]] += w;
    }
  }
  double q = 0.0;
  for (Index c = 0; c < n_labels; ++c) {
    q += inside[c] / two_m - resolution * (total[c] / two_m) * (total[c] / two_m);
  }
  return q;
}

namespace {

// Local moving from the partition in `community` (singletons when empty);
// returns true if any node moved.
bool local_moving(const WeightedGraph& g, const LouvainOptions& opt, std::mt19937_64& rng,
                  std::vector<Index>& community) {
  const Index n = g.num_nodes();
  const double two_m = g.total_weight();
  std::vector<double> degree(static_cast<std::size_t>(n));
  std::vector<double> self(static_cast<std::size_t>(n), 0.0);
  for (Index v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    for (const auto& [nb, w] : g.neighbors(v)) {
      if (nb == v) self[v] += w;
    }
  }
  if (community.empty()) {
    community.resize(static_cast<std::size_t>(n));
    std::iota(community.begin(), community.end(), 0);
  }
  std::vector<double> tot(static_cast<std::size_t>(n), 0.0);
  for (Index v = 0; v < n; ++v) tot[community[v]] += degree[v];

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(static_cast<std::size_t>(n), -1.0);
  std::vector<Index> touched;
  bool moved_any = false;
  double q = modularity(g, community, opt.resolution);

  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    for (Index v : order) {
      const Index own = community[v];
      touched.clear();
      link[own] = 0.0;
      touched.push_back(own);
      for (const auto& [nb, w] : g.neighbors(v)) {
        if (nb == v) continue;
        const Index c = community[nb];
        if (link[c] < 0.0) {
          link[c] = 0.0;
          touched.push_back(c);
        }
        link[c] += w;
      }
      tot[own] -= degree[v];

      Index best = own;
      double best_gain = link[own] - opt.resolution * tot[own] * degree[v] / two_m;
      for (Index c : touched) {
        const double gain = link[c] - opt.resolution * tot[c] * degree[v] / two_m;
        const double tol = 1e-12 * std::max(1.0, std::abs(best_gain));
        if (gain > best_gain + tol || (gain >= best_gain - tol && c < best)) {
          best = c;
          best_gain = gain;
        }
      }
      tot[best] += degree[v];
      if (best != own) {
        community[v] = best;
        moved_any = true;
      }
      for (Index c : touched) link[c] = -1.0;
    }
    const double q_new = modularity(g, community, opt.resolution);
    if (q_new - q <= opt.min_improvement) {
      q = std::max(q, q_new);
      break;
    }
    q = q_new;
  }
  return moved_any;
}

// Maps arbitrary community ids to 0..k-1 in order of first appearance.
Index compact(std::vector<Index>& community) {
  std::unordered_map<Index, Index> remap;
  for (auto& c : community) {
    auto [it, _] = remap.emplace(c, static_cast<Index>(remap.size()));
    c = it->second;
  }
  return static_cast<Index>(remap.size());
}

WeightedGraph aggregate(const WeightedGraph& g, std::span<const Index> community,
                        Index num_communities) {
  std::vector<std::unordered_map<Index, double>> acc(static_cast<std::size_t>(num_communities));
  for (Index v = 0; v < g.num_nodes(); ++v) {
    for (const auto& [nb, w] : g.neighbors(v)) acc[community[v]][community[nb]] += w;
  }
  WeightedGraph out(num_communities);
  for (Index c = 0; c < num_communities; ++c) {
    std::vector<std::pair<Index, double>> row(acc[c].begin(), acc[c].end());
    std::sort(row.begin(), row.end());
    for (const auto& [d, w] : row) {
      if (d == c) {
        out.add_edge(c, c, w / 2.0);  // A(c,c) already counts both directions
      } else if (d > c) {
        out.add_edge(c, d, w);
      }
    }
  }
  return out;
}

}  // namespace

LouvainResult louvain(const WeightedGraph& graph, const LouvainOptions& options) {
  const Index n = graph.num_nodes();
  std::mt19937_64 rng(options.seed);
  std::vector<Index> node_community(static_cast<std::size_t>(n));
  std::iota(node_community.begin(), node_community.end(), 0);

  LouvainResult result;
  WeightedGraph level = graph;
  double q = modularity(graph, node_community, options.resolution);
  while (true) {
    std::vector<Index> community;
    const bool moved = local_moving(level, options, rng, community);
    const Index k = compact(community);
    std::vector<Index> candidate(node_community);
    for (auto& c : candidate) c = community[c];
    const double q_new = modularity(graph, candidate, options.resolution);
    // zero-gain merges are kept: ties go to the lowest community id
    if (!moved || k == level.num_nodes() || q_new < q - options.min_improvement) break;
    node_community = std::move(candidate);
    q = std::max(q, q_new);
    result.level_modularity.push_back(q_new);
    level = aggregate(level, community, k);
  }

  // size-descending relabel; isolated nodes are folded into label 0
  std::vector<bool> isolated(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) isolated[v] = graph.degree(v) <= 0.0;
  const Index k = compact(node_community);
  std::vector<Index> size(static_cast<std::size_t>(k), 0);
  std::vector<Index> first(static_cast<std::size_t>(k), n);
  std::vector<bool> real(static_cast<std::size_t>(k), false);
  for (Index v = 0; v < n; ++v) {
    const Index c = node_community[v];
    ++size[c];
    first[c] = std::min(first[c], v);
    if (!isolated[v]) real[c] = true;
  }
  std::vector<Index> order;
  for (Index c = 0; c < k; ++c) {
    if (real[c]) order.push_back(c);
  }
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return size[a] != size[b] ? size[a] > size[b] : first[a] < first[b];
  });
  std::vector<Index> relabel(static_cast<std::size_t>(k), 0);
  for (std::size_t r = 0; r < order.size(); ++r) relabel[order[r]] = static_cast<Index>(r);
  result.labels.resize(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) result.labels[v] = isolated[v] ? 0 : relabel[node_community[v]];
  result.num_communities = std::max<Index>(1, static_cast<Index>(order.size()));
  result.modularity = modularity(graph, result.labels, options.resolution);
  return result;
}

}  // namespace cdcgcn
