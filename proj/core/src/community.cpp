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
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/core.h>

#include "cdcgcn/community.hpp"

namespace cdcgcn {

CommunityAssignment detect_communities(const BipartiteGraph& graph,
                                       const LouvainOptions& options) {
  if (graph.num_edges() == 0) throw DataError("community detection needs a non-empty train graph");
  auto result = louvain(WeightedGraph::from_bipartite(graph), options);
  CommunityAssignment out;
  out.num_users = graph.num_users();
  out.num_items = graph.num_items();
  out.labels = std::move(result.labels);
  out.num_communities = result.num_communities;
  out.modularity = result.modularity;
  out.level_modularity = std::move(result.level_modularity);
  return out;
}

double modularity(const BipartiteGraph& graph, const CommunityAssignment& assignment) {
  return modularity(WeightedGraph::from_bipartite(graph), assignment.labels);
}

CompatibilityWeights compatibility(const BipartiteGraph& graph,
                                   const CommunityAssignment& assignment) {
  CompatibilityWeights w;
  w.user_side.assign(graph.num_edges(), 0.0);
  w.item_side.assign(graph.num_edges(), 0.0);
  w.user_norm.assign(static_cast<std::size_t>(graph.num_users()), 0.0);
  w.item_norm.assign(static_cast<std::size_t>(graph.num_items()), 0.0);

  std::vector<Index> count(static_cast<std::size_t>(assignment.num_communities), 0);
  for (Index u = 0; u < graph.num_users(); ++u) {
    const auto items = graph.user_neighbors(u);
    if (items.empty()) {
      throw DataError(fmt::format("user {} has an empty train neighborhood", u));
    }
    for (Index i : items) ++count[assignment.item_label(i)];
    const double deg = static_cast<double>(items.size());
    const std::size_t base = graph.user_edge_begin(u);
    for (std::size_t k = 0; k < items.size(); ++k) {
      const double h = count[assignment.item_label(items[k])] / deg;
      w.user_side[base + k] = h;
      w.user_norm[u] += h;
    }
    for (Index i : items) count[assignment.item_label(i)] = 0;
  }
  for (Index i = 0; i < graph.num_items(); ++i) {
    const auto users = graph.item_neighbors(i);
    if (users.empty()) continue;  // no edges to weight
    for (Index u : users) ++count[assignment.user_label(u)];
    const double deg = static_cast<double>(users.size());
    const auto edges = graph.item_edges(i);
    for (std::size_t k = 0; k < users.size(); ++k) {
      const double h = count[assignment.user_label(users[k])] / deg;
      w.item_side[edges[k]] = h;
      w.item_norm[i] += h;
    }
    for (Index u : users) count[assignment.user_label(u)] = 0;
  }
  return w;
}

UserBubbleProfile ilfbi_init(const BipartiteGraph& graph, const CommunityAssignment& assignment) {
  UserBubbleProfile profile;
  profile.ilfbi_init.assign(static_cast<std::size_t>(graph.num_users()), 0.0);
  double sum = 0.0;
  for (Index u = 0; u < graph.num_users(); ++u) {
    const auto items = graph.user_neighbors(u);
    if (items.empty()) continue;
    const Index cu = assignment.user_label(u);
    const auto intra = std::count_if(items.begin(), items.end(),
                                     [&](Index i) { return assignment.item_label(i) == cu; });
    profile.ilfbi_init[u] = static_cast<double>(intra) / static_cast<double>(items.size());
    sum += profile.ilfbi_init[u];
  }
  profile.mean_ilfbi_init = graph.num_users() > 0 ? sum / graph.num_users() : 0.0;
  return profile;
}

void write_communities(const std::filesystem::path& path, const InteractionDataset& dataset,
                       const CommunityAssignment& assignment) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << fmt::format("# num_communities={} modularity={:.17g}\n", assignment.num_communities,
                     assignment.modularity);
  for (Index u = 0; u < dataset.num_users; ++u) {
    out << "u\t" << dataset.users.external(u) << '\t' << u << '\t' << assignment.user_label(u)
        << '\n';
  }
  for (Index i = 0; i < dataset.num_items; ++i) {
    out << "i\t" << dataset.items.external(i) << '\t' << i << '\t' << assignment.item_label(i)
        << '\n';
  }
}

CommunityAssignment read_communities(const std::filesystem::path& path,
                                     const InteractionDataset& dataset) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  CommunityAssignment a;
  a.num_users = dataset.num_users;
  a.num_items = dataset.num_items;
  a.labels.assign(static_cast<std::size_t>(a.num_users + a.num_items), -1);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (std::sscanf(line.c_str(), "# num_communities=%d modularity=%lf", &a.num_communities,
                      &a.modularity) != 2) {
        throw DataError(fmt::format("{}:{}: malformed summary line", path.string(), line_no));
      }
      continue;
    }
    std::istringstream fields(line);
    std::string kind, external;
    Index index = -1, label = -1;
    if (!(fields >> kind >> external >> index >> label) || (kind != "u" && kind != "i")) {
      throw DataError(fmt::format("{}:{}: malformed row '{}'", path.string(), line_no, line));
    }
    const Index limit = kind == "u" ? a.num_users : a.num_items;
    if (index < 0 || index >= limit) {
      throw DataError(fmt::format("{}:{}: index {} out of range", path.string(), line_no, index));
    }
    a.labels[kind == "u" ? index : a.num_users + index] = label;
  }
  for (Index v = 0; v < a.num_users + a.num_items; ++v) {
    if (a.labels[v] < 0 || a.labels[v] >= a.num_communities) {
      throw DataError(fmt::format("{}: node {} has no valid community label", path.string(), v));
    }
  }
  return a;
}

}  // namespace cdcgcn
