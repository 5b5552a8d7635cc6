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

#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace cdcgcn::testing {

InteractionDataset make_dataset(Index users, Index items, std::vector<Interaction> train,
                                std::vector<Interaction> val, std::vector<Interaction> test) {
  IdMap user_ids, item_ids;
  for (Index u = 0; u < users; ++u) user_ids.intern(fmt::format("u{}", u));
  for (Index i = 0; i < items; ++i) item_ids.intern(fmt::format("i{}", i));
  return assemble_dataset(std::move(user_ids), std::move(item_ids), std::move(train),
                          std::move(val), std::move(test));
}

CommunityAssignment make_assignment(std::vector<Index> user_labels,
                                    std::vector<Index> item_labels) {
  CommunityAssignment a;
  a.num_users = static_cast<Index>(user_labels.size());
  a.num_items = static_cast<Index>(item_labels.size());
  a.labels = std::move(user_labels);
  a.labels.insert(a.labels.end(), item_labels.begin(), item_labels.end());
  a.num_communities = a.labels.empty() ? 0 : *std::max_element(a.labels.begin(), a.labels.end()) + 1;
  return a;
}

InteractionDataset random_dataset(Index users, Index items, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<Index> any_item(0, items - 1);
  std::vector<Interaction> train;
  for (Index u = 0; u < users; ++u) {
    std::vector<Index> row;
    for (Index i = 0; i < items; ++i) {
      if (keep(rng)) row.push_back(i);
    }
    if (row.empty()) row.push_back(any_item(rng));
    if (static_cast<Index>(row.size()) == items) row.pop_back();
    for (Index i : row) train.push_back({u, i});
  }
  return make_dataset(users, items, std::move(train));
}

CommunityAssignment random_assignment(Index users, Index items, Index communities,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, communities - 1);
  std::vector<Index> ul(static_cast<std::size_t>(users)), il(static_cast<std::size_t>(items));
  for (auto& l : ul) l = pick(rng);
  for (auto& l : il) l = pick(rng);
  auto a = make_assignment(std::move(ul), std::move(il));
  a.num_communities = communities;
  return a;
}

double central_difference(double* x, const std::function<double()>& f, double h) {
  const double saved = *x;
  const auto at = [&](double offset) {
    *x = saved + offset;
    return f();
  };
  // five-point stencil
  const double d = (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12.0 * h);
  *x = saved;
  return d;
}

double relative_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-3});
  return std::abs(analytic - numeric) / scale;
}

Eigen::MatrixXd dense_operator(const BipartiteGraph& graph,
                               const std::function<double(Index, Index)>& to_user,
                               const std::function<double(Index, Index)>& to_item) {
  const Index m = graph.num_users();
  const Index n = graph.num_items();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + n, m + n);
  for (Index u = 0; u < m; ++u) {
    for (Index i : graph.user_neighbors(u)) {
      a(u, m + i) = to_user(u, i);
      a(m + i, u) = to_item(u, i);
    }
  }
  return a;
}

Eigen::MatrixXd stack(const NodeTables& tables) {
  Eigen::MatrixXd out(tables.user.rows() + tables.item.rows(), tables.user.cols());
  out << tables.user, tables.item;
  return out;
}

}  // namespace cdcgcn::testing

namespace cdcgcn::testing {

double dense_modularity(const BipartiteGraph& graph, std::span<const Index> labels) {
  const Index m = graph.num_users();
  const Index total = m + graph.num_items();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(total, total);
  for (Index u = 0; u < m; ++u) {
    for (Index i : graph.user_neighbors(u)) a(u, m + i) = a(m + i, u) = 1.0;
  }
  const Eigen::VectorXd k = a.rowwise().sum();
  const double two_m = k.sum();
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (Index x = 0; x < total; ++x) {
    for (Index y = 0; y < total; ++y) {
      if (labels[x] == labels[y]) q += a(x, y) - k(x) * k(y) / two_m;
    }
  }
  return q / two_m;
}

double brute_force_max_modularity(const BipartiteGraph& graph) {
  const Index total = graph.num_users() + graph.num_items();
  std::vector<Index> rgs(static_cast<std::size_t>(total), 0);
  std::vector<Index> max_prefix(static_cast<std::size_t>(total), 0);
  double best = -1.0;
  // restricted growth strings enumerate each set partition once
  while (true) {
    best = std::max(best, dense_modularity(graph, rgs));
    Index pos = total - 1;
    while (pos > 0 && rgs[pos] == max_prefix[pos - 1] + 1) --pos;
    if (pos == 0) break;
    ++rgs[pos];
    for (Index j = pos; j < total; ++j) {
      if (j > pos) rgs[j] = 0;
      max_prefix[j] = std::max(max_prefix[j - 1], rgs[j]);
    }
  }
  return best;
}

namespace {

bool connected(const BipartiteGraph& g) {
  const Index m = g.num_users();
  const Index total = m + g.num_items();
  std::vector<bool> seen(static_cast<std::size_t>(total), false);
  std::vector<Index> stack{0};
  seen[0] = true;
  Index reached = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    const auto visit = [&](Index w) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    };
    if (v < m) {
      for (Index i : g.user_neighbors(v)) visit(m + i);
    } else {
      for (Index u : g.item_neighbors(v - m)) visit(u);
    }
  }
  return reached == total;
}

}  // namespace

std::vector<InteractionDataset> louvain_fixture_graphs(int max_nodes, int random_per_size,
                                                       std::uint64_t seed) {
  std::vector<InteractionDataset> out;
  std::mt19937_64 rng(seed);
  // named shapes
  out.push_back(make_dataset(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));  // K_{2,2}
  out.push_back(make_dataset(4, 4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 2},
                                    {3, 3}, {1, 2}}));                  // two 4-cycles, bridged
  out.push_back(make_dataset(4, 4, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}}));
  out.push_back(make_dataset(1, 7, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}}));
  out.push_back(make_dataset(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 0}}));  // 6-cycle
  out.push_back(make_dataset(4, 4, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3},
                                    {3, 0}}));                          // 8-cycle
  for (int nodes = 2; nodes <= max_nodes; ++nodes) {
    int made = 0, tries = 0;
    while (made < random_per_size && tries < 200 * random_per_size) {
      ++tries;
      std::uniform_int_distribution<int> split(1, nodes - 1);
      const int m = split(rng);
      const int n = nodes - m;
      std::bernoulli_distribution keep(0.45);
      std::vector<Interaction> edges;
      for (Index u = 0; u < m; ++u) {
        for (Index i = 0; i < n; ++i) {
          if (keep(rng)) edges.push_back({u, i});
        }
      }
      BipartiteGraph g(m, n, edges);
      bool isolated = false;
      for (Index u = 0; u < m; ++u) isolated |= g.user_degree(u) == 0;
      if (isolated || !connected(g)) continue;
      out.push_back(make_dataset(m, n, std::move(edges)));
      ++made;
    }
  }
  return out;
}

}  // namespace cdcgcn::testing

#include "cdcgcn/cgcn.hpp"

namespace cdcgcn::testing {

ToyInstance make_toy(std::uint64_t seed, Index users, Index items, int dim, BaseKind kind,
                     int hidden, int global_dim) {
  ToyInstance toy;
  toy.dataset = random_dataset(users, items, 0.4, seed);
  toy.communities = random_assignment(users, items, 3, seed + 100);
  toy.coef = cgcn_coefficients(toy.dataset.graph, compatibility(toy.dataset.graph, toy.communities));
  toy.model = EmbeddingModel::initialize(kind, users, items, dim, 2, seed, 0.5);
  toy.disc = Discriminator::initialize(dim, global_dim, hidden, 3, seed);
  std::mt19937_64 rng(seed);
  for (const auto& e : toy.dataset.train) {
    std::vector<Index> negatives;
    for (Index j = 0; j < items; ++j) {
      if (!toy.dataset.graph.has_edge(e.user, j)) negatives.push_back(j);
    }
    std::uniform_int_distribution<std::size_t> pick(0, negatives.size() - 1);
    toy.batch.push_back({e.user, e.item, negatives[pick(rng)]});
  }
  return toy;
}

namespace {

template <typename T, typename Out>
void append(T& m, Out& out) {
  for (Eigen::Index k = 0; k < m.size(); ++k) out.push_back(m.data() + k);
}

}  // namespace

std::vector<double*> parameters(EmbeddingModel& model, Discriminator& disc) {
  std::vector<double*> out;
  append(model.tables.user, out);
  append(model.tables.item, out);
  append(disc.w1, out);
  append(disc.b1, out);
  append(disc.w2, out);
  append(disc.b2, out);
  append(disc.global_user, out);
  append(disc.global_item, out);
  return out;
}

std::vector<const double*> parameters(const ModelGradients& grads) {
  std::vector<const double*> out;
  append(grads.base_raw.user, out);
  append(grads.base_raw.item, out);
  append(grads.disc.w1, out);
  append(grads.disc.b1, out);
  append(grads.disc.w2, out);
  append(grads.disc.b2, out);
  append(grads.disc.global_user, out);
  append(grads.disc.global_item, out);
  return out;
}

}  // namespace cdcgcn::testing
