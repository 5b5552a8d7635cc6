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

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cdcgcn/community.hpp"
#include "cdcgcn/dataset.hpp"
#include "cdcgcn/embedding_model.hpp"

namespace cdcgcn::testing {

// Dataset with ids "u<k>" / "i<k>" and the given splits.
InteractionDataset make_dataset(Index users, Index items, std::vector<Interaction> train,
                                std::vector<Interaction> val = {},
                                std::vector<Interaction> test = {});

CommunityAssignment make_assignment(std::vector<Index> user_labels,
                                    std::vector<Index> item_labels);

// Random bipartite train graph where every user has at least one edge.
InteractionDataset random_dataset(Index users, Index items, double density, std::uint64_t seed);

CommunityAssignment random_assignment(Index users, Index items, Index communities,
                                      std::uint64_t seed);

// Five-point central-difference derivative of f with respect to *x.
double central_difference(double* x, const std::function<double()>& f, double h = 1e-4);

double relative_error(double analytic, double numeric);

// Dense (m+n)x(m+n) adjacency with the given coefficient per directed edge.
Eigen::MatrixXd dense_operator(const BipartiteGraph& graph,
                               const std::function<double(Index, Index)>& to_user,
                               const std::function<double(Index, Index)>& to_item);

Eigen::MatrixXd stack(const NodeTables& tables);

}  // namespace cdcgcn::testing

namespace cdcgcn::testing {

// Newman-Girvan modularity from the dense adjacency matrix.
double dense_modularity(const BipartiteGraph& graph, std::span<const Index> labels);

// Maximum modularity over every partition of the m+n nodes.
double brute_force_max_modularity(const BipartiteGraph& graph);

// Connected bipartite graphs with users + items <= max_nodes used as the
// Louvain optimality fixture set.
std::vector<InteractionDataset> louvain_fixture_graphs(int max_nodes, int random_per_size,
                                                       std::uint64_t seed);

}  // namespace cdcgcn::testing

#include "cdcgcn/objective.hpp"

namespace cdcgcn::testing {

// Small end-to-end instance for gradient and update-rule checks.
struct ToyInstance {
  InteractionDataset dataset;
  CommunityAssignment communities;
  EdgeCoefficients coef;
  EmbeddingModel model;
  Discriminator disc;
  std::vector<Triplet> batch;
};

ToyInstance make_toy(std::uint64_t seed, Index users = 5, Index items = 6, int dim = 8,
                     BaseKind kind = BaseKind::kLightGCN, int hidden = 6, int global_dim = 3);

// Every scalar parameter of theta_b and theta_d, in a fixed order.
std::vector<double*> parameters(EmbeddingModel& model, Discriminator& disc);
std::vector<const double*> parameters(const ModelGradients& grads);
std::vector<const double*> parameters(const ModelGradients&&) = delete;

}  // namespace cdcgcn::testing
