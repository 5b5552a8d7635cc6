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

#include "cdcgcn/bpr.hpp"
#include "cdcgcn/cgcn.hpp"
#include "cdcgcn/discriminator.hpp"

namespace cdcgcn {

// Which parts of the joint objective to evaluate and how the adversarial
// gradient reaches theta_b.
//
// The training objective is L_rec + L_adv(R_beta(e_comm), theta_d), where the
// gradient reversal layer R_beta sits between CGCN and the discriminator.
// With reverse_gradient = false the plain gradient of L_adv flows to theta_b
// instead, which the alternating-update formulation and gradient checks use.
struct ObjectiveSpec {
  double rec_weight = 1.0;  // scales L_rec and the base L2 term
  double adv_weight = 1.0;  // scales L_adv and the discriminator L2 term
  bool reverse_gradient = true;
  double beta = 0.0;
  double l2_base = 1e-3;
  double l2_disc = 1e-7;
  int cgcn_layers = 2;
  bool comm_mean = false;
};

struct ObjectiveValue {
  double rec = 0.0;       // BPR ranking loss
  double reg_base = 0.0;  // rec_weight * l2_base term
  double adv = 0.0;       // summed cross-entropy over (u, i, j) of every triplet
  double reg_disc = 0.0;  // l2_disc * ||theta_d||^2
  std::size_t correct = 0;
  std::size_t total = 0;

  double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

struct ModelGradients {
  NodeTables base_raw;  // on the raw embedding tables (theta_b)
  Discriminator disc;   // on theta_d
};

// Evaluates the weighted objective on one batch and, when `grads` is non-null,
// its gradients. `disc` may be null (no adversarial branch). The CGCN pass
// runs over the full graph from the current e_base.
ObjectiveValue evaluate_objective(const EmbeddingModel& model, const Discriminator* disc,
                                  const BipartiteGraph& graph, const EdgeCoefficients& cgcn_coef,
                                  const CommunityAssignment& communities,
                                  std::span<const Triplet> batch, const ObjectiveSpec& spec,
                                  ModelGradients* grads);

}  // namespace cdcgcn
