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

#include "cdcgcn/objective.hpp"

#include <vector>

namespace cdcgcn {

ObjectiveValue evaluate_objective(const EmbeddingModel& model, const Discriminator* disc,
                                  const BipartiteGraph& graph, const EdgeCoefficients& cgcn_coef,
                                  const CommunityAssignment& communities,
                                  std::span<const Triplet> batch, const ObjectiveSpec& spec,
                                  ModelGradients* grads) {
  ObjectiveValue value;
  const NodeTables base = base_embeddings(model, graph);
  NodeTables grad_base;
  if (grads) grad_base = NodeTables::zeros(model.num_users(), model.num_items(), model.dim());

  value.rec = pairwise_loss(base, batch, {}, grads ? &grad_base : nullptr).ranking;
  if (grads && spec.rec_weight != 1.0) grad_base *= spec.rec_weight;

  if (disc) {
    const CommunityEmbeddings comm =
        cgcn_propagate(base, graph, cgcn_coef, spec.cgcn_layers, spec.comm_mean);
    std::vector<DiscriminatorSample> samples;
    samples.reserve(batch.size() * 3);
    for (const auto& t : batch) {
      samples.push_back({NodeKind::kUser, t.user, communities.user_label(t.user)});
      samples.push_back({NodeKind::kItem, t.pos, communities.item_label(t.pos)});
      samples.push_back({NodeKind::kItem, t.neg, communities.item_label(t.neg)});
    }
    Discriminator grad_disc;
    NodeTables grad_comm;
    if (grads) {
      grad_disc = Discriminator::zeros(disc->input_dim(), disc->global_dim(), disc->hidden(),
                                       disc->num_communities());
      grad_comm = NodeTables::zeros(model.num_users(), model.num_items(), model.dim());
    }
    const auto adv = adversarial_loss(*disc, comm.comm.user, comm.comm.item, samples,
                                      grads ? &grad_disc : nullptr,
                                      grads ? &grad_comm.user : nullptr,
                                      grads ? &grad_comm.item : nullptr);
    value.adv = adv.loss;
    value.correct = adv.correct;
    value.total = adv.total;
    value.reg_disc = spec.l2_disc * disc->squared_norm();
    if (grads) {
      Discriminator reg = *disc;
      reg *= 2.0 * spec.l2_disc;
      grad_disc += reg;
      grad_disc *= spec.adv_weight;
      grads->disc = std::move(grad_disc);

      grad_comm *= spec.adv_weight;
      const NodeTables upstream =
          spec.reverse_gradient ? grl_backward(grad_comm, spec.beta) : grad_comm;
      grad_base += cgcn_backward(upstream, graph, cgcn_coef, spec.cgcn_layers, spec.comm_mean);
    }
  }

  if (grads) {
    grads->base_raw = base_backward(model, graph, grad_base);
    value.reg_base = l2_penalty(model.tables, batch, spec.l2_base * spec.rec_weight,
                                &grads->base_raw);
  } else {
    value.reg_base = l2_penalty(model.tables, batch, spec.l2_base * spec.rec_weight, nullptr);
  }
  return value;
}

}  // namespace cdcgcn
