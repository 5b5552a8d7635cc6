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
#include <span>
#include <vector>

#include "cdcgcn/types.hpp"

namespace cdcgcn {

// Two fully-connected layers over [e_comm || global embedding of the node kind]:
//   softmax(W2^T relu(W1^T x + b1) + b2)
struct Discriminator {
  Table w1;  // (d + g) x hidden
  Vector b1;
  Table w2;  // hidden x num_communities
  Vector b2;
  Vector global_user;
  Vector global_item;

  int input_dim() const { return static_cast<int>(w1.rows() - global_user.size()); }
  int global_dim() const { return static_cast<int>(global_user.size()); }
  int hidden() const { return static_cast<int>(w1.cols()); }
  int num_communities() const { return static_cast<int>(w2.cols()); }

  static Discriminator initialize(int input_dim, int global_dim, int hidden,
                                  int num_communities, std::uint64_t seed);
  static Discriminator zeros(int input_dim, int global_dim, int hidden, int num_communities);

  Discriminator& operator+=(const Discriminator& other);
  Discriminator& operator*=(double s);
  double squared_norm() const;
};

// Probability vector over communities for one node.
Vector discriminate(const Discriminator& disc, const Eigen::Ref<const Eigen::RowVectorXd>& e_comm,
                    NodeKind kind);

// -log prob[label], prob floored at 1e-12.
double ce_loss(const Eigen::Ref<const Vector>& prob, Index label);

struct DiscriminatorSample {
  NodeKind kind;
  Index row;    // row in the user or item table of e_comm
  Index label;  // community id
};

struct AdversarialResult {
  double loss = 0.0;
  std::size_t correct = 0;  // argmax == label
  std::size_t total = 0;
};

// Summed cross-entropy over samples. When grad_disc / grad_input are given,
// dL/dtheta_d and dL/de_comm are accumulated into them.
AdversarialResult adversarial_loss(const Discriminator& disc, const Table& user_comm,
                                   const Table& item_comm,
                                   std::span<const DiscriminatorSample> samples,
                                   Discriminator* grad_disc, Table* grad_user_comm,
                                   Table* grad_item_comm);

}  // namespace cdcgcn
