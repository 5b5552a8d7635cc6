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

#include "cdcgcn/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cdcgcn {

Discriminator Discriminator::zeros(int input_dim, int global_dim, int hidden,
                                   int num_communities) {
  Discriminator d;
  d.w1 = Table::Zero(input_dim + global_dim, hidden);
  d.b1 = Vector::Zero(hidden);
  d.w2 = Table::Zero(hidden, num_communities);
  d.b2 = Vector::Zero(num_communities);
  d.global_user = Vector::Zero(global_dim);
  d.global_item = Vector::Zero(global_dim);
  return d;
}

Discriminator Discriminator::initialize(int input_dim, int global_dim, int hidden,
                                        int num_communities, std::uint64_t seed) {
  Discriminator d = zeros(input_dim, global_dim, hidden, num_communities);
  std::mt19937_64 rng(derive_seed(seed, 0x444953));
  auto fill_uniform = [&](double* data, Eigen::Index n, double bound) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (Eigen::Index k = 0; k < n; ++k) data[k] = dist(rng);
  };
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(input_dim + global_dim));
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  fill_uniform(d.w1.data(), d.w1.size(), bound1);
  fill_uniform(d.b1.data(), d.b1.size(), bound1);
  fill_uniform(d.w2.data(), d.w2.size(), bound2);
  fill_uniform(d.b2.data(), d.b2.size(), bound2);
  std::normal_distribution<double> normal(0.0, 0.1);
  for (Eigen::Index k = 0; k < global_dim; ++k) d.global_user[k] = normal(rng);
  for (Eigen::Index k = 0; k < global_dim; ++k) d.global_item[k] = normal(rng);
  return d;
}

Discriminator& Discriminator::operator+=(const Discriminator& o) {
  w1 += o.w1;
  b1 += o.b1;
  w2 += o.w2;
  b2 += o.b2;
  global_user += o.global_user;
  global_item += o.global_item;
  return *this;
}

Discriminator& Discriminator::operator*=(double s) {
  w1 *= s;
  b1 *= s;
  w2 *= s;
  b2 *= s;
  global_user *= s;
  global_item *= s;
  return *this;
}

double Discriminator::squared_norm() const {
  return w1.squaredNorm() + b1.squaredNorm() + w2.squaredNorm() + b2.squaredNorm() +
         global_user.squaredNorm() + global_item.squaredNorm();
}

namespace {

struct Forward {
  Eigen::RowVectorXd x;
  Eigen::RowVectorXd pre;
  Eigen::RowVectorXd hidden;
  Eigen::RowVectorXd prob;
};

Forward forward(const Discriminator& disc, const Eigen::Ref<const Eigen::RowVectorXd>& e_comm,
                NodeKind kind) {
  Forward f;
  const Vector& glob = kind == NodeKind::kUser ? disc.global_user : disc.global_item;
  f.x.resize(e_comm.size() + glob.size());
  f.x << e_comm, glob.transpose();
  f.pre = f.x * disc.w1 + disc.b1.transpose();
  f.hidden = f.pre.cwiseMax(0.0);
  Eigen::RowVectorXd logits = f.hidden * disc.w2 + disc.b2.transpose();
  const double top = logits.maxCoeff();
  f.prob = (logits.array() - top).exp();
  f.prob /= f.prob.sum();
  return f;
}

}  // namespace

Vector discriminate(const Discriminator& disc, const Eigen::Ref<const Eigen::RowVectorXd>& e_comm,
                    NodeKind kind) {
  return forward(disc, e_comm, kind).prob.transpose();
}

double ce_loss(const Eigen::Ref<const Vector>& prob, Index label) {
  return -std::log(std::max(prob[label], 1e-12));
}

AdversarialResult adversarial_loss(const Discriminator& disc, const Table& user_comm,
                                   const Table& item_comm,
                                   std::span<const DiscriminatorSample> samples,
                                   Discriminator* grad_disc, Table* grad_user_comm,
                                   Table* grad_item_comm) {
  AdversarialResult result;
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n == 0) return result;
  const Eigen::Index d = disc.input_dim();
  const Eigen::Index g = disc.global_dim();

  Table x(n, d + g);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& s = samples[r];
    const bool is_user = s.kind == NodeKind::kUser;
    x.row(r).head(d) = (is_user ? user_comm : item_comm).row(s.row);
    x.row(r).tail(g) = (is_user ? disc.global_user : disc.global_item).transpose();
  }
  Table pre = x * disc.w1;
  pre.rowwise() += disc.b1.transpose();
  const Table hidden = pre.cwiseMax(0.0);
  Table prob = hidden * disc.w2;
  prob.rowwise() += disc.b2.transpose();
  for (Eigen::Index r = 0; r < n; ++r) {
    auto row = prob.row(r);
    row = (row.array() - row.maxCoeff()).exp();
    row /= row.sum();
  }

  Table d_logits = prob;
  for (Eigen::Index r = 0; r < n; ++r) {
    const Index label = samples[r].label;
    const double p = prob(r, label);
    result.loss += -std::log(std::max(p, 1e-12));
    Eigen::Index best = 0;
    prob.row(r).maxCoeff(&best);
    result.correct += best == label ? 1 : 0;
    if (p > 1e-12) {
      d_logits(r, label) -= 1.0;
    } else {
      d_logits.row(r).setZero();  // floored log has zero slope
    }
  }
  result.total = samples.size();
  if (!grad_disc && !grad_user_comm && !grad_item_comm) return result;

  const Table d_pre = (d_logits * disc.w2.transpose()).cwiseProduct(
      (pre.array() > 0.0).cast<double>().matrix());
  if (grad_disc) {
    grad_disc->w2.noalias() += hidden.transpose() * d_logits;
    grad_disc->b2 += d_logits.colwise().sum().transpose();
    grad_disc->w1.noalias() += x.transpose() * d_pre;
    grad_disc->b1 += d_pre.colwise().sum().transpose();
  }
  const Table d_x = d_pre * disc.w1.transpose();
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& s = samples[r];
    const bool is_user = s.kind == NodeKind::kUser;
    if (grad_disc) {
      Vector& g_glob = is_user ? grad_disc->global_user : grad_disc->global_item;
      g_glob += d_x.row(r).tail(g).transpose();
    }
    Table* g_comm = is_user ? grad_user_comm : grad_item_comm;
    if (g_comm) g_comm->row(s.row) += d_x.row(r).head(d);
  }
  return result;
}

}  // namespace cdcgcn
