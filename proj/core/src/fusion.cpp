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

#include "cdcgcn/fusion.hpp"

#include <algorithm>

namespace cdcgcn {

std::vector<double> compute_eta(const UserBubbleProfile& profile) {
  std::vector<double> eta(profile.ilfbi_init.size(), 0.0);
  if (profile.mean_ilfbi_init <= 0.0) return eta;
  for (std::size_t u = 0; u < eta.size(); ++u) {
    eta[u] = std::clamp(profile.ilfbi_init[u] / (2.0 * profile.mean_ilfbi_init), 0.0, 1.0);
  }
  return eta;
}

std::vector<double> fuse_scores(Index user, std::span<const Index> candidates,
                                const EmbeddingScorer& cd_model,
                                const EmbeddingScorer& pretrained, std::span<const double> eta) {
  const double w = eta[user];
  std::vector<double> fused;
  fused.reserve(candidates.size());
  for (Index i : candidates) {
    fused.push_back(w * score(cd_model.tables(), user, i) +
                    (1.0 - w) * score(pretrained.tables(), user, i));
  }
  return fused;
}

FusedScorer::FusedScorer(const EmbeddingScorer& cd_model, const EmbeddingScorer& pretrained,
                         std::vector<double> eta)
    : cd_(&cd_model), pretrained_(&pretrained), eta_(std::move(eta)) {
  if (cd_model.num_users() != pretrained.num_users() ||
      cd_model.num_items() != pretrained.num_items()) {
    throw UsageError("fused models must share the dataset's index space");
  }
  if (eta_.size() != static_cast<std::size_t>(cd_model.num_users())) {
    throw UsageError("eta must have one entry per user");
  }
}

void FusedScorer::score_user(Index user, std::span<double> out) const {
  std::vector<double> bm(out.size());
  cd_->score_user(user, out);
  pretrained_->score_user(user, bm);
  const double w = eta_[user];
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w * out[i] + (1.0 - w) * bm[i];
}

}  // namespace cdcgcn
