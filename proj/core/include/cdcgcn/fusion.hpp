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
#include <vector>

#include "cdcgcn/community.hpp"
#include "cdcgcn/ranking.hpp"

namespace cdcgcn {

// eta_u = ILFBI_u^init / (2 * mean), clamped to [0, 1]; all zero when the mean is 0.
std::vector<double> compute_eta(const UserBubbleProfile& profile);

// eta_u * Y^CD + (1 - eta_u) * Y^BM over the candidate items.
std::vector<double> fuse_scores(Index user, std::span<const Index> candidates,
                                const EmbeddingScorer& cd_model,
                                const EmbeddingScorer& pretrained, std::span<const double> eta);

class FusedScorer final : public Scorer {
 public:
  FusedScorer(const EmbeddingScorer& cd_model, const EmbeddingScorer& pretrained,
              std::vector<double> eta);

  Index num_users() const override { return cd_->num_users(); }
  Index num_items() const override { return cd_->num_items(); }
  void score_user(Index user, std::span<double> out) const override;

 private:
  const EmbeddingScorer* cd_;
  const EmbeddingScorer* pretrained_;
  std::vector<double> eta_;
};

}  // namespace cdcgcn
