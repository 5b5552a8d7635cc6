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
#include <filesystem>
#include <span>
#include <vector>

#include "cdcgcn/community.hpp"
#include "cdcgcn/ranking.hpp"

namespace cdcgcn {

// Keeps one uniformly chosen test item per (user, community).
std::vector<Interaction> build_debiased_test(const InteractionDataset& dataset,
                                             const CommunityAssignment& communities,
                                             std::uint64_t seed);

inline constexpr double kDefaultGroupBinValues[] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
inline constexpr std::span<const double> kDefaultGroupBins{kDefaultGroupBinValues};

struct UserGroupRow {
  double lower = 0.0;
  double upper = 0.0;
  bool present = false;  // false for an empty bin
  std::size_t users = 0;
  double mean_ilfbi_init = 0.0;
  double mean_ilfbi = 0.0;
  double increment = 0.0;  // mean_ilfbi - mean_ilfbi_init
};

// Buckets users by ILFBI-init into [b0,b1], (b1,b2], ... and compares with
// their ILFBI@k.
std::vector<UserGroupRow> user_group_report(const UserBubbleProfile& profile,
                                            std::span<const RankedList> lists,
                                            const CommunityAssignment& communities, int k,
                                            std::span<const double> bins = kDefaultGroupBins);

// TSV: node_type index community e_0 ... e_{d-1}, users then items.
void export_embeddings(const NodeTables& embeddings, const CommunityAssignment& communities,
                       const std::filesystem::path& path);

}  // namespace cdcgcn
