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

#include "cdcgcn/dataset.hpp"

namespace cdcgcn {

// Interaction log with planted user/item communities. Each interaction falls
// in the user's home community with probability home_share, in one fixed
// secondary community with probability secondary_share, and anywhere
// otherwise. Within a community, item popularity follows a power law.
struct PlantedCommunityConfig {
  Index users = 600;
  Index items = 1200;
  Index communities = 6;
  double home_share = 0.75;
  double secondary_share = 0.15;
  int min_degree = 10;
  double mean_degree = 40.0;
  double popularity_exponent = 0.8;
  std::uint64_t seed = 7;

  void validate() const;
};

RawEdges generate_planted(const PlantedCommunityConfig& config);

// Writes "<user>\t<item>" lines readable by load_interactions.
void write_interactions(const std::filesystem::path& path, const RawEdges& raw);

}  // namespace cdcgcn
