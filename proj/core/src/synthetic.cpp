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

#include "cdcgcn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_set>

#include <fmt/core.h>

namespace cdcgcn {

void PlantedCommunityConfig::validate() const {
  if (users <= 0 || items <= 0) throw UsageError("users and items must be positive");
  if (communities <= 0 || communities > items) {
    throw UsageError("communities must be in [1, items]");
  }
  if (home_share < 0.0 || secondary_share < 0.0 || home_share + secondary_share > 1.0) {
    throw UsageError("community shares must be non-negative and sum to at most 1");
  }
  if (min_degree <= 0 || mean_degree < min_degree) {
    throw UsageError("need 0 < min_degree <= mean_degree");
  }
  if (mean_degree >= items) throw UsageError("mean_degree must be below the item count");
}

RawEdges generate_planted(const PlantedCommunityConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  const auto c_count = static_cast<std::size_t>(config.communities);

  std::vector<std::vector<Index>> members(c_count);
  for (Index i = 0; i < config.items; ++i) members[static_cast<std::size_t>(i) % c_count].push_back(i);
  std::vector<std::discrete_distribution<std::size_t>> popularity;
  for (const auto& group : members) {
    std::vector<double> w(group.size());
    for (std::size_t r = 0; r < w.size(); ++r) {
      w[r] = std::pow(static_cast<double>(r + 1), -config.popularity_exponent);
    }
    popularity.emplace_back(w.begin(), w.end());
  }

  std::geometric_distribution<int> extra(
      1.0 / (1.0 + config.mean_degree - static_cast<double>(config.min_degree)));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any_community(0, c_count - 1);

  RawEdges raw;
  for (Index i = 0; i < config.items; ++i) raw.items.intern(fmt::format("i{}", i));
  for (Index u = 0; u < config.users; ++u) {
    const Index user = raw.users.intern(fmt::format("u{}", u));
    const std::size_t home = static_cast<std::size_t>(u) % c_count;
    const std::size_t secondary =
        c_count > 1 ? (home + 1 + static_cast<std::size_t>(u / config.communities) % (c_count - 1)) %
                          c_count
                    : home;
    const int degree =
        std::min<int>(config.min_degree + extra(rng), static_cast<int>(config.items) / 2);
    std::unordered_set<Index> chosen;
    int attempts = 0;
    while (static_cast<int>(chosen.size()) < degree && attempts < 100 * degree) {
      ++attempts;
      const double x = coin(rng);
      std::size_t c = x < config.home_share                            ? home
                      : x < config.home_share + config.secondary_share ? secondary
                                                                       : any_community(rng);
      const Index item = members[c][popularity[c](rng)];
      chosen.insert(item);
    }
    std::vector<Index> sorted(chosen.begin(), chosen.end());
    std::sort(sorted.begin(), sorted.end());
    for (Index item : sorted) raw.edges.push_back({user, item});
  }
  return raw;
}

void write_interactions(const std::filesystem::path& path, const RawEdges& raw) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  for (const auto& e : raw.edges) {
    out << raw.users.external(e.user) << '\t' << raw.items.external(e.item) << '\n';
  }
  if (!out) throw DataError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace cdcgcn
