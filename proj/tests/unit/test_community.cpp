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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "cdcgcn/community.hpp"
#include "cdcgcn/synthetic.hpp"
#include "fixtures.hpp"

namespace cdcgcn {
namespace {

using testing::make_assignment;
using testing::make_dataset;

InteractionDataset two_four_cycles() {
  return make_dataset(4, 4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}});
}

TEST(Modularity, SingleCommunityIsZero) {
  const auto ds = two_four_cycles();
  const std::vector<Index> labels(8, 0);
  auto a = make_assignment({0, 0, 0, 0}, {0, 0, 0, 0});
  EXPECT_NEAR(modularity(ds.graph, a), 0.0, 1e-15);
  EXPECT_NEAR(testing::dense_modularity(ds.graph, labels), 0.0, 1e-15);
}

TEST(Modularity, TwoDisjointCliquesSplitCorrectly) {
  // each cycle holds half the edges and half the degree: 2 * (1/2 - 1/4)
  const auto ds = two_four_cycles();
  const auto a = make_assignment({0, 0, 1, 1}, {0, 0, 1, 1});
  EXPECT_NEAR(modularity(ds.graph, a), 0.5, 1e-12);
  EXPECT_NEAR(testing::dense_modularity(ds.graph, a.labels), 0.5, 1e-12);
}

TEST(Modularity, MatchesDenseOracleOnRandomLabels) {
  const auto ds = testing::random_dataset(6, 7, 0.4, 11);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = testing::random_assignment(6, 7, 3, s);
    EXPECT_NEAR(modularity(ds.graph, a), testing::dense_modularity(ds.graph, a.labels), 1e-12);
  }
}

TEST(Modularity, SelfLoopConvention) {
  WeightedGraph g(2);
  g.add_edge(0, 0, 1.0);
  g.add_edge(0, 1, 1.0);
  // A_00 = 2, A_01 = 1: degrees 3 and 1, 2m = 4
  EXPECT_DOUBLE_EQ(g.degree(0), 3.0);
  EXPECT_DOUBLE_EQ(g.total_weight(), 4.0);
  const std::vector<Index> apart{0, 1};
  EXPECT_NEAR(modularity(g, apart), (2.0 - 9.0 / 4.0 + 0.0 - 1.0 / 4.0) / 4.0, 1e-15);
}

TEST(Louvain, TwoDisjointFourCycles) {
  const auto ds = two_four_cycles();
  const auto a = detect_communities(ds.graph, {.seed = 3});
  EXPECT_EQ(a.num_communities, 2);
  EXPECT_EQ(a.user_label(0), a.item_label(0));
  EXPECT_EQ(a.user_label(1), a.item_label(1));
  EXPECT_NE(a.user_label(0), a.user_label(2));
  EXPECT_NEAR(a.modularity, testing::brute_force_max_modularity(ds.graph), 1e-12);
}

TEST(Louvain, CompleteBipartiteIsOneCommunity) {
  const auto ds = make_dataset(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto a = detect_communities(ds.graph, {});
  EXPECT_EQ(a.num_communities, 1);
  EXPECT_NEAR(a.modularity, testing::brute_force_max_modularity(ds.graph), 1e-12);
}

TEST(Louvain, NeverExceedsBruteForceOnSmallGraphs) {
  const auto graphs = testing::louvain_fixture_graphs(7, 6, 5);
  std::size_t optimal = 0;
  for (const auto& ds : graphs) {
    const double best = testing::brute_force_max_modularity(ds.graph);
    const auto a = detect_communities(ds.graph, {.seed = 1});
    EXPECT_LE(a.modularity, best + 1e-12);
    EXPECT_NEAR(a.modularity, testing::dense_modularity(ds.graph, a.labels), 1e-12);
    optimal += a.modularity >= best - 1e-12 ? 1 : 0;
  }
  EXPECT_GT(optimal, graphs.size() * 8 / 10);
}

TEST(Louvain, EightCycleStopsAtPairs) {
  // every pair merge at the aggregated level has zero gain, so the 3+3+2
  // optimum (Q = 9/32) is out of reach of greedy moves
  const auto ds = make_dataset(4, 4, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3},
                                      {3, 0}});
  EXPECT_NEAR(testing::brute_force_max_modularity(ds.graph), 9.0 / 32.0, 1e-12);
  EXPECT_NEAR(detect_communities(ds.graph, {.seed = 0}).modularity, 0.25, 1e-12);
}

TEST(Louvain, LabelsContiguousAndSizeDescending) {
  const auto ds = split_dataset(generate_planted({}), {}, 42);
  const auto a = detect_communities(ds.graph, {.seed = 42});
  std::vector<std::size_t> sizes(static_cast<std::size_t>(a.num_communities), 0);
  for (Index l : a.labels) {
    ASSERT_GE(l, 0);
    ASSERT_LT(l, a.num_communities);
    ++sizes[l];
  }
  for (std::size_t c = 0; c < sizes.size(); ++c) EXPECT_GT(sizes[c], 0u);
  for (std::size_t c = 1; c < sizes.size(); ++c) EXPECT_GE(sizes[c - 1], sizes[c]);
  EXPECT_GE(a.modularity, -0.5);
  EXPECT_LE(a.modularity, 1.0);
  EXPECT_NEAR(a.modularity, modularity(ds.graph, a), 1e-12);
}

TEST(Louvain, LevelModularityNonDecreasing) {
  const auto ds = split_dataset(generate_planted({}), {}, 1);
  const auto a = detect_communities(ds.graph, {.seed = 9});
  ASSERT_FALSE(a.level_modularity.empty());
  for (std::size_t k = 1; k < a.level_modularity.size(); ++k) {
    EXPECT_GE(a.level_modularity[k], a.level_modularity[k - 1] - 1e-12);
  }
}

TEST(Louvain, RecoversPlantedCommunities) {
  PlantedCommunityConfig cfg;
  cfg.home_share = 0.9;
  cfg.secondary_share = 0.05;
  const auto ds = split_dataset(generate_planted(cfg), {}, 42);
  const auto a = detect_communities(ds.graph, {.seed = 42});
  EXPECT_GE(a.num_communities, 4);
  EXPECT_LE(a.num_communities, 10);
  EXPECT_GT(a.modularity, 0.4);
}

TEST(Louvain, RandomLabelsNeverBeatLouvain) {
  const auto ds = split_dataset(generate_planted({}), {}, 42);
  const auto a = detect_communities(ds.graph, {.seed = 42});
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto r = testing::random_assignment(ds.num_users, ds.num_items, a.num_communities, s);
    EXPECT_LE(modularity(ds.graph, r), a.modularity);
  }
}

TEST(Louvain, DeterministicForSeed) {
  const auto ds = split_dataset(generate_planted({}), {}, 42);
  EXPECT_EQ(detect_communities(ds.graph, {.seed = 4}).labels,
            detect_communities(ds.graph, {.seed = 4}).labels);
}

TEST(Louvain, IsolatedItemsFoldIntoCommunityZero) {
  const auto ds = make_dataset(2, 4, {{0, 0}, {0, 1}, {1, 1}});
  const auto a = detect_communities(ds.graph, {});
  EXPECT_EQ(a.item_label(2), 0);
  EXPECT_EQ(a.item_label(3), 0);
  for (Index l : a.labels) EXPECT_LT(l, a.num_communities);
}

TEST(Compatibility, AllSameCommunityIsOne) {
  const auto ds = make_dataset(1, 2, {{0, 0}, {0, 1}});
  const auto a = make_assignment({1}, {1, 1});
  const auto w = compatibility(ds.graph, a);
  EXPECT_DOUBLE_EQ(w.user_side[0], 1.0);
  EXPECT_DOUBLE_EQ(w.user_norm[0], 2.0);
}

TEST(Compatibility, OneOfThree) {
  const auto ds = make_dataset(1, 3, {{0, 0}, {0, 1}, {0, 2}});
  const auto a = make_assignment({1}, {1, 1, 2});
  const auto w = compatibility(ds.graph, a);
  EXPECT_DOUBLE_EQ(w.user_side[2], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.user_side[0], 2.0 / 3.0);
  // item side: the single neighbor u is in C_1
  EXPECT_DOUBLE_EQ(w.item_side[2], 1.0);
}

TEST(Compatibility, PropertiesOnRandomGraph) {
  const auto ds = testing::random_dataset(30, 40, 0.15, 8);
  const auto a = testing::random_assignment(30, 40, 4, 8);
  const auto w = compatibility(ds.graph, a);
  const auto profile = ilfbi_init(ds.graph, a);
  for (Index u = 0; u < ds.num_users; ++u) {
    const auto items = ds.graph.user_neighbors(u);
    const std::size_t base = ds.graph.user_edge_begin(u);
    std::map<Index, double> by_community;
    for (std::size_t k = 0; k < items.size(); ++k) {
      const double h = w.user_side[base + k];
      EXPECT_GT(h, 0.0);
      EXPECT_LE(h, 1.0);
      EXPECT_GE(h, 1.0 / items.size() - 1e-15);
      by_community[a.item_label(items[k])] = h;
      if (a.item_label(items[k]) == a.user_label(u)) {
        EXPECT_DOUBLE_EQ(profile.ilfbi_init[u], h);
      }
    }
    double total = 0.0;
    for (const auto& [c, h] : by_community) total += h;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  for (std::size_t e = 0; e < w.item_side.size(); ++e) {
    EXPECT_GT(w.item_side[e], 0.0);
    EXPECT_LE(w.item_side[e], 1.0);
  }
}

TEST(IlfbiInit, EightOfTen) {
  std::vector<Interaction> edges;
  for (Index i = 0; i < 10; ++i) edges.push_back({0, i});
  const auto ds = make_dataset(1, 10, edges);
  const auto a = make_assignment({0}, {0, 0, 0, 0, 0, 0, 0, 0, 1, 1});
  const auto p = ilfbi_init(ds.graph, a);
  EXPECT_DOUBLE_EQ(p.ilfbi_init[0], 0.8);
  EXPECT_DOUBLE_EQ(p.mean_ilfbi_init, 0.8);
}

TEST(IlfbiInit, MeanMatchesPerUser) {
  const auto ds = testing::random_dataset(20, 20, 0.3, 2);
  const auto a = testing::random_assignment(20, 20, 3, 2);
  const auto p = ilfbi_init(ds.graph, a);
  double sum = 0.0;
  for (double v : p.ilfbi_init) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    sum += v;
  }
  EXPECT_NEAR(p.mean_ilfbi_init, sum / 20.0, 1e-15);
}

TEST(CommunitiesFile, RoundTrips) {
  const auto ds = split_dataset(generate_planted({}), {}, 42);
  const auto a = detect_communities(ds.graph, {.seed = 42});
  const auto path = std::filesystem::temp_directory_path() / "cdcgcn_communities.tsv";
  write_communities(path, ds, a);
  const auto back = read_communities(path, ds);
  EXPECT_EQ(back.labels, a.labels);
  EXPECT_EQ(back.num_communities, a.num_communities);
  EXPECT_NEAR(back.modularity, a.modularity, 1e-12);
}

}  // namespace
}  // namespace cdcgcn
