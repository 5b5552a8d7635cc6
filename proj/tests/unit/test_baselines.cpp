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
#include <cmath>
#include <numeric>
#include <set>

#include "cdcgcn/baselines.hpp"
#include "cdcgcn/synthetic.hpp"
#include "fixtures.hpp"

namespace cdcgcn {
namespace {

using testing::make_assignment;
using testing::make_dataset;

TEST(BaselineConfig, Ranges) {
  EXPECT_NO_THROW(BaselineConfig{}.validate());
  EXPECT_NO_THROW((BaselineConfig{.delta = 1.0}.validate()));
  EXPECT_THROW((BaselineConfig{.lambda = 1.5}.validate()), UsageError);
  EXPECT_THROW((BaselineConfig{.gamma = -1}.validate()), UsageError);
  EXPECT_THROW((BaselineConfig{.delta = 0.0}.validate()), UsageError);
  EXPECT_THROW((BaselineConfig{.pool_size = 0}.validate()), UsageError);
}

TEST(Mmr, LambdaOneIsScoreOrder) {
  const auto a = make_assignment({0}, {0, 0, 1, 1, 2, 2});
  const std::vector<Index> cand{0, 1, 2, 3, 4, 5};
  const std::vector<double> scores{0.3, 0.9, 0.1, 0.8, 0.5, 0.7};
  const auto out = mmr_rerank(0, cand, scores, a, 1.0, 6);
  EXPECT_EQ(out.items, (std::vector<Index>{1, 3, 5, 4, 0, 2}));
}

TEST(Mmr, LambdaZeroCyclesCommunities) {
  // items 0,1 in community 0; 2,3 in 1; 4,5 in 2; all scores equal
  const auto a = make_assignment({0}, {0, 0, 1, 1, 2, 2});
  const std::vector<Index> cand{0, 1, 2, 3, 4, 5};
  const std::vector<double> scores(6, 1.0);
  const auto out = mmr_rerank(0, cand, scores, a, 0.0, 6);
  // by hand: 0 (argmax, lowest id); then shares (1,0,0) pick 2; (1/2,1/2,0) pick 4;
  // then all shares 1/3 -> lowest index 1, then 3, then 5
  EXPECT_EQ(out.items, (std::vector<Index>{0, 2, 4, 1, 3, 5}));
  for (int start : {0, 3}) {
    std::set<Index> seen;
    for (int k = 0; k < 3; ++k) seen.insert(a.item_label(out.items[start + k]));
    EXPECT_EQ(seen.size(), 3u);
  }
}

// Exhaustive oracle: among all orderings, keep those where each position
// maximizes the greedy objective (ties broken as specified) given the prefix.
std::vector<Index> brute_force_greedy(const std::vector<Index>& cand, const std::vector<double>& s,
                                      const CommunityAssignment& a, double lambda) {
  std::vector<std::size_t> perm(cand.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Index> result;
  int matches = 0;
  do {
    bool ok = true;
    for (std::size_t step = 0; step < perm.size() && ok; ++step) {
      const auto value = [&](std::size_t c) {
        if (step == 0) return s[c];
        int same = 0;
        for (std::size_t p = 0; p < step; ++p) {
          same += a.item_label(cand[perm[p]]) == a.item_label(cand[c]);
        }
        return lambda * s[c] - (1 - lambda) * same / static_cast<double>(step);
      };
      const std::size_t chosen = perm[step];
      for (std::size_t r = step + 1; r < perm.size(); ++r) {
        const std::size_t other = perm[r];
        const double vc = value(chosen), vo = value(other);
        const bool other_wins =
            vo > vc || (vo == vc && (s[other] > s[chosen] ||
                                     (s[other] == s[chosen] && cand[other] < cand[chosen])));
        if (other_wins) ok = false;
      }
    }
    if (ok) {
      ++matches;
      result.clear();
      for (auto p : perm) result.push_back(cand[p]);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(matches, 1);
  return result;
}

TEST(Mmr, MatchesExhaustiveOracle) {
  const auto a = make_assignment({0}, {0, 1, 0, 1});
  const std::vector<Index> cand{0, 1, 2, 3};
  const std::vector<std::vector<double>> score_sets{
      {0.9, 0.1, 0.8, 0.7}, {0.5, 0.5, 0.5, 0.5}, {0.95, 0.2, 0.9, 0.3}, {0.1, 0.4, 0.3, 0.2}};
  for (const auto& s : score_sets) {
    for (double lambda : {0.0, 0.3, 0.5, 0.7, 1.0}) {
      EXPECT_EQ(mmr_rerank(0, cand, s, a, lambda, 4).items, brute_force_greedy(cand, s, a, lambda))
          << "lambda " << lambda;
    }
  }
}

TEST(Mmr, FirstIsTopOneAndNoDuplicates) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Index> labels(40);
  for (Index i = 0; i < 40; ++i) labels[i] = i % 5;
  const auto a = make_assignment({0}, labels);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Index> cand;
    std::vector<double> s;
    for (Index i = 0; i < 40; i += 1 + trial % 3) {
      cand.push_back(i);
      s.push_back(u(rng));
    }
    const double lambda = u(rng);
    const auto out = mmr_rerank(0, cand, s, a, lambda, 10);
    const auto top = std::max_element(s.begin(), s.end()) - s.begin();
    EXPECT_EQ(out.items.front(), cand[top]);
    std::set<Index> uniq(out.items.begin(), out.items.end());
    EXPECT_EQ(uniq.size(), out.items.size());
    for (Index i : out.items) EXPECT_NE(std::find(cand.begin(), cand.end(), i), cand.end());
  }
}

TEST(Mmr, ScoresAreRawCandidateScores) {
  const auto a = make_assignment({0}, {0, 0, 1});
  const std::vector<Index> cand{0, 1, 2};
  const std::vector<double> s{0.9, 0.8, 0.1};
  const auto out = mmr_rerank(0, cand, s, a, 0.0, 3);
  EXPECT_EQ(out.items, (std::vector<Index>{0, 2, 1}));
  EXPECT_EQ(out.scores, (std::vector<double>{0.9, 0.1, 0.8}));
}

TEST(Mmr, KBeyondPoolIsFlagged) {
  const auto a = make_assignment({0}, {0, 1});
  const std::vector<Index> cand{0, 1};
  const std::vector<double> s{0.2, 0.1};
  bool truncated = false;
  EXPECT_EQ(mmr_rerank(0, cand, s, a, 0.5, 5, &truncated).items.size(), 2u);
  EXPECT_TRUE(truncated);
  mmr_rerank(0, cand, s, a, 0.5, 2, &truncated);
  EXPECT_FALSE(truncated);
}

TEST(Mmr, RankUsesPoolAndMasksTrain) {
  const auto ds = make_dataset(1, 5, {{0, 0}});
  NodeTables t = NodeTables::zeros(1, 5, 1);
  t.user(0, 0) = 1.0;
  for (Index i = 0; i < 5; ++i) t.item(i, 0) = 5.0 - i;
  const auto a = make_assignment({0}, {0, 0, 0, 1, 1});
  const auto lists = mmr_rank(EmbeddingScorer(t), ds.graph, a, 0.0, 3, 3);
  // pool = {1, 2, 3}; item 0 is a train item
  EXPECT_EQ(lists[0].items, (std::vector<Index>{1, 3, 2}));
}

struct FairToy {
  InteractionDataset ds;
  CommunityAssignment a;
  EmbeddingModel model;
  std::vector<Triplet> batch;
};

FairToy fair_toy(BaseKind kind, std::uint64_t seed) {
  FairToy t{testing::random_dataset(5, 6, 0.4, seed), testing::random_assignment(5, 6, 2, seed),
            EmbeddingModel::initialize(kind, 5, 6, 8, 2, seed, 0.5), {}};
  std::mt19937_64 rng(seed);
  for (const auto& e : t.ds.train) {
    Index j;
    do j = static_cast<Index>(rng() % 6); while (t.ds.graph.has_edge(e.user, j));
    t.batch.push_back({e.user, e.item, j});
  }
  return t;
}

TEST(Fairness, GradientMatchesFiniteDifferences) {
  for (BaseKind kind : {BaseKind::kMF, BaseKind::kLightGCN}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      auto t = fair_toy(kind, s);
      PairwiseObjective obj;
      obj.fairness_gamma = 0.3;
      obj.communities = &t.a;
      const auto g = bpr_gradient(t.model, t.ds.graph, t.batch, 1e-3, obj);
      const auto loss = [&] { return bpr_gradient(t.model, t.ds.graph, t.batch, 1e-3, obj).loss.total(); };
      for (Table* table : {&t.model.tables.user, &t.model.tables.item}) {
        const Table& grad = table == &t.model.tables.user ? g.raw.user : g.raw.item;
        for (Eigen::Index k = 0; k < table->size(); ++k) {
          const double n = testing::central_difference(table->data() + k, loss);
          EXPECT_LE(testing::relative_error(grad.data()[k], n), 1e-5);
        }
      }
    }
  }
}

TEST(Fairness, GammaZeroMatchesBprStepBitForBit) {
  auto t1 = fair_toy(BaseKind::kLightGCN, 4);
  auto t2 = fair_toy(BaseKind::kLightGCN, 4);
  TrainingConfig cfg;
  cfg.learning_rate = 1e-2;
  AdamState a1, a2;
  for (int step = 0; step < 5; ++step) {
    const auto l1 = bpr_step(t1.model, a1, t1.ds.graph, t1.batch, cfg);
    const auto l2 = fairness_bpr_step(t2.model, a2, t2.ds.graph, t2.batch, t2.a, 0.0, cfg);
    EXPECT_EQ(l1.total(), l2.total());
  }
  EXPECT_EQ(t1.model.tables.user, t2.model.tables.user);
  EXPECT_EQ(t1.model.tables.item, t2.model.tables.item);
}

TEST(Fairness, SameCommunityPairIsPushedApart) {
  const auto ds = make_dataset(1, 2, {{0, 0}});
  const auto a = make_assignment({0}, {0, 0});
  auto model = EmbeddingModel::initialize(BaseKind::kMF, 1, 2, 4, 0, 3, 0.1);
  const std::vector<Triplet> batch{{0, 0, 1}};
  PairwiseObjective obj;
  obj.fairness_gamma = 1.0;
  obj.communities = &a;
  auto reg_only = [&](const NodeTables& base, NodeTables* grad) {
    const auto full = pairwise_loss(base, batch, obj, grad);
    return full.fairness;
  };
  NodeTables grad = NodeTables::zeros(1, 2, 4);
  reg_only(model.tables, &grad);
  // isolate the regularizer gradient by removing the ranking part
  NodeTables rank_grad = NodeTables::zeros(1, 2, 4);
  pairwise_loss(model.tables, batch, {}, &rank_grad);
  const double before = (model.tables.item.row(0) - model.tables.item.row(1)).norm();
  const Table step = model.tables.item - 1e-3 * (grad.item - rank_grad.item);
  EXPECT_GT((step.row(0) - step.row(1)).norm(), before);
}

TEST(Fairness, CrossCommunityPairIsPulledTogether) {
  const auto a = make_assignment({0}, {0, 1});
  auto model = EmbeddingModel::initialize(BaseKind::kMF, 1, 2, 4, 0, 3, 0.1);
  const std::vector<Triplet> batch{{0, 0, 1}};
  PairwiseObjective obj;
  obj.fairness_gamma = 1.0;
  obj.communities = &a;
  NodeTables grad = NodeTables::zeros(1, 2, 4), rank_grad = NodeTables::zeros(1, 2, 4);
  pairwise_loss(model.tables, batch, obj, &grad);
  pairwise_loss(model.tables, batch, {}, &rank_grad);
  const double before = (model.tables.item.row(0) - model.tables.item.row(1)).norm();
  const Table step = model.tables.item - 1e-3 * (grad.item - rank_grad.item);
  EXPECT_LT((step.row(0) - step.row(1)).norm(), before);
}

TEST(Fairness, CoincidentItemsHaveZeroNormGradient) {
  const auto a = make_assignment({0}, {0, 0});
  NodeTables t = NodeTables::zeros(1, 2, 3);
  t.user.setConstant(0.2);
  t.item.setConstant(0.5);
  const std::vector<Triplet> batch{{0, 0, 1}};
  PairwiseObjective obj;
  obj.fairness_gamma = 2.0;
  obj.communities = &a;
  NodeTables g = NodeTables::zeros(1, 2, 3), plain = NodeTables::zeros(1, 2, 3);
  const auto loss = pairwise_loss(t, batch, obj, &g);
  pairwise_loss(t, batch, {}, &plain);
  EXPECT_EQ(loss.fairness, 0.0);
  EXPECT_EQ(g.item, plain.item);
}

TEST(Fairness, MissingCommunitiesIsUsageError) {
  const NodeTables t = NodeTables::zeros(1, 2, 2);
  PairwiseObjective obj;
  obj.fairness_gamma = 1.0;
  const std::vector<Triplet> batch{{0, 0, 1}};
  EXPECT_THROW(pairwise_loss(t, batch, obj, nullptr), UsageError);
}

TEST(Ips, WeightsFollowCommunityMatch) {
  const auto a = make_assignment({0, 1}, {0, 1, 1});
  const std::vector<Triplet> batch{{0, 0, 1}, {0, 1, 2}, {1, 2, 0}, {1, 0, 2}};
  EXPECT_EQ(ips_weights(batch, a, 0.25), (std::vector<double>{1.0, 4.0, 1.0, 4.0}));
}

TEST(Ips, DeltaOneMatchesBprStepBitForBit) {
  auto t1 = fair_toy(BaseKind::kLightGCN, 5);
  auto t2 = fair_toy(BaseKind::kLightGCN, 5);
  TrainingConfig cfg;
  cfg.learning_rate = 1e-2;
  AdamState a1, a2;
  for (int step = 0; step < 5; ++step) {
    bpr_step(t1.model, a1, t1.ds.graph, t1.batch, cfg);
    ips_bpr_step(t2.model, a2, t2.ds.graph, t2.batch, t2.a, 1.0, cfg);
  }
  EXPECT_EQ(t1.model.tables.user, t2.model.tables.user);
  EXPECT_EQ(t1.model.tables.item, t2.model.tables.item);
}

TEST(Ips, CrossCommunityGradientDoublesAtHalfDelta) {
  const auto a = make_assignment({0}, {1, 0});
  const auto model = EmbeddingModel::initialize(BaseKind::kMF, 1, 2, 4, 0, 8, 0.3);
  const std::vector<Triplet> batch{{0, 0, 1}};
  const auto w = ips_weights(batch, a, 0.5);
  PairwiseObjective weighted;
  weighted.triplet_weights = w;
  NodeTables g1 = NodeTables::zeros(1, 2, 4), g2 = NodeTables::zeros(1, 2, 4);
  const auto plain = pairwise_loss(model.tables, batch, {}, &g1);
  const auto scaled = pairwise_loss(model.tables, batch, weighted, &g2);
  EXPECT_EQ(g2.user, Table(2.0 * g1.user));
  EXPECT_EQ(g2.item, Table(2.0 * g1.item));
  EXPECT_EQ(scaled.ranking, 2.0 * plain.ranking);
}

TEST(Ips, MixedBatchLossIsWeightedSum) {
  auto t = fair_toy(BaseKind::kMF, 6);
  const auto w = ips_weights(t.batch, t.a, 0.3);
  double expect = 0.0;
  for (std::size_t k = 0; k < t.batch.size(); ++k) {
    const auto& tr = t.batch[k];
    const double x = t.model.tables.user.row(tr.user).dot(t.model.tables.item.row(tr.pos)) -
                     t.model.tables.user.row(tr.user).dot(t.model.tables.item.row(tr.neg));
    expect += w[k] * std::log1p(std::exp(-x));
  }
  PairwiseObjective obj;
  obj.triplet_weights = w;
  EXPECT_NEAR(pairwise_loss(t.model.tables, t.batch, obj, nullptr).ranking, expect, 1e-12);
  EXPECT_TRUE(std::any_of(w.begin(), w.end(), [](double v) { return v != 1.0; }));
}

TEST(Baselines, TrainersReachPositiveRecall) {
  const auto ds = split_dataset(generate_planted({.users = 100, .items = 150, .communities = 3,
                                                  .mean_degree = 20, .seed = 3}),
                                {}, 42);
  const auto a = detect_communities(ds.graph, {.seed = 1});
  TrainingConfig cfg;
  cfg.kind = BaseKind::kMF;
  cfg.dim = 16;
  cfg.batch_size = 256;
  cfg.learning_rate = 1e-2;
  for (const auto& factory : {fairness_objective(a, 0.1), ips_objective(a, 0.5)}) {
    BprTrainer trainer(ds, nullptr, cfg, factory);
    std::mt19937_64 rng(epoch_stream_seed(cfg.seed));
    for (int e = 0; e < 10; ++e) trainer.train_epoch(rng);
    EXPECT_GT(validate(EmbeddingScorer(base_embeddings(trainer.model(), ds.graph)), ds, &a).recall20, 0.0);
  }
}

}  // namespace
}  // namespace cdcgcn
