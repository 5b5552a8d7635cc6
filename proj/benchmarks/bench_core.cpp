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

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "cdcgcn/cgcn.hpp"
#include "cdcgcn/metrics.hpp"
#include "cdcgcn/synthetic.hpp"
#include "cdcgcn/trainer.hpp"

namespace {

using namespace cdcgcn;

const InteractionDataset& dataset(int users) {
  static std::map<int, InteractionDataset> cache;
  auto it = cache.find(users);
  if (it == cache.end()) {
    PlantedCommunityConfig g;
    g.users = users;
    g.items = 2 * users;
    it = cache.emplace(users, split_dataset(generate_planted(g), {}, 42)).first;
  }
  return it->second;
}

void BM_LightGcnPropagation(benchmark::State& state) {
  const auto& ds = dataset(static_cast<int>(state.range(0)));
  const auto coef = lightgcn_coefficients(ds.graph);
  const auto x = EmbeddingModel::initialize(BaseKind::kLightGCN, ds.num_users, ds.num_items, 64, 3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_sum(ds.graph, coef, x.tables, 3, 0.25));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ds.graph.num_edges()));
}
BENCHMARK(BM_LightGcnPropagation)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_CgcnPropagation(benchmark::State& state) {
  const auto& ds = dataset(static_cast<int>(state.range(0)));
  const auto a = detect_communities(ds.graph, {.seed = 1});
  const auto coef = cgcn_coefficients(ds.graph, compatibility(ds.graph, a));
  const auto x = EmbeddingModel::initialize(BaseKind::kMF, ds.num_users, ds.num_items, 64, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cgcn_propagate(x.tables, ds.graph, coef, 2));
}
BENCHMARK(BM_CgcnPropagation)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Louvain(benchmark::State& state) {
  const auto& ds = dataset(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(detect_communities(ds.graph, {.seed = 1}));
}
BENCHMARK(BM_Louvain)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RankTopk(benchmark::State& state) {
  const auto& ds = dataset(static_cast<int>(state.range(0)));
  const EmbeddingScorer scorer(
      EmbeddingModel::initialize(BaseKind::kMF, ds.num_users, ds.num_items, 64, 0, 1).tables);
  for (auto _ : state) benchmark::DoNotOptimize(rank_topk(scorer, ds.graph, 100));
}
BENCHMARK(BM_RankTopk)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_CdcgcnEpoch(benchmark::State& state) {
  const auto& ds = dataset(500);
  const auto a = detect_communities(ds.graph, {.seed = 1});
  TrainingConfig cfg;
  cfg.alpha = 0.3;
  cfg.beta = 0.5;
  CdcgcnTrainer trainer(ds, a, cfg, {});
  std::mt19937_64 rng(epoch_stream_seed(cfg.seed));
  for (auto _ : state) benchmark::DoNotOptimize(trainer.train_epoch(rng));
}
BENCHMARK(BM_CdcgcnEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
