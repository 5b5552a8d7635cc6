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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "cdcgcn/dataset.hpp"

namespace cdcgcn {

namespace {

std::size_t floor_share(std::size_t n, double ratio) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio + 1e-9));
}

void check_ratios(const SplitRatios& r) {
  if (r.train <= 0.0 || r.val < 0.0 || r.test < 0.0 ||
      std::abs(r.train + r.val + r.test - 1.0) > 1e-9) {
    throw UsageError(fmt::format("split ratios must be non-negative and sum to 1, got {}/{}/{}",
                                 r.train, r.val, r.test));
  }
}

}  // namespace

InteractionDataset split_dataset(const RawEdges& raw, const SplitRatios& ratios,
                                 std::uint64_t seed, SplitMode mode) {
  check_ratios(ratios);
  const Index m = raw.users.size();
  auto per_user = InteractionDataset::group_by_user(raw.edges, m);

  std::vector<Interaction> train, val, test;
  if (mode == SplitMode::kPerUser) {
    for (Index u = 0; u < m; ++u) {
      auto& items = per_user[u];
      if (items.empty()) {
        throw DataError(fmt::format("user '{}' has no interactions", raw.users.external(u)));
      }
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(u)));
      std::shuffle(items.begin(), items.end(), rng);
      const std::size_t n = items.size();
      std::size_t n_val = 0, n_test = 0;
      if (n >= 3) {
        n_val = floor_share(n, ratios.val);
        n_test = floor_share(n, ratios.test);
      }
      const std::size_t n_train = n - n_val - n_test;
      for (std::size_t k = 0; k < n; ++k) {
        const Interaction e{u, items[k]};
        if (k < n_train) {
          train.push_back(e);
        } else if (k < n_train + n_val) {
          val.push_back(e);
        } else {
          test.push_back(e);
        }
      }
    }
  } else {
    std::vector<Interaction> edges = raw.edges;
    std::sort(edges.begin(), edges.end());
    std::mt19937_64 rng(seed);
    std::shuffle(edges.begin(), edges.end(), rng);
    const std::size_t n_val = floor_share(edges.size(), ratios.val);
    const std::size_t n_test = floor_share(edges.size(), ratios.test);
    const std::size_t n_train = edges.size() - n_val - n_test;
    train.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(n_train));
    val.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_train),
               edges.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    test.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), edges.end());
    // users left without a train edge take their first held-out edge back
    std::vector<bool> has_train(static_cast<std::size_t>(m), false);
    for (const auto& e : train) has_train[e.user] = true;
    for (auto* held : {&val, &test}) {
      std::vector<Interaction> kept;
      for (const auto& e : *held) {
        if (!has_train[e.user]) {
          train.push_back(e);
          has_train[e.user] = true;
        } else {
          kept.push_back(e);
        }
      }
      *held = std::move(kept);
    }
  }
  std::sort(train.begin(), train.end());
  std::sort(val.begin(), val.end());
  std::sort(test.begin(), test.end());
  return assemble_dataset(raw.users, raw.items, std::move(train), std::move(val), std::move(test));
}

void write_edge_list(const std::filesystem::path& path, std::span<const Interaction> edges) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  for (const auto& e : edges) out << e.user << '\t' << e.item << '\n';
}

std::vector<Interaction> read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::vector<Interaction> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    Interaction e;
    if (!(fields >> e.user >> e.item)) {
      throw DataError(fmt::format("{}:{}: malformed edge '{}'", path.string(), line_no, line));
    }
    edges.push_back(e);
  }
  return edges;
}

namespace {

void write_id_map(const std::filesystem::path& path, const IdMap& ids) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  for (Index k = 0; k < ids.size(); ++k) out << k << '\t' << ids.external(k) << '\n';
}

IdMap read_id_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  IdMap ids;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(fmt::format("{}: malformed id line '{}'", path.string(), line));
    }
    const Index expect = ids.size();
    if (std::stoi(line.substr(0, tab)) != expect || ids.intern(line.substr(tab + 1)) != expect) {
      throw DataError(fmt::format("{}: id map is not dense at line '{}'", path.string(), line));
    }
  }
  return ids;
}

}  // namespace

void write_split(const InteractionDataset& ds, const std::filesystem::path& dir,
                 std::uint64_t seed, const SplitRatios& ratios) {
  std::filesystem::create_directories(dir);
  write_edge_list(dir / "train.tsv", ds.train);
  write_edge_list(dir / "val.tsv", ds.val);
  write_edge_list(dir / "test.tsv", ds.test);
  write_id_map(dir / "users.tsv", ds.users);
  write_id_map(dir / "items.tsv", ds.items);
  nlohmann::ordered_json meta;
  meta["seed"] = seed;
  meta["ratios"] = {ratios.train, ratios.val, ratios.test};
  meta["num_users"] = ds.num_users;
  meta["num_items"] = ds.num_items;
  meta["train"] = ds.train.size();
  meta["val"] = ds.val.size();
  meta["test"] = ds.test.size();
  std::ofstream out(dir / "meta.json", std::ios::binary | std::ios::trunc);
  out << meta.dump(2) << '\n';
}

InteractionDataset read_split(const std::filesystem::path& dir) {
  return assemble_dataset(read_id_map(dir / "users.tsv"), read_id_map(dir / "items.tsv"),
                          read_edge_list(dir / "train.tsv"), read_edge_list(dir / "val.tsv"),
                          read_edge_list(dir / "test.tsv"));
}

}  // namespace cdcgcn
