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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cdcgcn/metrics.hpp"

namespace cdcgcn {

struct MetricsAtK {
  int k = 0;
  double precision = 0.0;
  double recall = 0.0;
  double ndcg = 0.0;
  double ilfbi = 0.0;
  double cgi = 0.0;
  double cgi_pooled = 0.0;
};

struct MetricsReport {
  std::vector<MetricsAtK> at_k;
  std::vector<std::pair<std::string, std::string>> metadata;

  const MetricsAtK& at(int k) const;
  void set_meta(const std::string& key, const std::string& value);

  // Aligned human-readable table.
  std::string to_table() const;
  // key=value lines: meta.<key>=..., k<k>.<metric>=...
  std::string to_key_values() const;
  static MetricsReport from_key_values(const std::string& text);

  void save(const std::filesystem::path& kv_path) const;  // also writes <stem>.txt
  static MetricsReport load(const std::filesystem::path& kv_path);
};

// Accuracy and bubble metrics at each k from lists of length >= max(ks).
MetricsReport evaluate_lists(std::span<const RankedList> lists,
                             const std::vector<std::vector<Index>>& test_by_user,
                             const CommunityAssignment& communities, std::span<const int> ks);

inline constexpr int kDefaultKValues[] = {20, 100};

MetricsReport evaluate(const Scorer& scorer, const InteractionDataset& dataset,
                       std::span<const Interaction> test, const CommunityAssignment& communities,
                       std::span<const int> ks = kDefaultKValues);

}  // namespace cdcgcn
