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

#include "cdcgcn/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

namespace cdcgcn {

const MetricsAtK& MetricsReport::at(int k) const {
  for (const auto& row : at_k) {
    if (row.k == k) return row;
  }
  throw UsageError(fmt::format("report has no metrics at k={}", k));
}

void MetricsReport::set_meta(const std::string& key, const std::string& value) {
  for (auto& [existing, v] : metadata) {
    if (existing == key) {
      v = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

std::string MetricsReport::to_table() const {
  std::string out;
  for (const auto& [key, value] : metadata) out += fmt::format("{:<12} {}\n", key, value);
  out += fmt::format("{:>5} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n", "k", "precision",
                     "recall", "ndcg", "ilfbi", "cgi", "cgi_pool");
  for (const auto& m : at_k) {
    out += fmt::format("{:>5} {:>10.4f} {:>10.4f} {:>10.4f} {:>10.4f} {:>10.4f} {:>10.4f}\n", m.k,
                       m.precision, m.recall, m.ndcg, m.ilfbi, m.cgi, m.cgi_pooled);
  }
  return out;
}

std::string MetricsReport::to_key_values() const {
  std::string out;
  for (const auto& [key, value] : metadata) out += fmt::format("meta.{}={}\n", key, value);
  for (const auto& m : at_k) {
    out += fmt::format("k{0}.precision={1:.17g}\nk{0}.recall={2:.17g}\nk{0}.ndcg={3:.17g}\n"
                       "k{0}.ilfbi={4:.17g}\nk{0}.cgi={5:.17g}\nk{0}.cgi_pooled={6:.17g}\n",
                       m.k, m.precision, m.recall, m.ndcg, m.ilfbi, m.cgi, m.cgi_pooled);
  }
  return out;
}

MetricsReport MetricsReport::from_key_values(const std::string& text) {
  MetricsReport report;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError(fmt::format("malformed report line '{}'", line));
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key.rfind("meta.", 0) == 0) {
      report.metadata.emplace_back(key.substr(5), value);
      continue;
    }
    const auto dot = key.find('.');
    if (key.empty() || key[0] != 'k' || dot == std::string::npos) {
      throw DataError(fmt::format("unknown report key '{}'", key));
    }
    const int k = std::stoi(key.substr(1, dot - 1));
    auto it = std::find_if(report.at_k.begin(), report.at_k.end(),
                           [k](const MetricsAtK& m) { return m.k == k; });
    if (it == report.at_k.end()) {
      report.at_k.push_back({.k = k});
      it = std::prev(report.at_k.end());
    }
    const std::string metric = key.substr(dot + 1);
    const double v = std::stod(value);
    if (metric == "precision") it->precision = v;
    else if (metric == "recall") it->recall = v;
    else if (metric == "ndcg") it->ndcg = v;
    else if (metric == "ilfbi") it->ilfbi = v;
    else if (metric == "cgi") it->cgi = v;
    else if (metric == "cgi_pooled") it->cgi_pooled = v;
    else throw DataError(fmt::format("unknown report metric '{}'", metric));
  }
  return report;
}

void MetricsReport::save(const std::filesystem::path& kv_path) const {
  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
    out << text;
  };
  write(kv_path, to_key_values());
  auto table_path = kv_path;
  table_path.replace_extension(".txt");
  write(table_path, to_table());
}

MetricsReport MetricsReport::load(const std::filesystem::path& kv_path) {
  std::ifstream in(kv_path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read report '{}'", kv_path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return from_key_values(text.str());
}

MetricsReport evaluate_lists(std::span<const RankedList> lists,
                             const std::vector<std::vector<Index>>& test_by_user,
                             const CommunityAssignment& communities, std::span<const int> ks) {
  MetricsReport report;
  for (int k : ks) {
    const auto acc = precision_recall_ndcg(lists, test_by_user, k);
    report.at_k.push_back({.k = k,
                           .precision = acc.precision,
                           .recall = acc.recall,
                           .ndcg = acc.ndcg,
                           .ilfbi = ilfbi_at_k(lists, communities, k),
                           .cgi = cgi_at_k(lists, communities, k, CgiAggregation::kPerUser),
                           .cgi_pooled = cgi_at_k(lists, communities, k, CgiAggregation::kPooled)});
  }
  return report;
}

MetricsReport evaluate(const Scorer& scorer, const InteractionDataset& dataset,
                       std::span<const Interaction> test, const CommunityAssignment& communities,
                       std::span<const int> ks) {
  if (ks.empty()) throw UsageError("no cutoffs requested");
  const int depth = *std::max_element(ks.begin(), ks.end());
  const auto lists = rank_topk(scorer, dataset.graph, depth);
  const auto test_by_user = InteractionDataset::group_by_user(test, dataset.num_users);
  return evaluate_lists(lists, test_by_user, communities, ks);
}

}  // namespace cdcgcn
