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

#include "cdcgcn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/core.h>

namespace cdcgcn {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Index IdMap::intern(std::string_view external) {
  auto it = index_.find(std::string(external));
  if (it != index_.end()) return it->second;
  const auto idx = static_cast<Index>(external_.size());
  external_.emplace_back(external);
  index_.emplace(external_.back(), idx);
  return idx;
}

Index IdMap::find(std::string_view external) const {
  auto it = index_.find(std::string(external));
  return it == index_.end() ? -1 : it->second;
}

InputFormat parse_input_format(std::string_view tag) {
  if (tag == "plain" || tag == "tsv" || tag == "txt") return InputFormat::kPlain;
  if (tag == "hetrec") return InputFormat::kHetrec;
  throw UsageError(fmt::format("unknown input format '{}' (expected plain|tsv|hetrec)", tag));
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

}  // namespace

RawEdges parse_interactions(std::string_view text, InputFormat format) {
  RawEdges raw;
  std::set<std::pair<Index, Index>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (format == InputFormat::kHetrec && line_no == 1) continue;
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (fields.size() < 2) {
      throw DataError(fmt::format("line {}: expected '<user> <item> [extra...]', got '{}'",
                                  line_no, line));
    }
    const Index u = raw.users.intern(fields[0]);
    const Index i = raw.items.intern(fields[1]);
    if (seen.emplace(u, i).second) {
      raw.edges.push_back({u, i});
    } else {
      ++raw.duplicates_dropped;
    }
    if (end == text.size()) break;
  }
  if (raw.edges.empty()) throw DataError("input contains zero interactions");
  return raw;
}

RawEdges load_interactions(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_interactions(buf.str(), format);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

BipartiteGraph::BipartiteGraph(Index num_users, Index num_items,
                               std::span<const Interaction> edges)
    : num_users_(num_users), num_items_(num_items) {
  std::vector<Interaction> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  user_offsets_.assign(static_cast<std::size_t>(num_users) + 1, 0);
  item_offsets_.assign(static_cast<std::size_t>(num_items) + 1, 0);
  for (const auto& e : sorted) {
    if (e.user < 0 || e.user >= num_users || e.item < 0 || e.item >= num_items) {
      throw DataError(fmt::format("edge ({}, {}) out of range for {} users / {} items", e.user,
                                  e.item, num_users, num_items));
    }
    ++user_offsets_[e.user + 1];
    ++item_offsets_[e.item + 1];
  }
  std::partial_sum(user_offsets_.begin(), user_offsets_.end(), user_offsets_.begin());
  std::partial_sum(item_offsets_.begin(), item_offsets_.end(), item_offsets_.begin());

  user_items_.resize(sorted.size());
  item_users_.resize(sorted.size());
  item_edge_.resize(sorted.size());
  // sorted by (user, item), so user-side slots are filled in order
  std::vector<std::size_t> cursor(item_offsets_.begin(), item_offsets_.end() - 1);
  for (std::size_t e = 0; e < sorted.size(); ++e) {
    user_items_[e] = sorted[e].item;
    const std::size_t slot = cursor[sorted[e].item]++;
    item_users_[slot] = sorted[e].user;
    item_edge_[slot] = e;
  }
}

bool BipartiteGraph::has_edge(Index u, Index i) const {
  const auto items = user_neighbors(u);
  return std::binary_search(items.begin(), items.end(), i);
}

std::vector<std::vector<Index>> InteractionDataset::group_by_user(
    std::span<const Interaction> edges, Index num_users) {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(num_users));
  for (const auto& e : edges) out[e.user].push_back(e.item);
  for (auto& items : out) std::sort(items.begin(), items.end());
  return out;
}

InteractionDataset assemble_dataset(IdMap users, IdMap items, std::vector<Interaction> train,
                                    std::vector<Interaction> val,
                                    std::vector<Interaction> test) {
  InteractionDataset ds;
  ds.num_users = users.size();
  ds.num_items = items.size();
  ds.users = std::move(users);
  ds.items = std::move(items);
  ds.train = std::move(train);
  ds.val = std::move(val);
  ds.test = std::move(test);
  ds.graph = BipartiteGraph(ds.num_users, ds.num_items, ds.train);
  if (ds.graph.num_edges() != ds.train.size()) {
    throw DataError("duplicate interaction inside the train split");
  }
  std::set<Interaction> held_out;
  for (const auto* split : {&ds.val, &ds.test}) {
    for (const auto& e : *split) {
      if (e.user < 0 || e.user >= ds.num_users || e.item < 0 || e.item >= ds.num_items) {
        throw DataError(fmt::format("held-out edge ({}, {}) out of range", e.user, e.item));
      }
      if (ds.graph.has_edge(e.user, e.item) || !held_out.insert(e).second) {
        throw DataError(fmt::format("edge ({}, {}) appears in more than one split slot",
                                    ds.users.external(e.user), ds.items.external(e.item)));
      }
    }
  }
  for (Index u = 0; u < ds.num_users; ++u) {
    if (ds.graph.user_degree(u) == 0) {
      throw DataError(fmt::format("user '{}' has no training interaction",
                                  ds.users.external(u)));
    }
  }
  return ds;
}

}  // namespace cdcgcn
