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

#include <fstream>

#include <fmt/core.h>

#include "cdcgcn/analysis.hpp"
#include "cdcgcn/metrics.hpp"

namespace cdcgcn {

std::vector<UserGroupRow> user_group_report(const UserBubbleProfile& profile,
                                            std::span<const RankedList> lists,
                                            const CommunityAssignment& communities, int k,
                                            std::span<const double> bins) {
  if (bins.size() < 2) throw UsageError("user grouping needs at least two bin edges");
  std::vector<UserGroupRow> rows(bins.size() - 1);
  std::vector<double> init_sum(rows.size(), 0.0), ilfbi_sum(rows.size(), 0.0);
  for (std::size_t b = 0; b < rows.size(); ++b) {
    rows[b].lower = bins[b];
    rows[b].upper = bins[b + 1];
  }
  for (const auto& list : lists) {
    const double init = profile.ilfbi_init[list.user];
    for (std::size_t b = 0; b < rows.size(); ++b) {
      const bool inside = b == 0 ? (init >= bins[0] && init <= bins[1])
                                 : (init > bins[b] && init <= bins[b + 1]);
      if (!inside) continue;
      ++rows[b].users;
      init_sum[b] += init;
      ilfbi_sum[b] += ilfbi_at_k(std::span<const RankedList>(&list, 1), communities, k);
      break;
    }
  }
  for (std::size_t b = 0; b < rows.size(); ++b) {
    auto& row = rows[b];
    row.present = row.users > 0;
    if (!row.present) continue;
    row.mean_ilfbi_init = init_sum[b] / static_cast<double>(row.users);
    row.mean_ilfbi = ilfbi_sum[b] / static_cast<double>(row.users);
    row.increment = row.mean_ilfbi - row.mean_ilfbi_init;
  }
  return rows;
}

void export_embeddings(const NodeTables& embeddings, const CommunityAssignment& communities,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  const auto write_rows = [&](const Table& table, const char* kind, bool users) {
    for (Eigen::Index r = 0; r < table.rows(); ++r) {
      const auto idx = static_cast<Index>(r);
      out << kind << '\t' << r << '\t'
          << (users ? communities.user_label(idx) : communities.item_label(idx));
      for (Eigen::Index c = 0; c < table.cols(); ++c) out << fmt::format("\t{:.9g}", table(r, c));
      out << '\n';
    }
  };
  write_rows(embeddings.user, "u", true);
  write_rows(embeddings.item, "i", false);
  if (!out) throw DataError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace cdcgcn
