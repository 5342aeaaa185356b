/*
 * Copyright 2026 The FairScope Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairscope/report.h"

#include <fmt/format.h>

#include "text_util.h"

namespace fairscope {

std::string FormatValidationTable(const ValidationTable& table, std::size_t top) {
  std::string out = std::string(kValidationHeader) + "\n";
  for (const auto& row : table.TopByComposite(top)) {
    out += fmt::format("{}, {:.5f}, {:.2f}, {:.5f}, {:.5f}, {:.5f}\n", row.k, row.silhouette,
                       row.calinski_harabasz, row.davies_bouldin, row.dunn, row.composite);
  }
  return out;
}

std::string FormatProfileTable(std::span<const ClusterProfile> profiles) {
  std::string out = std::string(kProfileHeader) + "\n";
  for (const auto& p : profiles) {
    out += fmt::format("{}, {}, {:.6f}, {:.4f} ± {:.4f}, {:.4f} ± {:.4f}\n", p.cluster_id,
                       p.n_points, p.total_variance, p.performance_mean, p.performance_sd,
                       p.fairness_mean, p.fairness_sd);
  }
  return out;
}

std::string HeatmapToCsv(const HeatmapMatrix& heatmap) {
  std::string out = internal::CsvEscape("ordered_by:" + heatmap.ordering_key);
  for (const auto& id : heatmap.ordered_ids) out += ',' + internal::CsvEscape(id);
  out += '\n';
  for (Eigen::Index i = 0; i < heatmap.delta.rows(); ++i) {
    out += internal::CsvEscape(heatmap.ordered_ids[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < heatmap.delta.cols(); ++j) {
      out += ',' + internal::ShortestDouble(heatmap.delta(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace fairscope
