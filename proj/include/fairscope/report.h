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

// Plain-text report tables and delimited exports.

#ifndef FAIRSCOPE_REPORT_H_
#define FAIRSCOPE_REPORT_H_

#include <cstddef>
#include <span>
#include <string>

#include "fairscope/profiler.h"
#include "fairscope/validity.h"

namespace fairscope {

inline constexpr char kValidationHeader[] =
    "k, Silhouette (↑), Calinski–Harabasz (↑), Davies–Bouldin (↓), Dunn (↑), "
    "Composite Score (↑)";
inline constexpr char kProfileHeader[] =
    "Cluster, n_points, Total Variance, Performance (±SD), Fairness (±SD)";

// Usable rows sorted by composite descending, at most `top` of them.
// Indices to 5 decimals, Calinski-Harabasz to 2.
std::string FormatValidationTable(const ValidationTable& table, std::size_t top);

// Total variance to 6 decimals, mean ± SD to 4.
std::string FormatProfileTable(std::span<const ClusterProfile> profiles);

// Square CSV: header "ordered_by:<key>,<id>,...", then one row per model.
std::string HeatmapToCsv(const HeatmapMatrix& heatmap);

}  // namespace fairscope

#endif  // FAIRSCOPE_REPORT_H_
