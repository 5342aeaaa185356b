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

// The results file: a JSON document holding every PipelineResult field.
// It is the contract between the pipeline, the CLI report commands, the HTTP
// API and the explorer UI. Layout (schema_version 1):
//
//   schema_version, kind = "fairscope.results"
//   portfolio    fingerprint, dataset, method, metric names, feature_names,
//                models[{id, trade_off_param, performance, fairness,
//                        plane{performance, fairness}}]
//   config       echo of the PipelineConfig (see ConfigToJson)
//   constraints  counts, or null in baseline mode
//   metric       learned, M, L (row-major nested arrays), sweeps_run,
//                converged, bound_u, bound_l, satisfaction before/after,
//                factor_fallback, diagnostics{frobenius_dist_to_identity,
//                offdiag_ratio, eigenvalues}
//   validation   k_grid, k_star, rows[{k, silhouette, calinski_harabasz,
//                davies_bouldin, dunn, z_sil, z_ch, z_db, z_dunn, composite,
//                usable, note}]
//   clustering   chosen_k, k_overridden, assignments, inertia,
//                baseline_assignments
//   profiles     [{cluster_id, n_points, total_variance, performance_mean,
//                  performance_sd, fairness_mean, fairness_sd, member_ids}]
//   features     [{feature_name, mean_abs_importance, clusters[{cluster_id,
//                  median, q1, q3, whisker_low, whisker_high, outliers, mean}]}]
//   heatmap      ordering_key, ordered_ids, delta (row-major nested arrays)
//   timings      [{stage, milliseconds}]  (only when requested)
//
// Numbers are written as the shortest decimal that round-trips.

#ifndef FAIRSCOPE_RESULTS_H_
#define FAIRSCOPE_RESULTS_H_

#include <string>
#include <string_view>

#include "fairscope/pipeline.h"
#include "json.hpp"

namespace fairscope {

inline constexpr int kResultsSchemaVersion = 1;

nlohmann::ordered_json ConfigToJson(const PipelineConfig& cfg);

// Every key is optional; missing keys keep their defaults. Also accepts
// k_min/k_max as an alternative to k_grid. Unknown keys throw FormatError.
PipelineConfig ConfigFromJson(const nlohmann::json& doc);

nlohmann::ordered_json ResultToJson(const PipelineResult& result, bool include_timings);
std::string SerializeResult(const PipelineResult& result, bool include_timings);

// Reads a results file back. Throws FormatError on schema mismatches.
PipelineResult ParseResult(std::string_view text);

}  // namespace fairscope

#endif  // FAIRSCOPE_RESULTS_H_
