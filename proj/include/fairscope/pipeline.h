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

// End-to-end run: plane normalization -> constraints -> metric learning
// (identity in baseline mode) -> transform -> k-means + validity indices per
// k -> composite selection -> final clustering -> profiles, attribution
// summaries and the distance-change heatmap.
//
// Stage seeds come from the master seed via DeriveStageSeed:
//   constraint subsampling  DeriveStageSeed(seed, "constraints", 0)
//   k-means at k            DeriveStageSeed(seed, "kmeans", k)
// The final clustering and the raw-importance baseline clustering at the
// chosen k use the same k-means seed as the grid evaluation of that k.

#ifndef FAIRSCOPE_PIPELINE_H_
#define FAIRSCOPE_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairscope/constraints.h"
#include "fairscope/kmeans.h"
#include "fairscope/metric.h"
#include "fairscope/portfolio.h"
#include "fairscope/profiler.h"
#include "fairscope/validity.h"

namespace fairscope {

std::vector<int> DefaultKGrid();  // 3..20

struct PipelineConfig {
  ConstraintConfig constraint;  // seed is derived from `seed`
  ItmlConfig itml;
  KMeansConfig kmeans;          // k and seed are set per run
  std::vector<int> k_grid = DefaultKGrid();
  std::optional<int> k_override;
  bool baseline_mode = false;
  std::uint64_t seed = 42;
  int top_n_features = 8;
};

struct ModelPoint {
  std::string id;
  std::optional<double> trade_off_param;
  double performance = 0.0;
  double fairness = 0.0;
  PlanePoint plane;
};

struct ConstraintSummary {
  std::size_t similar = 0;
  std::size_t dissimilar = 0;
  std::size_t similar_candidates = 0;
  std::size_t dissimilar_candidates = 0;
  std::size_t excluded_zero_distance = 0;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct PipelineResult {
  std::string fingerprint;
  PipelineConfig config;
  std::string dataset_name;
  std::string method_name;
  std::string performance_metric_name;
  std::string fairness_metric_name;
  std::vector<std::string> feature_names;
  std::vector<ModelPoint> models;
  std::optional<ConstraintSummary> constraints;  // absent in baseline mode
  LearnedMetric metric;
  MetricDiagnostics diagnostics;
  ValidationTable validation;
  int chosen_k = 0;
  std::vector<int> assignments;
  double inertia = 0.0;
  std::vector<int> baseline_assignments;  // raw importances, same k and seed
  std::vector<ClusterProfile> profiles;
  std::vector<FeatureSummary> features;
  HeatmapMatrix heatmap;
  std::vector<StageTiming> timings;
};

// The k values of `grid` with 2 <= k < n, sorted and deduplicated.
std::vector<int> FeasibleKGrid(const std::vector<int>& grid, std::size_t n);

// Errors from any stage are rethrown with Error::stage() set.
PipelineResult RunPipeline(const Portfolio& portfolio, const PipelineConfig& cfg);

}  // namespace fairscope

#endif  // FAIRSCOPE_PIPELINE_H_
