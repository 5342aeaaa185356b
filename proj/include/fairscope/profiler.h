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

// Cluster trade-off profiles, per-cluster attribution boxplots and
// transformation diagnostics.

#ifndef FAIRSCOPE_PROFILER_H_
#define FAIRSCOPE_PROFILER_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fairscope/kmeans.h"
#include "fairscope/metric.h"
#include "fairscope/portfolio.h"

namespace fairscope {

struct ClusterProfile {
  int cluster_id = 0;
  int n_points = 0;
  double total_variance = 0.0;  // sum of per-feature sample variances
  double performance_mean = 0.0;
  double performance_sd = 0.0;
  double fairness_mean = 0.0;
  double fairness_sd = 0.0;
  std::vector<std::string> member_ids;
};

// One profile per distinct label, ascending. Sample (n - 1) statistics;
// singleton clusters report 0.
std::vector<ClusterProfile> ProfileClusters(const Portfolio& portfolio,
                                            std::span<const int> labels);

// Tukey boxplot: quartiles by linear interpolation, whiskers at the most
// extreme values within 1.5 IQR of the quartiles, the rest are outliers.
struct BoxStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
  double mean = 0.0;
};

BoxStats ComputeBoxStats(std::vector<double> values);

// Quantile with linear interpolation between order statistics of `sorted`.
double LinearQuantile(std::span<const double> sorted, double q);

struct ClusterBox {
  int cluster_id = 0;
  BoxStats stats;
};

struct FeatureSummary {
  std::string feature_name;
  double mean_abs_importance = 0.0;  // ranking key over all models
  std::vector<ClusterBox> clusters;  // ascending cluster id
};

// Top `top_n` features by mean absolute importance over all models (ties in
// declaration order), each with per-cluster boxplot statistics of the raw
// (signed) values.
std::vector<FeatureSummary> FeatureSummaries(const Portfolio& portfolio,
                                             std::span<const int> labels, int top_n = 8);

struct HeatmapMatrix {
  // "trade_off_param" when every model has one, otherwise "fairness".
  std::string ordering_key;
  std::vector<std::string> ordered_ids;
  // delta(i, j) = Euclidean(raw_i, raw_j) - d_M(raw_i, raw_j), in ordered_ids order.
  Eigen::MatrixXd delta;
};

HeatmapMatrix DistanceChangeHeatmap(const Portfolio& portfolio, const Eigen::MatrixXd& M);

struct FixedKComparison {
  std::vector<int> raw_labels;
  std::vector<int> transformed_labels;
  ClusteringResult raw_result;
  ClusteringResult transformed_result;
};

// Clusters raw and L-transformed importances with the same k-means config.
FixedKComparison CompareFixedK(const Portfolio& portfolio, const LearnedMetric& metric, int k,
                               KMeansConfig cfg);

}  // namespace fairscope

#endif  // FAIRSCOPE_PROFILER_H_
