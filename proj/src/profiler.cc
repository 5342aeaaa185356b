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

#include "fairscope/profiler.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "fairscope/errors.h"

namespace fairscope {

namespace {

std::map<int, std::vector<std::size_t>> GroupByLabel(const Portfolio& portfolio,
                                                    std::span<const int> labels) {
  if (labels.size() != portfolio.models.size()) {
    throw ArgumentError(fmt::format("{} labels for {} models", labels.size(),
                                    portfolio.models.size()));
  }
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  return groups;
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
  double var = 0.0;
};

MeanSd SampleStats(const std::vector<double>& v) {
  MeanSd out;
  if (v.empty()) return out;
  out.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() < 2) return out;
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.var = ss / static_cast<double>(v.size() - 1);
  out.sd = std::sqrt(out.var);
  return out;
}

}  // namespace

std::vector<ClusterProfile> ProfileClusters(const Portfolio& portfolio,
                                            std::span<const int> labels) {
  std::vector<ClusterProfile> out;
  const std::size_t p = portfolio.num_features();
  for (const auto& [label, members] : GroupByLabel(portfolio, labels)) {
    ClusterProfile prof;
    prof.cluster_id = label;
    prof.n_points = static_cast<int>(members.size());
    std::vector<double> perf, fair, column;
    for (std::size_t i : members) {
      const auto& m = portfolio.models[i];
      perf.push_back(m.performance);
      fair.push_back(m.fairness);
      prof.member_ids.push_back(m.id);
    }
    for (std::size_t j = 0; j < p; ++j) {
      column.clear();
      for (std::size_t i : members) column.push_back(portfolio.models[i].importances[j]);
      prof.total_variance += SampleStats(column).var;
    }
    const MeanSd ps = SampleStats(perf);
    const MeanSd fs = SampleStats(fair);
    prof.performance_mean = ps.mean;
    prof.performance_sd = ps.sd;
    prof.fairness_mean = fs.mean;
    prof.fairness_sd = fs.sd;
    out.push_back(std::move(prof));
  }
  return out;
}

double LinearQuantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ArgumentError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxStats ComputeBoxStats(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("boxplot of an empty sample");
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.q1 = LinearQuantile(values, 0.25);
  b.median = LinearQuantile(values, 0.5);
  b.q3 = LinearQuantile(values, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  bool have_low = false;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      b.outliers.push_back(v);
      continue;
    }
    if (!have_low) {
      b.whisker_low = v;
      have_low = true;
    }
    b.whisker_high = v;
  }
  b.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  return b;
}

std::vector<FeatureSummary> FeatureSummaries(const Portfolio& portfolio,
                                             std::span<const int> labels, int top_n) {
  const std::size_t p = portfolio.num_features();
  if (top_n < 1 || static_cast<std::size_t>(top_n) > p) {
    throw ArgumentError(fmt::format("top_n must lie in [1, {}] (got {})", p, top_n));
  }
  const auto groups = GroupByLabel(portfolio, labels);
  const double n = static_cast<double>(portfolio.models.size());

  std::vector<double> mean_abs(p, 0.0);
  for (const auto& m : portfolio.models) {
    for (std::size_t j = 0; j < p; ++j) mean_abs[j] += std::abs(m.importances[j]);
  }
  for (double& v : mean_abs) v /= n;
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mean_abs[a] > mean_abs[b]; });

  std::vector<FeatureSummary> out;
  for (int r = 0; r < top_n; ++r) {
    const std::size_t j = order[static_cast<std::size_t>(r)];
    FeatureSummary fs;
    fs.feature_name = portfolio.feature_names[j];
    fs.mean_abs_importance = mean_abs[j];
    for (const auto& [label, members] : groups) {
      std::vector<double> values;
      values.reserve(members.size());
      for (std::size_t i : members) values.push_back(portfolio.models[i].importances[j]);
      fs.clusters.push_back({label, ComputeBoxStats(std::move(values))});
    }
    out.push_back(std::move(fs));
  }
  return out;
}

HeatmapMatrix DistanceChangeHeatmap(const Portfolio& portfolio, const Eigen::MatrixXd& M) {
  const std::size_t n = portfolio.models.size();
  const bool have_theta = std::all_of(portfolio.models.begin(), portfolio.models.end(),
                                      [](const ModelRecord& m) { return m.trade_off_param.has_value(); });
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ma = portfolio.models[a];
    const auto& mb = portfolio.models[b];
    return have_theta ? *ma.trade_off_param < *mb.trade_off_param : ma.fairness < mb.fairness;
  });

  HeatmapMatrix out;
  out.ordering_key = have_theta ? "trade_off_param" : "fairness";
  const Eigen::MatrixXd raw = portfolio.ImportanceMatrix();
  if (M.rows() != raw.cols() || M.cols() != raw.cols()) {
    throw ArgumentError(fmt::format("metric is {}x{} but portfolio has {} features", M.rows(),
                                    M.cols(), raw.cols()));
  }
  const auto size = static_cast<Eigen::Index>(n);
  out.delta = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    out.ordered_ids.push_back(portfolio.models[order[static_cast<std::size_t>(a)]].id);
    const Eigen::VectorXd xa = raw.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(a)]));
    for (Eigen::Index b = a + 1; b < size; ++b) {
      const Eigen::VectorXd xb = raw.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(b)]));
      const Eigen::VectorXd diff = xa - xb;
      // Same dot-product path as Mahalanobis, so the identity metric gives exactly 0.
      const double before = std::sqrt(diff.dot(diff));
      const double after = Mahalanobis(M, xa, xb);
      out.delta(a, b) = out.delta(b, a) = before - after;
    }
  }
  return out;
}

FixedKComparison CompareFixedK(const Portfolio& portfolio, const LearnedMetric& metric, int k,
                               KMeansConfig cfg) {
  cfg.k = k;
  const Eigen::MatrixXd raw = portfolio.ImportanceMatrix();
  FixedKComparison out;
  out.raw_result = KMeans(raw, cfg);
  out.transformed_result = KMeans(TransformRows(metric.L, raw), cfg);
  out.raw_labels = out.raw_result.assignments;
  out.transformed_labels = out.transformed_result.assignments;
  return out;
}

}  // namespace fairscope
