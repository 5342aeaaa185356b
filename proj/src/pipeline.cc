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

#include "fairscope/pipeline.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <utility>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "fairscope/errors.h"
#include "fairscope/random.h"

namespace fairscope {

std::vector<int> DefaultKGrid() {
  std::vector<int> grid;
  for (int k = 3; k <= 20; ++k) grid.push_back(k);
  return grid;
}

std::vector<int> FeasibleKGrid(const std::vector<int>& grid, std::size_t n) {
  std::vector<int> out;
  for (int k : grid) {
    if (k >= 2 && static_cast<std::size_t>(k) < n) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

class StageRunner {
 public:
  explicit StageRunner(std::vector<StageTiming>& timings) : timings_(timings) {}

  template <typename Fn>
  auto operator()(const char* stage, Fn&& fn) -> decltype(fn()) {
    const auto start = std::chrono::steady_clock::now();
    auto record = [&] {
      const std::chrono::duration<double, std::milli> elapsed =
          std::chrono::steady_clock::now() - start;
      timings_.push_back({stage, elapsed.count()});
    };
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        record();
      } else {
        auto value = fn();
        record();
        return value;
      }
    } catch (Error& e) {
      if (e.stage().empty()) e.set_stage(stage);
      throw;
    }
  }

 private:
  std::vector<StageTiming>& timings_;
};

}  // namespace

PipelineResult RunPipeline(const Portfolio& portfolio, const PipelineConfig& cfg) {
  PipelineResult result;
  StageRunner stage(result.timings);
  const std::size_t n = portfolio.num_models();

  const std::vector<int> grid = stage("configure", [&] {
    ValidatePortfolio(portfolio);
    cfg.constraint.Validate();
    cfg.itml.Validate();
    if (cfg.top_n_features < 1) throw ConfigError("top_n_features must be positive");
    auto feasible = FeasibleKGrid(cfg.k_grid, n);
    if (feasible.size() < 2) {
      throw ConfigError(fmt::format(
          "k grid has {} feasible values for {} models; need at least 2 with 2 <= k < n",
          feasible.size(), n));
    }
    if (cfg.k_override && (*cfg.k_override < 2 || static_cast<std::size_t>(*cfg.k_override) >= n)) {
      throw ConfigError(fmt::format("k_override {} must lie in [2, {})", *cfg.k_override, n));
    }
    return feasible;
  });

  result.fingerprint = PortfolioFingerprint(portfolio);
  result.config = cfg;
  result.config.k_grid = grid;
  result.dataset_name = portfolio.dataset_name;
  result.method_name = portfolio.method_name;
  result.performance_metric_name = portfolio.performance_metric_name;
  result.fairness_metric_name = portfolio.fairness_metric_name;
  result.feature_names = portfolio.feature_names;

  const auto plane = stage("normalize_plane", [&] {
    return NormalizePlane(portfolio, cfg.constraint.plane_bounds);
  });
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = portfolio.models[i];
    result.models.push_back({m.id, m.trade_off_param, m.performance, m.fairness, plane[i]});
  }

  const Eigen::MatrixXd raw = portfolio.ImportanceMatrix();
  if (cfg.baseline_mode) {
    result.metric = IdentityMetric(portfolio.num_features());
  } else {
    ConstraintConfig ccfg = cfg.constraint;
    ccfg.seed = DeriveStageSeed(cfg.seed, "constraints");
    const ConstraintSet constraints =
        stage("build_constraints", [&] { return BuildConstraints(portfolio, ccfg); });
    result.constraints = ConstraintSummary{constraints.similar.size(),
                                           constraints.dissimilar.size(),
                                           constraints.similar_candidates,
                                           constraints.dissimilar_candidates,
                                           constraints.excluded_zero_distance};
    result.metric = stage("learn_metric", [&] {
      return LearnMetric(raw, constraints.similar, constraints.dissimilar, cfg.itml);
    });
  }
  result.diagnostics = DiagnoseMetric(result.metric.M);

  const Eigen::MatrixXd space = stage("transform", [&] { return TransformRows(result.metric.L, raw); });

  auto kmeans_config = [&](int k) {
    KMeansConfig kc = cfg.kmeans;
    kc.k = k;
    kc.seed = DeriveStageSeed(cfg.seed, "kmeans", static_cast<std::uint64_t>(k));
    return kc;
  };

  std::map<int, ClusteringResult> clusterings;
  result.validation = stage("validate_k", [&] {
    std::vector<CviMeasurement> measurements;
    for (int k : grid) {
      ClusteringResult cr = KMeans(space, kmeans_config(k));
      measurements.push_back(MeasureClustering(space, cr.assignments, k));
      if (!measurements.back().usable) {
        spdlog::warn("k={} excluded from composite scoring: {}", k, measurements.back().note);
      }
      clusterings.emplace(k, std::move(cr));
    }
    return CompositeTable(std::move(measurements));
  });

  result.chosen_k = cfg.k_override.value_or(result.validation.k_star);
  stage("final_clustering", [&] {
    auto it = clusterings.find(result.chosen_k);
    ClusteringResult final_result =
        it != clusterings.end() ? it->second : KMeans(space, kmeans_config(result.chosen_k));
    result.assignments = final_result.assignments;
    result.inertia = final_result.inertia;
    result.baseline_assignments = KMeans(raw, kmeans_config(result.chosen_k)).assignments;
  });

  stage("profile", [&] {
    result.profiles = ProfileClusters(portfolio, result.assignments);
    result.features = FeatureSummaries(
        portfolio, result.assignments,
        std::min(cfg.top_n_features, static_cast<int>(portfolio.num_features())));
  });
  result.heatmap = stage("heatmap", [&] { return DistanceChangeHeatmap(portfolio, result.metric.M); });
  spdlog::info("pipeline: k*={} chosen k={} ({} models)", result.validation.k_star,
               result.chosen_k, n);
  return result;
}

}  // namespace fairscope
