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

#include "fairscope/kmeans.h"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "fairscope/errors.h"
#include "fairscope/random.h"

namespace fairscope {

namespace {

using Index = Eigen::Index;

struct RestartResult {
  std::vector<int> assignments;
  Eigen::MatrixXd centroids;
  double inertia = 0.0;
  int iterations = 0;
};

double SquaredDistance(const Eigen::MatrixXd& data, Index row, const Eigen::MatrixXd& centers,
                       Index c) {
  return (data.row(row) - centers.row(c)).squaredNorm();
}

Eigen::MatrixXd PlusPlusSeeds(const Eigen::MatrixXd& data, int k, Rng& rng) {
  const Index n = data.rows();
  Eigen::MatrixXd centers(k, data.cols());
  centers.row(0) = data.row(static_cast<Index>(rng.UniformIndex(static_cast<std::size_t>(n))));
  std::vector<double> nearest(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    nearest[static_cast<std::size_t>(i)] = SquaredDistance(data, i, centers, 0);
  }
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double d : nearest) total += d;
    Index chosen = n - 1;
    if (total > 0.0) {
      const double target = rng.Uniform() * total;
      double cumulative = 0.0;
      for (Index i = 0; i < n; ++i) {
        cumulative += nearest[static_cast<std::size_t>(i)];
        if (cumulative > target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<Index>(rng.UniformIndex(static_cast<std::size_t>(n)));
    }
    centers.row(c) = data.row(chosen);
    for (Index i = 0; i < n; ++i) {
      auto& d = nearest[static_cast<std::size_t>(i)];
      d = std::min(d, SquaredDistance(data, i, centers, c));
    }
  }
  return centers;
}

// Returns per-row squared distance to the assigned center.
std::vector<double> Assign(const Eigen::MatrixXd& data, const Eigen::MatrixXd& centers,
                           std::vector<int>& labels) {
  const Index n = data.rows();
  std::vector<double> cost(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (Index c = 0; c < centers.rows(); ++c) {
      const double d = SquaredDistance(data, i, centers, c);
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = best_c;
    cost[static_cast<std::size_t>(i)] = best;
  }
  return cost;
}

void RepairEmpty(const Eigen::MatrixXd& data, Eigen::MatrixXd& centers, std::vector<int>& labels,
                 std::vector<double>& cost) {
  const int k = static_cast<int>(centers.rows());
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) continue;
    std::size_t donor = labels.size();
    double worst = -1.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (counts[static_cast<std::size_t>(labels[i])] < 2) continue;
      if (cost[i] > worst) {
        worst = cost[i];
        donor = i;
      }
    }
    // n >= k guarantees a cluster with two or more members exists.
    --counts[static_cast<std::size_t>(labels[donor])];
    labels[donor] = c;
    ++counts[static_cast<std::size_t>(c)];
    cost[donor] = 0.0;
    centers.row(c) = data.row(static_cast<Index>(donor));
  }
}

Eigen::MatrixXd Means(const Eigen::MatrixXd& data, const std::vector<int>& labels, int k) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, data.cols());
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sums.row(labels[i]) += data.row(static_cast<Index>(i));
    ++counts[static_cast<std::size_t>(labels[i])];
  }
  for (int c = 0; c < k; ++c) sums.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  return sums;
}

RestartResult RunRestart(const Eigen::MatrixXd& data, const KMeansConfig& cfg, int restart,
                         const LloydObserver& observer) {
  Rng rng(MixSeed(cfg.seed, static_cast<std::uint64_t>(restart)));
  Eigen::MatrixXd centers = PlusPlusSeeds(data, cfg.k, rng);
  std::vector<int> labels(static_cast<std::size_t>(data.rows()), 0);
  RestartResult out;
  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < cfg.max_lloyd_iter; ++iter) {
    auto cost = Assign(data, centers, labels);
    RepairEmpty(data, centers, labels, cost);
    double inertia = 0.0;
    for (double c : cost) inertia += c;
    if (observer) observer(restart, iter, inertia);
    centers = Means(data, labels, cfg.k);
    out.iterations = iter + 1;
    if (std::isfinite(previous)) {
      const double change = previous - inertia;
      if (previous == 0.0 || change <= cfg.rel_tol * previous) break;
    }
    previous = inertia;
  }
  if (cfg.max_lloyd_iter == 0) {
    auto cost = Assign(data, centers, labels);
    RepairEmpty(data, centers, labels, cost);
    centers = Means(data, labels, cfg.k);
  }
  out.inertia = Inertia(data, labels, centers);
  if (observer) observer(restart, -1, out.inertia);
  out.assignments = std::move(labels);
  out.centroids = std::move(centers);
  return out;
}

}  // namespace

double Inertia(const Eigen::MatrixXd& data, const std::vector<int>& assignments,
               const Eigen::MatrixXd& centroids) {
  double total = 0.0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    total += SquaredDistance(data, static_cast<Index>(i), centroids, assignments[i]);
  }
  return total;
}

ClusteringResult KMeans(const Eigen::MatrixXd& data, const KMeansConfig& cfg,
                        const LloydObserver& observer) {
  if (cfg.k < 1) throw ArgumentError(fmt::format("k must be at least 1 (got {})", cfg.k));
  if (cfg.n_init < 1) throw ArgumentError("n_init must be positive");
  if (cfg.max_lloyd_iter < 0) throw ArgumentError("max_lloyd_iter must be non-negative");
  if (data.rows() < cfg.k) {
    throw ArgumentError(fmt::format("k = {} exceeds the number of rows ({})", cfg.k,
                                    data.rows()));
  }
  if (!data.allFinite()) throw ArgumentError("k-means input contains non-finite values");

  ClusteringResult out;
  bool have_best = false;
  for (int r = 0; r < cfg.n_init; ++r) {
    RestartResult res = RunRestart(data, cfg, r, observer);
    out.restarts_inertias.push_back(res.inertia);
    if (!have_best || res.inertia < out.inertia) {
      have_best = true;
      out.inertia = res.inertia;
      out.assignments = std::move(res.assignments);
      out.centroids = std::move(res.centroids);
      out.lloyd_iters_of_best = res.iterations;
      out.best_restart = r;
    }
  }
  return out;
}

}  // namespace fairscope
