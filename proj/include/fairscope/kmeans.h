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

// Seeded k-means with k-means++ seeding and best-of-n restarts.
//
// Restart r draws from Rng(MixSeed(seed, r)). Within a restart:
//   1. k-means++: first center is a uniform row; each further center is row i
//      with probability D(i)^2 / sum D^2, D = distance to the nearest chosen
//      center (a uniform row when every D is 0).
//   2. Lloyd iterations: assign each row to its nearest center (ties go to
//      the lower center index), repair empty clusters, record the inertia,
//      move centers to cluster means. Stop when the relative inertia change
//      drops below rel_tol or after max_lloyd_iter iterations.
//   3. Empty-cluster repair: the row farthest from its center (among rows
//      whose cluster keeps at least one other member; ties to the lower row
//      index) becomes the center of the empty cluster.
// The restart with the smallest final inertia wins, ties to the lower index.

#ifndef FAIRSCOPE_KMEANS_H_
#define FAIRSCOPE_KMEANS_H_

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace fairscope {

struct KMeansConfig {
  int k = 2;
  int n_init = 10;
  int max_lloyd_iter = 300;
  double rel_tol = 1e-4;
  std::uint64_t seed = 42;
};

struct ClusteringResult {
  std::vector<int> assignments;
  Eigen::MatrixXd centroids;  // k x P
  double inertia = 0.0;
  std::vector<double> restarts_inertias;
  int lloyd_iters_of_best = 0;
  int best_restart = 0;
};

// Called once per Lloyd iteration with the inertia measured after the
// assignment step, and once more with the final inertia (iteration = -1).
using LloydObserver = std::function<void(int restart, int iteration, double inertia)>;

ClusteringResult KMeans(const Eigen::MatrixXd& data, const KMeansConfig& cfg,
                        const LloydObserver& observer = {});

// Sum of squared distances from each row to its assigned centroid.
double Inertia(const Eigen::MatrixXd& data, const std::vector<int>& assignments,
               const Eigen::MatrixXd& centroids);

}  // namespace fairscope

#endif  // FAIRSCOPE_KMEANS_H_
