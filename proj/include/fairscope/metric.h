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

// Mahalanobis metric learning with Information-Theoretic Metric Learning
// (LogDet divergence to an identity prior, slack variables, cyclic Bregman
// projections), plus the distance, transform and inspection primitives that
// consume the learned matrix.
//
// Conventions:
//   d_M(x, y) = sqrt((x - y)^T M (x - y)),  M = L^T L,  so d_M(x, y) = |Lx - Ly|.
//   The margins u and l are distances. Internally the projections work on
//   squared distances, so the per-constraint slack targets start at u^2 and
//   l^2; a constraint counts as satisfied when d_M <= u (similar) or
//   d_M >= l (dissimilar).

#ifndef FAIRSCOPE_METRIC_H_
#define FAIRSCOPE_METRIC_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fairscope/constraints.h"
#include "fairscope/portfolio.h"

namespace fairscope {

struct ItmlConfig {
  double gamma = 1.0;
  int max_iter = 600;  // full sweeps over the constraint list
  double convergence_tol = 1e-3;
  std::optional<double> bound_u;
  std::optional<double> bound_l;

  void Validate() const;
};

struct LearnedMetric {
  Eigen::MatrixXd M;
  Eigen::MatrixXd L;
  int sweeps_run = 0;
  bool converged = false;
  double bound_u = 0.0;
  double bound_l = 0.0;
  double constraint_satisfaction_before = 0.0;
  double constraint_satisfaction_after = 0.0;
  // L came from the clipped eigendecomposition instead of Cholesky.
  bool factor_fallback = false;
};

// Reported after every Bregman projection when an observer is installed.
// Distances are squared (the quadratic form x^T M x).
struct ProjectionEvent {
  int sweep = 0;
  std::size_t constraint = 0;  // position in the visit order
  bool similar = true;
  double target = 0.0;         // slack target before this projection
  double sq_dist_before = 0.0;
  double sq_dist_after = 0.0;
};
using ProjectionObserver = std::function<void(const ProjectionEvent&)>;

// Learns M on `data` rows. Constraints are visited similar list first, then
// dissimilar, each in stored order. Throws NumericalError on non-finite
// updates and ConfigError when percentile margins collapse (u >= l).
LearnedMetric LearnMetric(const Eigen::MatrixXd& data, std::span<const IndexPair> similar,
                          std::span<const IndexPair> dissimilar, const ItmlConfig& cfg,
                          const ProjectionObserver& observer = {});

LearnedMetric LearnMetric(const Portfolio& portfolio, const ConstraintSet& constraints,
                          const ItmlConfig& cfg, const ProjectionObserver& observer = {});

// The metric used when learning is skipped: M = L = I.
LearnedMetric IdentityMetric(std::size_t dim);

// L with M = L^T L: the transposed Cholesky factor, or diag(sqrt(lambda)) V^T
// with eigenvalues clipped at 1e-10 when M is not numerically PD.
Eigen::MatrixXd FactorMetric(const Eigen::MatrixXd& M, bool* used_fallback = nullptr);

// Quadratic-form values in [-1e-12, 0) clamp to 0; anything more negative
// means M is not PSD and throws ArgumentError.
double Mahalanobis(const Eigen::MatrixXd& M, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

// Row m of the result is L * row m of `data`.
Eigen::MatrixXd TransformRows(const Eigen::MatrixXd& L, const Eigen::MatrixXd& data);
Eigen::MatrixXd Transform(const Eigen::MatrixXd& L, const Portfolio& portfolio);

// Fraction of constraints satisfied under M with margins u and l.
double ConstraintSatisfaction(const Eigen::MatrixXd& M, const Eigen::MatrixXd& data,
                              std::span<const IndexPair> similar,
                              std::span<const IndexPair> dissimilar, double bound_u,
                              double bound_l);

struct MetricDiagnostics {
  double frobenius_dist_to_identity = 0.0;
  double offdiag_ratio = 0.0;
  std::vector<double> eigenvalues;  // descending
};

MetricDiagnostics DiagnoseMetric(const Eigen::MatrixXd& M);

}  // namespace fairscope

#endif  // FAIRSCOPE_METRIC_H_
