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

#include "fairscope/metric.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "fairscope/errors.h"

namespace fairscope {

void ItmlConfig::Validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ConfigError(fmt::format("gamma must be positive and finite (got {})", gamma));
  }
  if (max_iter < 0) throw ConfigError("max_iter must be non-negative");
  if (!(convergence_tol > 0.0)) throw ConfigError("convergence_tol must be positive");
  if (bound_u && bound_l && !(0.0 < *bound_u && *bound_u < *bound_l)) {
    throw ConfigError(fmt::format("margins must satisfy 0 < u < l (got u={}, l={})",
                                  *bound_u, *bound_l));
  }
}

namespace {

// Linear interpolation between closest ranks.
double Percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double RowDistance(const Eigen::MatrixXd& data, const IndexPair& pair) {
  return (data.row(static_cast<Eigen::Index>(pair.first)) -
          data.row(static_cast<Eigen::Index>(pair.second)))
      .norm();
}

void CheckPairs(std::span<const IndexPair> pairs, Eigen::Index n) {
  for (const auto& pr : pairs) {
    if (pr.first >= static_cast<std::size_t>(n) || pr.second >= static_cast<std::size_t>(n)) {
      throw ArgumentError(fmt::format("constraint pair ({}, {}) out of range for {} rows",
                                      pr.first, pr.second, n));
    }
  }
}

}  // namespace

LearnedMetric LearnMetric(const Eigen::MatrixXd& data, std::span<const IndexPair> similar,
                          std::span<const IndexPair> dissimilar, const ItmlConfig& cfg,
                          const ProjectionObserver& observer) {
  cfg.Validate();
  const Eigen::Index dim = data.cols();
  if (dim < 1) throw ArgumentError("metric learning needs at least one feature");
  if (similar.empty() || dissimilar.empty()) {
    throw ArgumentError("metric learning needs similar and dissimilar constraints");
  }
  CheckPairs(similar, data.rows());
  CheckPairs(dissimilar, data.rows());

  LearnedMetric out;
  if (cfg.bound_u && cfg.bound_l) {
    out.bound_u = *cfg.bound_u;
    out.bound_l = *cfg.bound_l;
  } else {
    std::vector<double> dists;
    dists.reserve(similar.size() + dissimilar.size());
    for (const auto& pr : similar) dists.push_back(RowDistance(data, pr));
    for (const auto& pr : dissimilar) dists.push_back(RowDistance(data, pr));
    out.bound_u = cfg.bound_u.value_or(Percentile(dists, 5.0));
    out.bound_l = cfg.bound_l.value_or(Percentile(dists, 95.0));
  }
  if (!(out.bound_u > 0.0) || !(out.bound_u < out.bound_l)) {
    throw ConfigError(fmt::format(
        "distance margins collapsed (u={}, l={}); supply explicit bound_u < bound_l",
        out.bound_u, out.bound_l));
  }

  const std::size_t n_sim = similar.size();
  const std::size_t n_total = n_sim + dissimilar.size();

  // Difference vectors in visit order.
  Eigen::MatrixXd diffs(dim, static_cast<Eigen::Index>(n_total));
  for (std::size_t c = 0; c < n_total; ++c) {
    const IndexPair& pr = c < n_sim ? similar[c] : dissimilar[c - n_sim];
    diffs.col(static_cast<Eigen::Index>(c)) =
        (data.row(static_cast<Eigen::Index>(pr.first)) -
         data.row(static_cast<Eigen::Index>(pr.second)))
            .transpose();
  }

  const double gamma = cfg.gamma;
  const double u2 = out.bound_u * out.bound_u;
  const double l2 = out.bound_l * out.bound_l;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_total));
  Eigen::VectorXd lambda_prev = lambda;
  std::vector<double> targets(n_total);
  for (std::size_t c = 0; c < n_total; ++c) targets[c] = c < n_sim ? u2 : l2;

  Eigen::VectorXd mx(dim);
  for (int sweep = 0; sweep < cfg.max_iter; ++sweep) {
    for (std::size_t c = 0; c < n_total; ++c) {
      const auto x = diffs.col(static_cast<Eigen::Index>(c));
      mx.noalias() = M * x;
      const double p = x.dot(mx);
      if (!std::isfinite(p)) {
        throw NumericalError(fmt::format("non-finite distance at sweep {}", sweep), sweep);
      }
      if (p == 0.0) continue;
      const bool is_similar = c < n_sim;
      const double delta = is_similar ? 1.0 : -1.0;
      const auto ci = static_cast<Eigen::Index>(c);
      double& xi = targets[c];
      const double alpha = std::min(lambda(ci), 0.5 * delta * (1.0 / p - gamma / xi));
      const double beta = delta * alpha / (1.0 - delta * alpha * p);
      if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw NumericalError(fmt::format("non-finite projection step at sweep {}", sweep),
                             sweep);
      }
      const double target_before = xi;
      xi = gamma * xi / (gamma + delta * alpha * xi);
      lambda(ci) -= alpha;
      M.noalias() += beta * mx * mx.transpose();
      if (observer) {
        observer({sweep, c, is_similar, target_before, p, x.dot(M * x)});
      }
    }
    out.sweeps_run = sweep + 1;
    if (!M.allFinite()) {
      throw NumericalError(fmt::format("metric became non-finite at sweep {}", sweep), sweep);
    }
    const double norm_sum = lambda.norm() + lambda_prev.norm();
    if (norm_sum == 0.0) {
      out.converged = true;
      break;
    }
    const double change = (lambda - lambda_prev).lpNorm<1>() / norm_sum;
    if (change < cfg.convergence_tol) {
      out.converged = true;
      break;
    }
    lambda_prev = lambda;
  }

  out.M = 0.5 * (M + M.transpose());
  out.L = FactorMetric(out.M, &out.factor_fallback);
  out.constraint_satisfaction_before =
      ConstraintSatisfaction(Eigen::MatrixXd::Identity(dim, dim), data, similar, dissimilar,
                             out.bound_u, out.bound_l);
  out.constraint_satisfaction_after =
      ConstraintSatisfaction(out.M, data, similar, dissimilar, out.bound_u, out.bound_l);
  spdlog::debug("itml: {} sweeps, converged={}, satisfaction {:.4f} -> {:.4f}",
                out.sweeps_run, out.converged, out.constraint_satisfaction_before,
                out.constraint_satisfaction_after);
  return out;
}

LearnedMetric LearnMetric(const Portfolio& portfolio, const ConstraintSet& constraints,
                          const ItmlConfig& cfg, const ProjectionObserver& observer) {
  return LearnMetric(portfolio.ImportanceMatrix(), constraints.similar, constraints.dissimilar,
                     cfg, observer);
}

LearnedMetric IdentityMetric(std::size_t dim) {
  LearnedMetric out;
  const auto d = static_cast<Eigen::Index>(dim);
  out.M = Eigen::MatrixXd::Identity(d, d);
  out.L = Eigen::MatrixXd::Identity(d, d);
  return out;
}

Eigen::MatrixXd FactorMetric(const Eigen::MatrixXd& M, bool* used_fallback) {
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() == Eigen::Success) {
    if (used_fallback) *used_fallback = false;
    return llt.matrixU();
  }
  spdlog::warn("metric is not numerically positive definite; using clipped eigenfactor");
  if (used_fallback) *used_fallback = true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(1e-10).cwiseSqrt();
  return root.asDiagonal() * eig.eigenvectors().transpose();
}

double Mahalanobis(const Eigen::MatrixXd& M, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (M.rows() != M.cols() || x.size() != M.rows() || y.size() != M.rows()) {
    throw ArgumentError(fmt::format("dimension mismatch: M is {}x{}, vectors have {} and {}",
                                    M.rows(), M.cols(), x.size(), y.size()));
  }
  const Eigen::VectorXd d = x - y;
  double q = d.dot(M * d);
  if (q < 0.0) {
    if (q < -1e-12) {
      throw ArgumentError(fmt::format("negative quadratic form {}; M is not PSD", q));
    }
    q = 0.0;
  }
  return std::sqrt(q);
}

Eigen::MatrixXd TransformRows(const Eigen::MatrixXd& L, const Eigen::MatrixXd& data) {
  if (L.rows() != L.cols() || L.cols() != data.cols()) {
    throw ArgumentError(fmt::format("dimension mismatch: L is {}x{}, data has {} columns",
                                    L.rows(), L.cols(), data.cols()));
  }
  return data * L.transpose();
}

Eigen::MatrixXd Transform(const Eigen::MatrixXd& L, const Portfolio& portfolio) {
  return TransformRows(L, portfolio.ImportanceMatrix());
}

double ConstraintSatisfaction(const Eigen::MatrixXd& M, const Eigen::MatrixXd& data,
                              std::span<const IndexPair> similar,
                              std::span<const IndexPair> dissimilar, double bound_u,
                              double bound_l) {
  const std::size_t total = similar.size() + dissimilar.size();
  if (total == 0) return 0.0;
  std::size_t ok = 0;
  auto dist = [&](const IndexPair& pr) {
    return Mahalanobis(M, data.row(static_cast<Eigen::Index>(pr.first)).transpose(),
                       data.row(static_cast<Eigen::Index>(pr.second)).transpose());
  };
  for (const auto& pr : similar) ok += dist(pr) <= bound_u ? 1 : 0;
  for (const auto& pr : dissimilar) ok += dist(pr) >= bound_l ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(total);
}

MetricDiagnostics DiagnoseMetric(const Eigen::MatrixXd& M) {
  MetricDiagnostics out;
  const Eigen::Index d = M.rows();
  out.frobenius_dist_to_identity = (M - Eigen::MatrixXd::Identity(d, d)).norm();
  const double diag = M.diagonal().cwiseAbs().sum();
  const double off = M.cwiseAbs().sum() - diag;
  out.offdiag_ratio = diag > 0.0 ? off / diag : 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

}  // namespace fairscope
