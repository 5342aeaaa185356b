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

#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "fairscope/errors.h"
#include "fairscope/random.h"

namespace fairscope {
namespace {

// Two groups of 10 points separated along coordinate 0, with shared noise on
// coordinate 1. Similar pairs stay within a group, dissimilar pairs cross.
struct TwoGroups {
  Eigen::MatrixXd data{20, 2};
  std::vector<IndexPair> similar;
  std::vector<IndexPair> dissimilar;
};

TwoGroups MakeTwoGroups() {
  TwoGroups f;
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    f.data(i, 0) = (i < 10 ? 0.0 : 0.3) + 0.02 * rng.Normal();
    f.data(i, 1) = 0.5 * rng.Normal();
  }
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = i + 1; j < 20; ++j) {
      ((i < 10) == (j < 10) ? f.similar : f.dissimilar).push_back({i, j});
    }
  }
  f.dissimilar.resize(f.similar.size());
  return f;
}

TEST(MetricTest, ZeroSweepsLeavesIdentity) {
  const TwoGroups f = MakeTwoGroups();
  ItmlConfig cfg;
  cfg.max_iter = 0;
  const LearnedMetric m = LearnMetric(f.data, f.similar, f.dissimilar, cfg);
  EXPECT_EQ(m.M, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(m.L, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_FALSE(m.converged);
  EXPECT_EQ(m.sweeps_run, 0);
}

TEST(MetricTest, SatisfiedConstraintsAreNoOps) {
  Eigen::MatrixXd data(3, 2);
  data << 0, 0, 0.1, 0, 5, 5;
  const std::vector<IndexPair> sim = {{0, 1}};
  const std::vector<IndexPair> dis = {{0, 2}};
  ItmlConfig cfg;
  cfg.bound_u = 1.0;
  cfg.bound_l = 2.0;
  const LearnedMetric m = LearnMetric(data, sim, dis, cfg);
  EXPECT_EQ(m.M, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_TRUE(m.converged);
  EXPECT_EQ(m.constraint_satisfaction_before, 1.0);
  EXPECT_EQ(m.constraint_satisfaction_after, 1.0);
}

TEST(MetricTest, SeparatingCoordinateIsStretched) {
  const TwoGroups f = MakeTwoGroups();
  const LearnedMetric m = LearnMetric(f.data, f.similar, f.dissimilar, ItmlConfig{});
  EXPECT_GE(m.constraint_satisfaction_after, m.constraint_satisfaction_before);
  EXPECT_GT(m.M(0, 0), m.M(1, 1));
  // Recount satisfaction directly under the returned M.
  std::size_t ok = 0;
  for (const auto& p : f.similar) ok += Mahalanobis(m.M, f.data.row(p.first).transpose(), f.data.row(p.second).transpose()) <= m.bound_u;
  for (const auto& p : f.dissimilar) ok += Mahalanobis(m.M, f.data.row(p.first).transpose(), f.data.row(p.second).transpose()) >= m.bound_l;
  EXPECT_DOUBLE_EQ(m.constraint_satisfaction_after,
                   static_cast<double>(ok) / static_cast<double>(f.similar.size() + f.dissimilar.size()));
}

TEST(MetricTest, ProjectionNeverWorsensItsOwnConstraint) {
  // Violation is measured against the squared-distance slack target the
  // projection aims at. In the first sweep every target still equals u^2 or
  // l^2, so there the check is also against the fixed margins.
  const TwoGroups f = MakeTwoGroups();
  std::vector<ProjectionEvent> events;
  const LearnedMetric m = LearnMetric(f.data, f.similar, f.dissimilar, ItmlConfig{},
                                      [&](const ProjectionEvent& e) { events.push_back(e); });
  ASSERT_FALSE(events.empty());
  auto gap = [](bool similar, double sq, double target) {
    return similar ? std::max(0.0, sq - target) : std::max(0.0, target - sq);
  };
  for (const auto& e : events) {
    ASSERT_LE(gap(e.similar, e.sq_dist_after, e.target),
              gap(e.similar, e.sq_dist_before, e.target) * (1.0 + 1e-12) + 1e-15)
        << "sweep " << e.sweep << " constraint " << e.constraint;
    if (e.sweep == 0) {
      const double margin = e.similar ? m.bound_u * m.bound_u : m.bound_l * m.bound_l;
      ASSERT_EQ(e.target, margin);
      ASSERT_LE(gap(e.similar, e.sq_dist_after, margin),
                gap(e.similar, e.sq_dist_before, margin) * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST(MetricTest, DeterministicAndPsd) {
  const TwoGroups f = MakeTwoGroups();
  const LearnedMetric a = LearnMetric(f.data, f.similar, f.dissimilar, ItmlConfig{});
  const LearnedMetric b = LearnMetric(f.data, f.similar, f.dissimilar, ItmlConfig{});
  EXPECT_EQ(a.M, b.M);
  EXPECT_EQ(a.M, a.M.transpose());
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a.M).eigenvalues().minCoeff(), -1e-8);
  EXPECT_LE((a.L.transpose() * a.L - a.M).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(MetricTest, CollapsedPercentilesNeedExplicitBounds) {
  Eigen::MatrixXd data(4, 1);
  data << 0, 1, 2, 3;
  const std::vector<IndexPair> sim = {{0, 1}};
  const std::vector<IndexPair> dis = {{2, 3}};
  EXPECT_THROW(LearnMetric(data, sim, dis, ItmlConfig{}), ConfigError);
  ItmlConfig bad;
  bad.bound_u = 2.0;
  bad.bound_l = 1.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

TEST(MetricTest, MahalanobisExamples) {
  const Eigen::Vector2d o(0, 0), p(3, 4), e1(1, 0);
  EXPECT_DOUBLE_EQ(Mahalanobis(Eigen::Matrix2d::Identity(), o, p), 5.0);
  EXPECT_DOUBLE_EQ(Mahalanobis(Eigen::Vector2d(4, 1).asDiagonal().toDenseMatrix(), o, e1), 2.0);
  EXPECT_THROW(Mahalanobis(Eigen::Matrix3d::Identity(), o, p), ArgumentError);
}

TEST(MetricTest, PseudoMetricAxioms) {
  Rng rng(8);
  Eigen::MatrixXd a(3, 3);
  for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = rng.Normal();
  const Eigen::MatrixXd m = a.transpose() * a;
  for (int t = 0; t < 200; ++t) {
    Eigen::Vector3d x, y, z;
    for (int d = 0; d < 3; ++d) {
      x(d) = rng.Normal();
      y(d) = rng.Normal();
      z(d) = rng.Normal();
    }
    EXPECT_EQ(Mahalanobis(m, x, y), Mahalanobis(m, y, x));
    EXPECT_GE(Mahalanobis(m, x, y), 0.0);
    EXPECT_EQ(Mahalanobis(m, x, x), 0.0);
    EXPECT_LE(Mahalanobis(m, x, z), Mahalanobis(m, x, y) + Mahalanobis(m, y, z) + 1e-9);
  }
}

TEST(MetricTest, TransformLinearity) {
  Eigen::MatrixXd data(3, 2);
  data << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(TransformRows(Eigen::Matrix2d::Identity(), data), data);
  EXPECT_EQ(TransformRows(2.0 * Eigen::Matrix2d::Identity(), data), 2.0 * data);
  EXPECT_THROW(TransformRows(Eigen::Matrix3d::Identity(), data), ArgumentError);
}

TEST(MetricTest, FactorFallbackOnSingularMatrix) {
  Eigen::Matrix2d m;
  m << 1, 1, 1, 1;
  bool fallback = false;
  const Eigen::MatrixXd l = FactorMetric(m, &fallback);
  EXPECT_TRUE(fallback);
  EXPECT_LE((l.transpose() * l - m).cwiseAbs().maxCoeff(), 1e-9);
  bool pd_fallback = true;
  FactorMetric(Eigen::Matrix2d::Identity(), &pd_fallback);
  EXPECT_FALSE(pd_fallback);
}

TEST(MetricTest, DiagnosticsExamples) {
  const auto id = DiagnoseMetric(Eigen::Matrix3d::Identity());
  EXPECT_EQ(id.frobenius_dist_to_identity, 0.0);
  EXPECT_EQ(id.offdiag_ratio, 0.0);
  EXPECT_EQ(id.eigenvalues, (std::vector<double>{1, 1, 1}));

  const auto diag = DiagnoseMetric(Eigen::Vector2d(4, 1).asDiagonal().toDenseMatrix());
  EXPECT_DOUBLE_EQ(diag.frobenius_dist_to_identity, 3.0);
  EXPECT_EQ(diag.offdiag_ratio, 0.0);
  EXPECT_NEAR(diag.eigenvalues[0], 4.0, 1e-12);
  EXPECT_NEAR(diag.eigenvalues[1], 1.0, 1e-12);

  Eigen::Matrix2d m;
  m << 2, 1, 1, 2;
  const auto d = DiagnoseMetric(m);
  // M - I = [[1,1],[1,1]], so the Frobenius distance is sqrt(4) = 2.
  EXPECT_NEAR(d.frobenius_dist_to_identity, 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(d.offdiag_ratio, 0.5);
  EXPECT_NEAR(d.eigenvalues[0], 3.0, 1e-12);
  EXPECT_NEAR(d.eigenvalues[1], 1.0, 1e-12);
}

TEST(MetricTest, IdentityMetricShape) {
  const LearnedMetric m = IdentityMetric(4);
  EXPECT_EQ(m.M, Eigen::MatrixXd::Identity(4, 4));
  EXPECT_EQ(m.L, Eigen::MatrixXd::Identity(4, 4));
}

}  // namespace
}  // namespace fairscope
