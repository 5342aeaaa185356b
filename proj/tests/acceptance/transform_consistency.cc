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

// For 100 random positive-definite M and vector pairs, the Mahalanobis
// distance equals the Euclidean distance after transforming by L (1e-9).

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "check.h"
#include "fairscope/metric.h"
#include "fairscope/random.h"

int main() {
  using namespace fairscope;
  return acceptance::Run("transform_consistency", [](acceptance::Outcome& out) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Rng rng(MixSeed(2024, trial));
      const int dim = 1 + static_cast<int>(rng.UniformIndex(8));
      Eigen::MatrixXd a(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = rng.Normal();
      const Eigen::MatrixXd m = a.transpose() * a + 1e-3 * Eigen::MatrixXd::Identity(dim, dim);
      const Eigen::MatrixXd l = FactorMetric(m);
      Eigen::MatrixXd xy(2, dim);
      for (int d = 0; d < dim; ++d) {
        xy(0, d) = rng.Normal();
        xy(1, d) = rng.Normal();
      }
      const double dm = Mahalanobis(m, xy.row(0).transpose(), xy.row(1).transpose());
      const Eigen::MatrixXd t = TransformRows(l, xy);
      const double de = (t.row(0) - t.row(1)).norm();
      const double err = std::abs(dm - de);
      worst = std::max(worst, err);
      if (!(err <= 1e-9)) out.Fail(fmt::format("trial {}: d_M {} vs |Lx-Ly| {}", trial, dm, de));
    }
    if (out.pass) out.detail = fmt::format("100 random PD matrices, max abs error {:.3g}", worst);
  });
}
