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

// Silhouette, Calinski-Harabasz, Davies-Bouldin and Dunn agree with naive
// double-loop oracles on 50 seeded random datasets, in under 10 seconds.

#include <algorithm>
#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "check.h"
#include "fairscope/random.h"
#include "fairscope/validity.h"
#include "naive_cvi.h"

int main() {
  using namespace fairscope;
  return acceptance::Run("cvi_oracle_equivalence", [](acceptance::Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Rng rng(1000 + trial);
      const int n = 8 + static_cast<int>(rng.UniformIndex(23));  // 8..30
      const int p = 1 + static_cast<int>(rng.UniformIndex(4));   // 1..4
      const int k = 2 + static_cast<int>(rng.UniformIndex(3));   // 2..4
      std::vector<int> labels(n);
      for (int i = 0; i < n; ++i) labels[i] = i < k ? i : static_cast<int>(rng.UniformIndex(k));
      naive::Points pts(n, std::vector<double>(p));
      Eigen::MatrixXd data(n, p);
      for (int i = 0; i < n; ++i) {
        for (int d = 0; d < p; ++d) {
          pts[i][d] = rng.Normal() + 3.0 * labels[i];
          data(i, d) = pts[i][d];
        }
      }
      const double got[4] = {Silhouette(data, labels), CalinskiHarabasz(data, labels).value,
                             DaviesBouldin(data, labels), Dunn(data, labels).value};
      const double want[4] = {naive::Silhouette(pts, labels), naive::CalinskiHarabasz(pts, labels),
                              naive::DaviesBouldin(pts, labels), naive::Dunn(pts, labels)};
      const char* names[4] = {"silhouette", "calinski_harabasz", "davies_bouldin", "dunn"};
      for (int m = 0; m < 4; ++m) {
        const double err = std::abs(got[m] - want[m]);
        worst = std::max(worst, err);
        if (!(err <= 1e-9)) {
          out.Fail(fmt::format("trial {} {}: got {} want {}", trial, names[m], got[m], want[m]));
        }
      }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 10.0) out.Fail(fmt::format("runtime {:.2f}s exceeds 10s", secs));
    if (out.pass) out.detail = fmt::format("50 datasets x 4 indices, max abs error {:.3g}", worst);
  });
}
