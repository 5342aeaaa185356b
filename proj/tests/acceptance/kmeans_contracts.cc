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

// k-means contracts on seeded datasets:
//  * within each restart the inertia sequence reported by the Lloyd observer
//    never increases (relative roundoff allowance 1e-12),
//  * the returned inertia is <= every restart's inertia,
//  * the same seed yields bit-identical assignments.

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "check.h"
#include "fairscope/kmeans.h"
#include "fairscope/random.h"
#include "fairscope/synth.h"

int main() {
  using namespace fairscope;
  return acceptance::Run("kmeans_contracts", [](acceptance::Outcome& out) {
    int runs = 0;
    long long steps = 0;
    for (int trial = 0; trial < 40; ++trial) {
      Rng rng(MixSeed(4242, trial));
      Eigen::MatrixXd data;
      if (trial % 4 == 0) {
        SynthConfig sc;
        sc.seed = trial;
        data = GenerateSynthetic(sc).ImportanceMatrix();
      } else {
        const int n = 15 + static_cast<int>(rng.UniformIndex(120));
        const int dim = 1 + static_cast<int>(rng.UniformIndex(6));
        data.resize(n, dim);
        for (int i = 0; i < n; ++i)
          for (int d = 0; d < dim; ++d) data(i, d) = rng.Normal() + 4.0 * static_cast<double>(i % 3);
      }
      for (int k : {2, 3, 5, 8}) {
        if (k >= data.rows()) continue;
        KMeansConfig cfg;
        cfg.k = k;
        cfg.seed = DeriveStageSeed(trial, "kmeans", k);
        std::map<int, double> last;
        const auto observer = [&](int restart, int iteration, double inertia) {
          ++steps;
          auto it = last.find(restart);
          if (it != last.end()) {
            if (inertia > it->second * (1.0 + 1e-12)) {
              out.Fail(fmt::format("trial {} k {} restart {} iter {}: inertia rose {} -> {}", trial,
                                   k, restart, iteration, it->second, inertia));
            }
          }
          last[restart] = inertia;
        };
        const ClusteringResult a = KMeans(data, cfg, observer);
        const ClusteringResult b = KMeans(data, cfg);
        ++runs;
        if (static_cast<int>(a.restarts_inertias.size()) != cfg.n_init) {
          out.Fail(fmt::format("trial {} k {}: {} restarts", trial, k, a.restarts_inertias.size()));
        }
        for (double r : a.restarts_inertias) {
          if (a.inertia > r) out.Fail(fmt::format("trial {} k {}: best {} > restart {}", trial, k, a.inertia, r));
        }
        if (a.assignments != b.assignments || a.inertia != b.inertia) {
          out.Fail(fmt::format("trial {} k {}: repeated run differs", trial, k));
        }
      }
    }
    if (out.pass) {
      out.detail = fmt::format("{} instrumented runs, {} observed Lloyd steps", runs, steps);
    }
  });
}
