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

#include "fairscope/constraints.h"

#include <cmath>

#include <fmt/format.h>

#include "fairscope/errors.h"
#include "fairscope/random.h"

namespace fairscope {

void ConstraintConfig::Validate() const {
  if (!(sim_threshold > 0.0) || !(sim_threshold < dissim_threshold) ||
      !std::isfinite(dissim_threshold)) {
    throw ConfigError(fmt::format(
        "thresholds must satisfy 0 < sim_threshold < dissim_threshold (got {} and {})",
        sim_threshold, dissim_threshold));
  }
  if (max_pairs_per_class && *max_pairs_per_class == 0) {
    throw ConfigError("max_pairs_per_class must be positive when set");
  }
  if (plane_bounds && (!(plane_bounds->performance_max >= plane_bounds->performance_min) ||
                       !(plane_bounds->fairness_max >= plane_bounds->fairness_min))) {
    throw ConfigError("plane bounds must satisfy min <= max on both axes");
  }
}

namespace {

bool SameImportances(const ModelRecord& a, const ModelRecord& b) {
  return a.importances == b.importances;
}

std::vector<IndexPair> Subsample(const std::vector<IndexPair>& pairs, std::size_t count,
                                 Rng& rng) {
  if (count >= pairs.size()) return pairs;
  std::vector<IndexPair> out;
  out.reserve(count);
  for (std::size_t idx : rng.SampleWithoutReplacement(pairs.size(), count)) {
    out.push_back(pairs[idx]);
  }
  return out;
}

}  // namespace

ConstraintCandidates CandidatePairs(const Portfolio& portfolio, const ConstraintConfig& cfg) {
  cfg.Validate();
  const auto plane = NormalizePlane(portfolio, cfg.plane_bounds);
  const std::size_t n = plane.size();
  ConstraintCandidates out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dp = plane[i].performance - plane[j].performance;
      const double df = plane[i].fairness - plane[j].fairness;
      const double d = std::sqrt(dp * dp + df * df);
      const bool similar = d < cfg.sim_threshold;
      const bool dissimilar = d > cfg.dissim_threshold;
      if (!similar && !dissimilar) continue;
      if (SameImportances(portfolio.models[i], portfolio.models[j])) {
        ++out.excluded_zero_distance;
        continue;
      }
      (similar ? out.similar : out.dissimilar).push_back({i, j});
    }
  }
  return out;
}

ConstraintSet BuildConstraints(const Portfolio& portfolio, const ConstraintConfig& cfg) {
  auto candidates = CandidatePairs(portfolio, cfg);
  if (candidates.similar.empty() || candidates.dissimilar.empty()) {
    throw InsufficientConstraintsError(candidates.similar.size(),
                                       candidates.dissimilar.size());
  }
  ConstraintSet out;
  out.excluded_zero_distance = candidates.excluded_zero_distance;
  out.similar_candidates = candidates.similar.size();
  out.dissimilar_candidates = candidates.dissimilar.size();
  out.config_used = cfg;

  Rng rng(cfg.seed);
  std::size_t per_class = std::min(candidates.similar.size(), candidates.dissimilar.size());
  if (cfg.max_pairs_per_class) per_class = std::min(per_class, *cfg.max_pairs_per_class);
  // Similar first, then dissimilar, so the draw sequence is fixed.
  out.similar = Subsample(candidates.similar, per_class, rng);
  out.dissimilar = Subsample(candidates.dissimilar, per_class, rng);
  return out;
}

}  // namespace fairscope
