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

#ifndef FAIRSCOPE_CONSTRAINTS_H_
#define FAIRSCOPE_CONSTRAINTS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairscope/portfolio.h"

namespace fairscope {

// Model index pair with first < second.
struct IndexPair {
  std::size_t first = 0;
  std::size_t second = 0;

  auto operator<=>(const IndexPair&) const = default;
};

struct ConstraintConfig {
  double sim_threshold = 0.05;
  double dissim_threshold = 0.2;
  std::uint64_t seed = 42;
  std::optional<std::size_t> max_pairs_per_class;
  // Fixed plane normalization; data min/max when unset.
  std::optional<PlaneBounds> plane_bounds;

  // Throws ConfigError unless 0 < sim_threshold < dissim_threshold.
  void Validate() const;
};

// Thresholded pairs before balancing. Pairs are in lexicographic order.
struct ConstraintCandidates {
  std::vector<IndexPair> similar;
  std::vector<IndexPair> dissimilar;
  std::size_t excluded_zero_distance = 0;
};

struct ConstraintSet {
  std::vector<IndexPair> similar;
  std::vector<IndexPair> dissimilar;
  std::size_t excluded_zero_distance = 0;
  // Class sizes before balancing, after zero-distance exclusion.
  std::size_t similar_candidates = 0;
  std::size_t dissimilar_candidates = 0;
  ConstraintConfig config_used;

  std::size_t size() const { return similar.size() + dissimilar.size(); }
};

// Labels every pair by its normalized plane distance: strictly below
// sim_threshold is similar, strictly above dissim_threshold is dissimilar,
// anything in between is dropped. Pairs whose raw importance vectors are
// identical are dropped and counted.
ConstraintCandidates CandidatePairs(const Portfolio& portfolio, const ConstraintConfig& cfg);

// CandidatePairs followed by seeded balancing: the larger class is
// subsampled uniformly without replacement to the size of the smaller one,
// then both are capped at max_pairs_per_class. Throws
// InsufficientConstraintsError if either class is empty.
ConstraintSet BuildConstraints(const Portfolio& portfolio, const ConstraintConfig& cfg);

}  // namespace fairscope

#endif  // FAIRSCOPE_CONSTRAINTS_H_
