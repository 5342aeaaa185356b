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

// Synthetic portfolios with a planted fairness-performance frontier and
// feature-importance archetypes.
//
// Model m gets theta_m = m / (n - 1) and sits on the frontier
//   performance = 0.5 + (0.9 - 0.5) * (1 - theta^a),   fairness = theta^b,
// so performance falls and fairness rises with theta.
//
// theta is cut into G equal bands, band = min(floor(theta * G), G - 1). The
// archetype index counts down from the fairest band: archetype = G - 1 - band.
// Archetype 0 therefore holds the fairest models and gets a near-zero base
// importance vector (a constant-output profile). Archetypes 1..G-1 put
// signal_level on their own block of features (features are dealt
// round-robin to the G - 1 blocks). Importances are base + N(0, noise_sd^2).
//
// Optional nuisance features carry no archetype information: each model
// draws one of two modes (+/- nuisance_level) at random per nuisance
// feature, plus noise. They make raw Euclidean clustering follow the
// nuisance modes instead of the archetypes.

#ifndef FAIRSCOPE_SYNTH_H_
#define FAIRSCOPE_SYNTH_H_

#include <cstdint>

#include "fairscope/portfolio.h"

namespace fairscope {

inline constexpr char kPlantedArchetypeKey[] = "planted_archetype";

struct SynthConfig {
  int n_models = 200;
  int n_features = 12;
  int n_archetypes = 5;
  double noise_sd = 0.01;
  double exponent_a = 2.0;
  double exponent_b = 1.0;
  std::uint64_t seed = 7;
  double signal_level = 0.1;
  int n_nuisance_features = 0;
  double nuisance_level = 0.0;

  void Validate() const;
};

Portfolio GenerateSynthetic(const SynthConfig& cfg);

// Planted archetype per model, read back from the hyperparameters.
std::vector<int> PlantedLabels(const Portfolio& portfolio);

}  // namespace fairscope

#endif  // FAIRSCOPE_SYNTH_H_
