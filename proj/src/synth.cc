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

#include "fairscope/synth.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fairscope/errors.h"
#include "fairscope/random.h"

namespace fairscope {

void SynthConfig::Validate() const {
  if (n_models < 2) throw ConfigError("synthetic portfolios need at least 2 models");
  if (n_features < 1) throw ConfigError("n_features must be at least 1");
  if (n_archetypes < 1 || n_archetypes > n_models) {
    throw ConfigError(fmt::format("n_archetypes must lie in [1, n_models] (got {})",
                                  n_archetypes));
  }
  if (!(noise_sd >= 0.0)) throw ConfigError("noise_sd must be non-negative");
  if (!(exponent_a > 0.0) || !(exponent_b > 0.0)) {
    throw ConfigError("frontier exponents must be positive");
  }
  if (!(signal_level >= 0.0)) throw ConfigError("signal_level must be non-negative");
  if (n_nuisance_features < 0) throw ConfigError("n_nuisance_features must be non-negative");
  if (!(nuisance_level >= 0.0)) throw ConfigError("nuisance_level must be non-negative");
}

Portfolio GenerateSynthetic(const SynthConfig& cfg) {
  cfg.Validate();
  const int groups = cfg.n_archetypes;
  const auto informative = static_cast<std::size_t>(cfg.n_features);
  const std::size_t total = informative + static_cast<std::size_t>(cfg.n_nuisance_features);

  Portfolio p;
  p.dataset_name = "synthetic";
  p.method_name = "planted-frontier";
  p.performance_metric_name = "performance";
  p.fairness_metric_name = "fairness";
  for (std::size_t j = 0; j < informative; ++j) p.feature_names.push_back(fmt::format("f{:02}", j));
  for (int j = 0; j < cfg.n_nuisance_features; ++j) {
    p.feature_names.push_back(fmt::format("nuisance{:02}", j));
  }

  // Base vectors come from their own stream so they do not shift when the
  // model count changes.
  Rng base_rng(DeriveStageSeed(cfg.seed, "synth.base"));
  std::vector<std::vector<double>> base(static_cast<std::size_t>(groups),
                                        std::vector<double>(informative, 0.0));
  for (std::size_t j = 0; j < informative; ++j) base[0][j] = 0.001 * base_rng.Uniform();
  for (int g = 1; g < groups; ++g) {
    for (std::size_t j = 0; j < informative; ++j) {
      const bool in_block = static_cast<int>(j % static_cast<std::size_t>(groups - 1)) == g - 1;
      base[static_cast<std::size_t>(g)][j] =
          in_block ? cfg.signal_level * (0.75 + 0.5 * base_rng.Uniform()) : 0.0;
    }
  }

  Rng noise_rng(DeriveStageSeed(cfg.seed, "synth.noise"));
  const int width = static_cast<int>(std::to_string(cfg.n_models - 1).size());
  for (int m = 0; m < cfg.n_models; ++m) {
    const double theta = static_cast<double>(m) / static_cast<double>(cfg.n_models - 1);
    const int band = std::min(static_cast<int>(std::floor(theta * groups)), groups - 1);
    const int archetype = groups - 1 - band;

    ModelRecord rec;
    rec.id = fmt::format("m{:0{}}", m, width);
    rec.trade_off_param = theta;
    rec.performance = 0.5 + (0.9 - 0.5) * (1.0 - std::pow(theta, cfg.exponent_a));
    rec.fairness = std::pow(theta, cfg.exponent_b);
    rec.importances.resize(total);
    for (std::size_t j = 0; j < informative; ++j) {
      const double noise = cfg.noise_sd > 0.0 ? cfg.noise_sd * noise_rng.Normal() : 0.0;
      rec.importances[j] = base[static_cast<std::size_t>(archetype)][j] + noise;
    }
    for (std::size_t j = informative; j < total; ++j) {
      const double mode = noise_rng.Uniform() < 0.5 ? -cfg.nuisance_level : cfg.nuisance_level;
      const double noise = cfg.noise_sd > 0.0 ? cfg.noise_sd * noise_rng.Normal() : 0.0;
      rec.importances[j] = mode + noise;
    }
    rec.hyperparameters = HyperParameters{{kPlantedArchetypeKey, std::to_string(archetype)}};
    p.models.push_back(std::move(rec));
  }
  ValidatePortfolio(p);
  return p;
}

std::vector<int> PlantedLabels(const Portfolio& portfolio) {
  std::vector<int> labels;
  labels.reserve(portfolio.models.size());
  for (const auto& m : portfolio.models) {
    if (!m.hyperparameters) {
      throw ArgumentError(fmt::format("model '{}' has no planted archetype", m.id));
    }
    auto it = m.hyperparameters->find(kPlantedArchetypeKey);
    if (it == m.hyperparameters->end()) {
      throw ArgumentError(fmt::format("model '{}' has no planted archetype", m.id));
    }
    labels.push_back(std::stoi(it->second));
  }
  return labels;
}

}  // namespace fairscope
