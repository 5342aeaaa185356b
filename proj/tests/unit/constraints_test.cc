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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "fairscope/errors.h"
#include "fairscope/synth.h"
#include "fixtures.h"

namespace fairscope {
namespace {

using testing::MakePortfolio;

// Plane positions (0,0), (0.01,0), (0.5,0.5), (1,1) already span [0,1].
Portfolio FourModels() {
  return MakePortfolio({{0.0, 0.0, {0.1, 0.0}},
                        {0.01, 0.0, {0.2, 0.0}},
                        {0.5, 0.5, {0.3, 0.1}},
                        {1.0, 1.0, {0.4, 0.2}}});
}

TEST(ConstraintsTest, FourModelCandidates) {
  const auto c = CandidatePairs(FourModels(), ConstraintConfig{});
  EXPECT_EQ(c.similar, (std::vector<IndexPair>{{0, 1}}));
  EXPECT_EQ(c.dissimilar, (std::vector<IndexPair>{{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  const ConstraintSet s = BuildConstraints(FourModels(), ConstraintConfig{});
  EXPECT_EQ(s.similar.size(), 1u);
  EXPECT_EQ(s.dissimilar.size(), 1u);
  EXPECT_EQ(s.similar_candidates, 1u);
  EXPECT_EQ(s.dissimilar_candidates, 5u);
}

TEST(ConstraintsTest, IdenticalPositionsOnlyIsInsufficient) {
  const Portfolio p = MakePortfolio({{0.5, 0.5, {0.1}}, {0.5, 0.5, {0.2}}});
  try {
    BuildConstraints(p, ConstraintConfig{});
    FAIL();
  } catch (const InsufficientConstraintsError& e) {
    EXPECT_EQ(e.similar_count(), 1u);
    EXPECT_EQ(e.dissimilar_count(), 0u);
  }
}

TEST(ConstraintsTest, ZeroDistanceImportancesExcluded) {
  const Portfolio p = MakePortfolio({{0.0, 0.0, {0.1, 0.1}},
                                     {0.01, 0.0, {0.1, 0.1}},
                                     {1.0, 1.0, {0.3, 0.1}}});
  const auto c = CandidatePairs(p, ConstraintConfig{});
  EXPECT_EQ(c.excluded_zero_distance, 1u);
  EXPECT_TRUE(c.similar.empty());
}

TEST(ConstraintsTest, ThresholdsAreStrict) {
  // Distances exactly equal to the thresholds fall in the dropped middle band.
  const Portfolio p = MakePortfolio({{0.0, 0.0, {0.1}}, {0.125, 0.0, {0.2}}, {0.5, 0.0, {0.3}}, {1.0, 1.0, {0.4}}});
  ConstraintConfig cfg;
  cfg.sim_threshold = 0.125;
  cfg.dissim_threshold = 0.5;
  cfg.plane_bounds = PlaneBounds{0.0, 1.0, 0.0, 1.0};
  const auto c = CandidatePairs(p, cfg);
  EXPECT_TRUE(std::find(c.similar.begin(), c.similar.end(), IndexPair{0, 1}) == c.similar.end());
  EXPECT_TRUE(std::find(c.dissimilar.begin(), c.dissimilar.end(), IndexPair{0, 2}) == c.dissimilar.end());
}

TEST(ConstraintsTest, RejectsBadConfig) {
  ConstraintConfig cfg;
  cfg.sim_threshold = 0.3;
  EXPECT_THROW(BuildConstraints(FourModels(), cfg), ConfigError);
  cfg.sim_threshold = 0.0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(ConstraintsTest, BalancedDistinctOrderedAndDeterministic) {
  const Portfolio p = GenerateSynthetic(SynthConfig{});
  ConstraintConfig cfg;
  cfg.seed = 5;
  const ConstraintSet a = BuildConstraints(p, cfg);
  const ConstraintSet b = BuildConstraints(p, cfg);
  EXPECT_EQ(a.similar, b.similar);
  EXPECT_EQ(a.dissimilar, b.dissimilar);
  EXPECT_EQ(a.similar.size(), a.dissimilar.size());
  std::set<IndexPair> all;
  const Eigen::MatrixXd x = p.ImportanceMatrix();
  for (const auto* list : {&a.similar, &a.dissimilar}) {
    for (const auto& pr : *list) {
      EXPECT_LT(pr.first, pr.second);
      EXPECT_TRUE(all.insert(pr).second);
      EXPECT_GT((x.row(pr.first) - x.row(pr.second)).norm(), 0.0);
    }
  }
  cfg.max_pairs_per_class = 7;
  const ConstraintSet capped = BuildConstraints(p, cfg);
  EXPECT_EQ(capped.similar.size(), 7u);
  EXPECT_EQ(capped.dissimilar.size(), 7u);
}

TEST(ConstraintsTest, RaisingSimThresholdOnlyAddsCandidates) {
  const Portfolio p = GenerateSynthetic(SynthConfig{});
  ConstraintConfig lo, hi;
  lo.sim_threshold = 0.03;
  hi.sim_threshold = 0.08;
  const auto a = CandidatePairs(p, lo).similar;
  const auto b = CandidatePairs(p, hi).similar;
  EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  EXPECT_GT(b.size(), a.size());
}

TEST(ConstraintsTest, FixedBoundsMakeLabelsStableUnderRemoval) {
  Portfolio p = GenerateSynthetic(SynthConfig{});
  ConstraintConfig cfg;
  cfg.plane_bounds = PlaneBounds{0.0, 1.0, 0.0, 1.0};
  const auto full = CandidatePairs(p, cfg);
  const std::string removed = p.models[17].id;
  const std::vector<std::string> ids = [&] {
    std::vector<std::string> v;
    for (const auto& m : p.models) v.push_back(m.id);
    return v;
  }();
  p.models.erase(p.models.begin() + 17);
  const auto reduced = CandidatePairs(p, cfg);
  // Map reduced indices back to the original ids; every surviving pair keeps its label.
  auto label_set = [&](const std::vector<IndexPair>& pairs, bool reindex) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& pr : pairs) {
      const auto a = reindex ? p.models[pr.first].id : ids[pr.first];
      const auto b = reindex ? p.models[pr.second].id : ids[pr.second];
      if (a != removed && b != removed) out.insert({a, b});
    }
    return out;
  };
  EXPECT_EQ(label_set(full.similar, false), label_set(reduced.similar, true));
  EXPECT_EQ(label_set(full.dissimilar, false), label_set(reduced.dissimilar, true));
}

}  // namespace
}  // namespace fairscope
