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

#ifndef FAIRSCOPE_TESTS_UNIT_FIXTURES_H_
#define FAIRSCOPE_TESTS_UNIT_FIXTURES_H_

#include <string>
#include <vector>

#include "fairscope/portfolio.h"

namespace fairscope::testing {

struct Row {
  double performance;
  double fairness;
  std::vector<double> importances;
};

// Portfolio with models "m0", "m1", ... and features "f0", "f1", ...
inline Portfolio MakePortfolio(const std::vector<Row>& rows) {
  Portfolio p;
  p.dataset_name = "toy";
  p.method_name = "unit";
  p.performance_metric_name = "accuracy";
  p.fairness_metric_name = "parity";
  const std::size_t dim = rows.empty() ? 1 : rows[0].importances.size();
  for (std::size_t j = 0; j < dim; ++j) p.feature_names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ModelRecord m;
    m.id = "m" + std::to_string(i);
    m.trade_off_param = static_cast<double>(i) / static_cast<double>(rows.size());
    m.performance = rows[i].performance;
    m.fairness = rows[i].fairness;
    m.importances = rows[i].importances;
    p.models.push_back(std::move(m));
  }
  return p;
}

}  // namespace fairscope::testing

#endif  // FAIRSCOPE_TESTS_UNIT_FIXTURES_H_
