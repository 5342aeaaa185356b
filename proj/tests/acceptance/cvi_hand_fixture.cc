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

// The 4-point fixture {(0,0),(0,2)} / {(10,0),(10,2)} gives CH = 50,
// DB = 0.2 and Dunn = 5 to within 1e-12.

#include <cmath>

#include <fmt/format.h>

#include "check.h"
#include "fairscope/validity.h"

int main() {
  using namespace fairscope;
  return acceptance::Run("cvi_hand_fixture", [](acceptance::Outcome& out) {
    Eigen::MatrixXd data(4, 2);
    data << 0, 0, 0, 2, 10, 0, 10, 2;
    const std::vector<int> labels = {0, 0, 1, 1};
    const IndexValue ch = CalinskiHarabasz(data, labels);
    const double db = DaviesBouldin(data, labels);
    const IndexValue dunn = Dunn(data, labels);
    if (ch.sentinel || std::abs(ch.value - 50.0) > 1e-12) out.Fail(fmt::format("CH = {}", ch.value));
    if (std::abs(db - 0.2) > 1e-12) out.Fail(fmt::format("DB = {}", db));
    if (dunn.sentinel || std::abs(dunn.value - 5.0) > 1e-12) out.Fail(fmt::format("Dunn = {}", dunn.value));
    if (out.pass) out.detail = fmt::format("CH = {}, DB = {}, Dunn = {}", ch.value, db, dunn.value);
  });
}
