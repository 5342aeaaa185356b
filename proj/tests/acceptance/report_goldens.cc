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

// `fairscope validate` and `fairscope profile` output matches the golden
// files, and both tables carry the expected column headers and number
// formats (5-decimal indices with a 2-decimal Calinski-Harabasz column;
// 6-decimal total variance and "mean ± SD" to 4 decimals).
//
// Usage: report_goldens <path-to-fairscope> <scratch-dir> <golden-dir>

#include <regex>

#include <fmt/format.h>

#include "check.h"
#include "cli_util.h"

namespace {

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fairscope::acceptance;
  if (argc != 4) {
    std::fprintf(stderr, "usage: %s <fairscope> <scratch-dir> <golden-dir>\n", argv[0]);
    return 2;
  }
  const std::string exe = Quote(argv[1]);
  const std::filesystem::path dir = argv[2];
  const std::filesystem::path golden = argv[3];
  return Run("report_goldens", [&](Outcome& out) {
    std::filesystem::create_directories(dir);
    const auto portfolio = dir / "golden_portfolio.json";
    const auto results = dir / "golden_results.json";
    auto r = RunCommand(fmt::format("{} synth --out {}", exe, Quote(portfolio)));
    if (r.exit_code != 0) return out.Fail(fmt::format("synth exited {}", r.exit_code));
    r = RunCommand(fmt::format("{} run --portfolio {} --out {}", exe, Quote(portfolio), Quote(results)));
    if (r.exit_code != 0) return out.Fail(fmt::format("run exited {}", r.exit_code));

    const auto validate = RunCommand(fmt::format("{} validate --results {} --top 5", exe, Quote(results)));
    const auto profile = RunCommand(fmt::format("{} profile --results {}", exe, Quote(results)));
    if (validate.exit_code != 0 || profile.exit_code != 0) {
      return out.Fail(fmt::format("validate/profile exited {}/{}", validate.exit_code, profile.exit_code));
    }

    const auto vlines = Lines(validate.output);
    const auto plines = Lines(profile.output);
    if (vlines.empty() ||
        vlines[0] != "k, Silhouette (↑), Calinski–Harabasz (↑), Davies–Bouldin (↓), Dunn (↑), Composite Score (↑)") {
      out.Fail("validate header mismatch");
    }
    if (plines.empty() || plines[0] != "Cluster, n_points, Total Variance, Performance (±SD), Fairness (±SD)") {
      out.Fail("profile header mismatch");
    }
    if (vlines.size() != 6) out.Fail(fmt::format("validate printed {} rows, want 5", vlines.size() - 1));
    const std::regex vrow(R"(\d+, -?\d+\.\d{5}, -?\d+\.\d{2}, -?\d+\.\d{5}, -?\d+\.\d{5}, -?\d+\.\d{5})");
    const std::regex prow(R"(\d+, \d+, \d+\.\d{6}, -?\d+\.\d{4} ± \d+\.\d{4}, -?\d+\.\d{4} ± \d+\.\d{4})");
    for (std::size_t i = 1; i < vlines.size(); ++i) {
      if (!std::regex_match(vlines[i], vrow)) out.Fail("validate row format: " + vlines[i]);
    }
    for (std::size_t i = 1; i < plines.size(); ++i) {
      if (!std::regex_match(plines[i], prow)) out.Fail("profile row format: " + plines[i]);
    }
    // The published top row, rendered through the same row format.
    if (!std::regex_match(std::string("5, 0.80750, 4344.64, 0.31823, 0.17496, 1.57026"), vrow)) {
      out.Fail("reference row does not fit the validate row format");
    }

    if (validate.output != Slurp(golden / "validate.txt")) out.Fail("validate output differs from golden");
    if (profile.output != Slurp(golden / "profile.txt")) out.Fail("profile output differs from golden");
    if (out.pass) {
      out.detail = fmt::format("validate ({} rows) and profile ({} clusters) match goldens",
                               vlines.size() - 1, plines.size() - 1);
    }
  });
}
