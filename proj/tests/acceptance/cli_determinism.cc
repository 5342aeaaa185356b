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

// Two `fairscope run` invocations with identical flags write byte-identical
// results files.
//
// Usage: cli_determinism <path-to-fairscope> <scratch-dir>

#include <fmt/format.h>

#include "check.h"
#include "cli_util.h"

int main(int argc, char** argv) {
  using namespace fairscope::acceptance;
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <fairscope> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string exe = Quote(argv[1]);
  const std::filesystem::path dir = argv[2];
  return Run("cli_determinism", [&](Outcome& out) {
    std::filesystem::create_directories(dir);
    const auto portfolio = dir / "determinism_portfolio.json";
    const auto first = dir / "determinism_a.json";
    const auto second = dir / "determinism_b.json";
    auto r = RunCommand(fmt::format("{} synth --seed 11 --out {}", exe, Quote(portfolio)));
    if (r.exit_code != 0) return out.Fail(fmt::format("synth exited {}", r.exit_code));
    const std::string flags = "--sim-threshold 0.04 --dissim-threshold 0.25 --k-min 3 --k-max 12 --seed 99";
    for (const auto& target : {first, second}) {
      r = RunCommand(fmt::format("{} run --portfolio {} {} --out {}", exe, Quote(portfolio), flags, Quote(target)));
      if (r.exit_code != 0) return out.Fail(fmt::format("run exited {}", r.exit_code));
    }
    const std::string a = Slurp(first), b = Slurp(second);
    if (a.empty()) return out.Fail("empty results file");
    if (a != b) return out.Fail("results files differ");
    out.detail = fmt::format("two runs wrote identical {}-byte results files", a.size());
  });
}
