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

// fairscope: batch front end for the portfolio pipeline.
//
//   fairscope run --portfolio P --out R.json [--sim-threshold ...]
//   fairscope validate --results R.json [--top 5]
//   fairscope profile --results R.json
//   fairscope heatmap --results R.json --out H.csv
//   fairscope synth --out P.json [--models 200 ...]
//   fairscope serve [--port 8080] [--portfolio P]
//
// Exit status: 0 ok, 1 input/validation/config error, 2 numerical failure,
// 64 usage error. FAIRSCOPE_LOG selects the log level
// (error|warn|info|debug, default warn); logs go to stderr.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "fairscope/errors.h"
#include "fairscope/pipeline.h"
#include "fairscope/portfolio.h"
#include "fairscope/report.h"
#include "fairscope/results.h"
#include "fairscope/server.h"
#include "fairscope/synth.h"

namespace {

using namespace fairscope;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("fairscope");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("FAIRSCOPE_LOG")) {
    const std::string name = env;
    if (name == "error") level = spdlog::level::err;
    else if (name == "warn") level = spdlog::level::warn;
    else if (name == "info") level = spdlog::level::info;
    else if (name == "debug") level = spdlog::level::debug;
    else std::cerr << "ignoring unknown FAIRSCOPE_LOG value '" << name << "'\n";
  }
  spdlog::set_level(level);
}

PipelineResult LoadResults(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw Error(ErrorKind::kIo, fmt::format("cannot open results file '{}'", path));
  std::string text;
  char buf[1 << 16];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, f)) > 0;) text.append(buf, got);
  std::fclose(f);
  return ParseResult(text);
}

void WriteText(const std::string& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error(ErrorKind::kIo, fmt::format("cannot write '{}'", path));
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw Error(ErrorKind::kIo, fmt::format("short write to '{}'", path));
}

struct RunArgs {
  std::string portfolio;
  std::string out;
  double sim = 0.05;
  double dissim = 0.2;
  int k_min = 3;
  int k_max = 20;
  std::optional<int> k_override;
  bool baseline = false;
  std::uint64_t seed = 42;
  bool with_timings = false;
};

int DoRun(const RunArgs& a) {
  const Portfolio portfolio = LoadPortfolio(a.portfolio);
  PipelineConfig cfg;
  cfg.constraint.sim_threshold = a.sim;
  cfg.constraint.dissim_threshold = a.dissim;
  if (a.k_min > a.k_max) {
    throw ConfigError(fmt::format("--k-min ({}) exceeds --k-max ({})", a.k_min, a.k_max));
  }
  cfg.k_grid.clear();
  for (int k = a.k_min; k <= a.k_max; ++k) cfg.k_grid.push_back(k);
  cfg.k_override = a.k_override;
  cfg.baseline_mode = a.baseline;
  cfg.seed = a.seed;

  const PipelineResult result = RunPipeline(portfolio, cfg);
  WriteText(a.out, SerializeResult(result, a.with_timings));
  std::cout << fmt::format("k* = {}, chosen k = {}, models = {}, results written to {}\n",
                           result.validation.k_star, result.chosen_k, result.models.size(), a.out);
  return kExitOk;
}

int ExitCodeFor(const Error& e) {
  return e.kind() == ErrorKind::kNumerical ? kExitNumerical : kExitInput;
}

ApiServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();

  CLI::App app{"FairScope: cluster and profile a portfolio of fairness-aware models"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline and write a results file");
  run_cmd->add_option("--portfolio", run.portfolio, "Portfolio file (.json or .csv)")->required();
  run_cmd->add_option("--sim-threshold", run.sim, "Plane distance below which pairs are similar")
      ->capture_default_str();
  run_cmd->add_option("--dissim-threshold", run.dissim,
                      "Plane distance above which pairs are dissimilar")
      ->capture_default_str();
  run_cmd->add_option("--k-min", run.k_min, "Smallest k in the validation grid")->capture_default_str();
  run_cmd->add_option("--k-max", run.k_max, "Largest k in the validation grid")->capture_default_str();
  run_cmd->add_option("--k-override", run.k_override, "Cluster at this k instead of k*");
  run_cmd->add_flag("--baseline", run.baseline, "Use the identity metric (raw importances)");
  run_cmd->add_option("--seed", run.seed, "Master seed")->capture_default_str();
  run_cmd->add_option("--out", run.out, "Results file to write")->required();
  run_cmd->add_flag("--with-timings", run.with_timings, "Include per-stage wall-clock timings");

  std::string results_path;
  std::size_t top = 5;
  auto* validate_cmd = app.add_subcommand("validate", "Print the composite validation table");
  validate_cmd->add_option("--results", results_path, "Results file")->required();
  validate_cmd->add_option("--top", top, "Number of rows to print")->capture_default_str();

  auto* profile_cmd = app.add_subcommand("profile", "Print the per-cluster metrics table");
  profile_cmd->add_option("--results", results_path, "Results file")->required();

  std::string heatmap_out;
  auto* heatmap_cmd = app.add_subcommand("heatmap", "Write the distance-change matrix as CSV");
  heatmap_cmd->add_option("--results", results_path, "Results file")->required();
  heatmap_cmd->add_option("--out", heatmap_out, "CSV file to write")->required();

  SynthConfig synth;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic portfolio with planted archetypes");
  synth_cmd->add_option("--models", synth.n_models, "Number of models")->capture_default_str();
  synth_cmd->add_option("--features", synth.n_features, "Number of features")->capture_default_str();
  synth_cmd->add_option("--archetypes", synth.n_archetypes, "Number of archetypes")->capture_default_str();
  synth_cmd->add_option("--noise-sd", synth.noise_sd, "Importance noise standard deviation")
      ->capture_default_str();
  synth_cmd->add_option("--a", synth.exponent_a, "Performance curve exponent")->capture_default_str();
  synth_cmd->add_option("--b", synth.exponent_b, "Fairness curve exponent")->capture_default_str();
  synth_cmd->add_option("--signal-level", synth.signal_level, "Archetype signal magnitude")
      ->capture_default_str();
  synth_cmd->add_option("--nuisance-features", synth.n_nuisance_features,
                        "High-variance features unrelated to the archetypes")
      ->capture_default_str();
  synth_cmd->add_option("--nuisance-level", synth.nuisance_level, "Nuisance feature magnitude")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Portfolio file to write (.json or .csv)")->required();

  ServerOptions serve;
  std::string serve_portfolio;
  std::string persist_dir;
  std::string cors_origin;
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP API");
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--portfolio", serve_portfolio, "Portfolio to load at startup");
  serve_cmd->add_option("--persist-dir", persist_dir, "Directory receiving one results file per run");
  serve_cmd->add_option("--cors-origin", cors_origin, "Allowed browser origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return DoRun(run);

    if (validate_cmd->parsed()) {
      std::cout << FormatValidationTable(LoadResults(results_path).validation, top);
      return kExitOk;
    }
    if (profile_cmd->parsed()) {
      std::cout << FormatProfileTable(LoadResults(results_path).profiles);
      return kExitOk;
    }
    if (heatmap_cmd->parsed()) {
      WriteText(heatmap_out, HeatmapToCsv(LoadResults(results_path).heatmap));
      return kExitOk;
    }
    if (synth_cmd->parsed()) {
      const Portfolio p = GenerateSynthetic(synth);
      SavePortfolio(p, synth_out, FormatFromPath(synth_out));
      std::cout << fmt::format("wrote {} models to {}\n", p.num_models(), synth_out);
      return kExitOk;
    }
    if (serve_cmd->parsed()) {
      if (!persist_dir.empty()) serve.persist_dir = persist_dir;
      if (!cors_origin.empty()) serve.cors_origin = cors_origin;
      ApiServer server(serve);
      if (!serve_portfolio.empty()) server.SetPortfolio(LoadPortfolio(serve_portfolio));
      g_server = &server;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      std::cout << fmt::format("serving on http://{}:{}\n", serve.host, serve.port) << std::flush;
      const bool ok = server.Listen();
      g_server = nullptr;
      if (!ok) {
        std::cerr << fmt::format("error: cannot bind {}:{}\n", serve.host, serve.port);
        return kExitInput;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    if (e.stage().empty()) {
      std::cerr << fmt::format("error ({}): {}\n", ErrorKindName(e.kind()), e.what());
    } else {
      std::cerr << fmt::format("error ({}, stage {}): {}\n", ErrorKindName(e.kind()), e.stage(),
                               e.what());
    }
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
