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

#include "fairscope/server.h"

#include <charconv>
#include <map>
#include <mutex>
#include <shared_mutex>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "fairscope/errors.h"
#include "fairscope/pipeline.h"
#include "fairscope/results.h"
#include "httplib.h"
#include "json.hpp"
#include "text_util.h"

namespace fairscope {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr char kJson[] = "application/json";

struct StoredRun {
  std::string run_id;
  std::shared_ptr<const Portfolio> portfolio;
  PipelineResult result;
  ordered_json document;  // results document including timings
};

void SendJson(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void SendError(httplib::Response& res, int status, std::string_view kind,
               const std::string& message, const std::string& stage = {}) {
  ordered_json err = {{"kind", kind}, {"message", message}};
  if (!stage.empty()) err["stage"] = stage;
  SendJson(res, status, {{"error", std::move(err)}});
}

int StatusFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kNumerical: return 500;
    case ErrorKind::kIo: return 500;
    default: return 422;
  }
}

ordered_json PortfolioSummary(const Portfolio& p) {
  return {{"fingerprint", PortfolioFingerprint(p)},
          {"dataset", p.dataset_name},
          {"method", p.method_name},
          {"performance_metric", p.performance_metric_name},
          {"fairness_metric", p.fairness_metric_name},
          {"n_models", p.num_models()},
          {"n_features", p.num_features()},
          {"feature_names", p.feature_names}};
}

ordered_json ModelToJson(const ModelRecord& m) {
  ordered_json out = {{"id", m.id},
                      {"trade_off_param", m.trade_off_param ? ordered_json(*m.trade_off_param)
                                                            : ordered_json(nullptr)},
                      {"performance", m.performance},
                      {"fairness", m.fairness},
                      {"importances", m.importances}};
  if (m.hyperparameters) {
    ordered_json hp = ordered_json::object();
    for (const auto& [k, v] : *m.hyperparameters) hp[k] = v;
    out["hyperparameters"] = std::move(hp);
  } else {
    out["hyperparameters"] = nullptr;
  }
  return out;
}

}  // namespace

struct ApiServer::State {
  ServerOptions options;
  httplib::Server http;

  // Guards `portfolio`, `runs`, `latest_run` and `next_run`.
  mutable std::shared_mutex store_mutex;
  std::shared_ptr<const Portfolio> portfolio;
  std::map<std::string, std::shared_ptr<const StoredRun>> runs;
  std::string latest_run;
  int next_run = 1;

  // Held for the whole duration of a pipeline run and of a portfolio swap.
  std::mutex worker_mutex;

  std::shared_ptr<const Portfolio> CurrentPortfolio() const {
    std::shared_lock lock(store_mutex);
    return portfolio;
  }

  std::shared_ptr<const StoredRun> FindRun(const std::string& id) const {
    std::shared_lock lock(store_mutex);
    auto it = runs.find(id);
    return it == runs.end() ? nullptr : it->second;
  }

  void Install();
  void HandleUploadPortfolio(const httplib::Request& req, httplib::Response& res);
  void HandleGetPortfolio(httplib::Response& res) const;
  void HandleRun(const httplib::Request& req, httplib::Response& res);
  void HandleRunResource(const httplib::Request& req, httplib::Response& res) const;
  void HandleModel(const httplib::Request& req, httplib::Response& res) const;
};

void ApiServer::State::Install() {
  http.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    SendJson(res, 200, {{"status", "ok"}});
  });
  http.Post("/api/portfolio", [this](const httplib::Request& req, httplib::Response& res) {
    HandleUploadPortfolio(req, res);
  });
  http.Get("/api/portfolio", [this](const httplib::Request&, httplib::Response& res) {
    HandleGetPortfolio(res);
  });
  http.Post("/api/run", [this](const httplib::Request& req, httplib::Response& res) {
    HandleRun(req, res);
  });
  http.Get(R"(/api/runs/([^/]+)(?:/(validation|clusters|profiles|features|heatmap))?)",
           [this](const httplib::Request& req, httplib::Response& res) {
             HandleRunResource(req, res);
           });
  http.Get(R"(/api/models/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    HandleModel(req, res);
  });
  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) SendError(res, res.status, "http", httplib::status_message(res.status));
  });
  http.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          SendError(res, 500, "internal", e.what());
        } catch (...) {
          SendError(res, 500, "internal", "unknown error");
        }
      });
  if (options.cors_origin) {
    const std::string origin = *options.cors_origin;
    http.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
  }
}

void ApiServer::State::HandleUploadPortfolio(const httplib::Request& req,
                                             httplib::Response& res) {
  Portfolio parsed;
  try {
    const bool csv = req.get_header_value("Content-Type").starts_with("text/csv");
    parsed = csv ? ParsePortfolioCsv(req.body) : ParsePortfolioJson(req.body);
  } catch (const Error& e) {
    SendError(res, 400, ErrorKindName(e.kind()), e.what());
    return;
  }
  auto next = std::make_shared<const Portfolio>(std::move(parsed));
  {
    std::lock_guard worker(worker_mutex);
    std::unique_lock lock(store_mutex);
    portfolio = next;
  }
  spdlog::info("portfolio replaced: {} models", next->num_models());
  SendJson(res, 200, PortfolioSummary(*next));
}

void ApiServer::State::HandleGetPortfolio(httplib::Response& res) const {
  const auto p = CurrentPortfolio();
  if (!p) {
    SendError(res, 404, "not_found", "no portfolio loaded");
    return;
  }
  ordered_json out = PortfolioSummary(*p);
  const auto plane = NormalizePlane(*p);
  ordered_json models = ordered_json::array();
  for (std::size_t i = 0; i < p->models.size(); ++i) {
    const auto& m = p->models[i];
    models.push_back({{"id", m.id},
                      {"trade_off_param", m.trade_off_param ? ordered_json(*m.trade_off_param)
                                                            : ordered_json(nullptr)},
                      {"performance", m.performance},
                      {"fairness", m.fairness},
                      {"plane", {{"performance", plane[i].performance},
                                 {"fairness", plane[i].fairness}}}});
  }
  out["models"] = std::move(models);
  SendJson(res, 200, out);
}

void ApiServer::State::HandleRun(const httplib::Request& req, httplib::Response& res) {
  PipelineConfig cfg;
  try {
    const json body = req.body.empty() ? json(nullptr) : json::parse(req.body);
    cfg = ConfigFromJson(body);
  } catch (const json::exception& e) {
    SendError(res, 400, "format", std::string("malformed request body: ") + e.what());
    return;
  } catch (const Error& e) {
    SendError(res, 400, ErrorKindName(e.kind()), e.what());
    return;
  }

  std::lock_guard worker(worker_mutex);
  const auto p = CurrentPortfolio();
  if (!p) {
    SendError(res, 409, "conflict", "no portfolio loaded; POST /api/portfolio first");
    return;
  }
  auto run = std::make_shared<StoredRun>();
  run->portfolio = p;
  try {
    run->result = RunPipeline(*p, cfg);
  } catch (const Error& e) {
    SendError(res, StatusFor(e), ErrorKindName(e.kind()), e.what(), e.stage());
    return;
  }
  {
    std::shared_lock lock(store_mutex);
    run->run_id = fmt::format("run-{:06}", next_run);
  }
  run->document = ResultToJson(run->result, true);
  if (options.persist_dir) {
    try {
      std::filesystem::create_directories(*options.persist_dir);
      internal::WriteFile(*options.persist_dir / (run->run_id + ".json"),
                          SerializeResult(run->result, true));
    } catch (const std::exception& e) {
      spdlog::error("could not persist {}: {}", run->run_id, e.what());
    }
  }
  {
    std::unique_lock lock(store_mutex);
    ++next_run;
    latest_run = run->run_id;
    runs.emplace(run->run_id, run);
  }
  SendJson(res, 200, {{"run_id", run->run_id},
                      {"k_star", run->result.validation.k_star},
                      {"chosen_k", run->result.chosen_k}});
}

void ApiServer::State::HandleRunResource(const httplib::Request& req,
                                         httplib::Response& res) const {
  const std::string id = req.matches[1];
  const std::string resource = req.matches.size() > 2 ? std::string(req.matches[2]) : "";
  const auto run = FindRun(id);
  if (!run) {
    SendError(res, 404, "not_found", fmt::format("unknown run '{}'", id));
    return;
  }
  const auto& doc = run->document;
  if (resource.empty()) {
    ordered_json out = {{"run_id", run->run_id}};
    for (const auto& item : doc.items()) out[item.key()] = item.value();
    SendJson(res, 200, out);
  } else if (resource == "validation") {
    SendJson(res, 200, doc["validation"]);
  } else if (resource == "clusters") {
    ordered_json members = ordered_json::array();
    const auto& r = run->result;
    for (std::size_t i = 0; i < r.models.size(); ++i) {
      members.push_back({{"id", r.models[i].id},
                         {"cluster", r.assignments[i]},
                         {"baseline_cluster", r.baseline_assignments[i]}});
    }
    SendJson(res, 200, {{"run_id", run->run_id},
                        {"chosen_k", r.chosen_k},
                        {"k_star", r.validation.k_star},
                        {"models", std::move(members)}});
  } else if (resource == "profiles") {
    SendJson(res, 200, doc["profiles"]);
  } else if (resource == "heatmap") {
    SendJson(res, 200, doc["heatmap"]);
  } else {  // features
    int top_n = std::min(run->result.config.top_n_features,
                         static_cast<int>(run->portfolio->num_features()));
    if (req.has_param("top_n")) {
      const std::string raw = req.get_param_value("top_n");
      const auto parsed = internal::ParseDouble(raw);
      if (!parsed || *parsed != static_cast<int>(*parsed)) {
        SendError(res, 400, "format", fmt::format("top_n must be an integer (got '{}')", raw));
        return;
      }
      top_n = static_cast<int>(*parsed);
    }
    try {
      const auto summaries = FeatureSummaries(*run->portfolio, run->result.assignments, top_n);
      PipelineResult view;
      view.features = summaries;
      SendJson(res, 200, ResultToJson(view, false)["features"]);
    } catch (const Error& e) {
      SendError(res, 400, ErrorKindName(e.kind()), e.what());
    }
  }
}

void ApiServer::State::HandleModel(const httplib::Request& req, httplib::Response& res) const {
  const std::string id = req.matches[1];
  std::shared_ptr<const Portfolio> p;
  std::shared_ptr<const StoredRun> latest;
  {
    std::shared_lock lock(store_mutex);
    p = portfolio;
    if (auto it = runs.find(latest_run); it != runs.end()) latest = it->second;
  }
  if (!p) {
    SendError(res, 404, "not_found", "no portfolio loaded");
    return;
  }
  const auto index = p->IndexOf(id);
  if (!index) {
    SendError(res, 404, "not_found", fmt::format("unknown model '{}'", id));
    return;
  }
  ordered_json out = {{"model", ModelToJson(p->models[*index])},
                      {"run_id", nullptr},
                      {"cluster", nullptr}};
  if (latest) {
    if (auto run_index = latest->portfolio->IndexOf(id)) {
      out["run_id"] = latest->run_id;
      out["cluster"] = latest->result.assignments[*run_index];
    }
  }
  SendJson(res, 200, out);
}

ApiServer::ApiServer(ServerOptions options) : state_(std::make_unique<State>()) {
  state_->options = std::move(options);
  state_->Install();
}

ApiServer::~ApiServer() { Stop(); }

void ApiServer::SetPortfolio(Portfolio portfolio) {
  auto next = std::make_shared<const Portfolio>(std::move(portfolio));
  std::lock_guard worker(state_->worker_mutex);
  std::unique_lock lock(state_->store_mutex);
  state_->portfolio = std::move(next);
}

bool ApiServer::Listen() {
  spdlog::info("listening on {}:{}", state_->options.host, state_->options.port);
  return state_->http.listen(state_->options.host, state_->options.port);
}

int ApiServer::BindToAnyPort() { return state_->http.bind_to_any_port(state_->options.host); }

bool ApiServer::ListenAfterBind() { return state_->http.listen_after_bind(); }

void ApiServer::Stop() {
  if (state_ && state_->http.is_running()) state_->http.stop();
}

void ApiServer::WaitUntilReady() const { state_->http.wait_until_ready(); }

}  // namespace fairscope
