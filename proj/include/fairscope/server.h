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

// HTTP/JSON service used by the explorer UI.
//
//   GET  /api/health
//   POST /api/portfolio                 JSON portfolio (or CSV with
//                                       Content-Type text/csv)
//   GET  /api/portfolio                 metadata + plane coordinates
//   POST /api/run                       PipelineConfig JSON, runs synchronously
//   GET  /api/runs/{id}                 full results document + run_id
//   GET  /api/runs/{id}/validation|clusters|profiles|heatmap
//   GET  /api/runs/{id}/features?top_n=N
//   GET  /api/models/{id}               record + cluster in the latest run
//
// Errors are {"error": {"kind", "message", "stage"?}} with status 400
// (malformed body), 404 (unknown run/model), 409 (run without a portfolio),
// 422 (pipeline preconditions) or 500 (numerical failure).
//
// Runs execute one at a time; stored runs are immutable and readers never
// see a partially written run. Replacing the portfolio waits for the
// current run to finish.

#ifndef FAIRSCOPE_SERVER_H_
#define FAIRSCOPE_SERVER_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "fairscope/portfolio.h"

namespace fairscope {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> persist_dir;
  std::optional<std::string> cors_origin;
};

class ApiServer {
 public:
  explicit ApiServer(ServerOptions options);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  void SetPortfolio(Portfolio portfolio);

  // Blocks until Stop(). Returns false if the port cannot be bound.
  bool Listen();

  // Binds an ephemeral port on the configured host and returns it; follow
  // with ListenAfterBind() (blocking). Returns -1 on failure.
  int BindToAnyPort();
  bool ListenAfterBind();

  void Stop();
  void WaitUntilReady() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace fairscope

#endif  // FAIRSCOPE_SERVER_H_
