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

#include <filesystem>
#include <thread>

#include <gtest/gtest.h>

#include "fairscope/portfolio.h"
#include "fairscope/synth.h"
#include "httplib.h"
#include "json.hpp"

namespace fairscope {
namespace {

using nlohmann::json;

class ServerTest : public ::testing::Test {
 protected:
  void Start(ServerOptions options = {}) {
    server_ = std::make_unique<ApiServer>(std::move(options));
    port_ = server_->BindToAnyPort();
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->ListenAfterBind(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(60, 0);
  }

  void TearDown() override {
    if (server_) server_->Stop();
    if (thread_.joinable()) thread_.join();
  }

  json Body(const httplib::Result& res) { return json::parse(res->body); }

  std::string UploadSynth() {
    SynthConfig cfg;
    cfg.n_models = 60;
    cfg.n_features = 6;
    cfg.n_archetypes = 3;
    return PortfolioToJson(GenerateSynthetic(cfg));
  }

  std::unique_ptr<ApiServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServerTest, HealthAndEmptyState) {
  Start();
  auto res = client_->Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Body(res)["status"], "ok");
  EXPECT_EQ(client_->Get("/api/portfolio")->status, 404);
  res = client_->Post("/api/run", "", "application/json");
  EXPECT_EQ(res->status, 409);
  EXPECT_TRUE(Body(res)["error"].contains("message"));
  EXPECT_EQ(client_->Get("/api/runs/unknown")->status, 404);
  EXPECT_EQ(client_->Get("/api/models/m000")->status, 404);
}

TEST_F(ServerTest, MalformedBodiesAre400) {
  Start();
  EXPECT_EQ(client_->Post("/api/portfolio", "{", "application/json")->status, 400);
  EXPECT_EQ(client_->Post("/api/portfolio", R"({"schema_version": 1})", "application/json")->status, 400);
  ASSERT_EQ(client_->Post("/api/portfolio", UploadSynth(), "application/json")->status, 200);
  EXPECT_EQ(client_->Post("/api/run", "[1,", "application/json")->status, 400);
  EXPECT_EQ(client_->Post("/api/run", R"({"bogus": 1})", "application/json")->status, 400);
}

TEST_F(ServerTest, RunLifecycle) {
  const auto persist = std::filesystem::temp_directory_path() / "fairscope_server_test_runs";
  std::filesystem::remove_all(persist);
  ServerOptions options;
  options.persist_dir = persist;
  Start(options);

  auto res = client_->Post("/api/portfolio", UploadSynth(), "application/json");
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Body(res)["n_models"], 60);
  EXPECT_EQ(Body(res)["fingerprint"].get<std::string>().rfind("fnv1a64:", 0), 0u);

  res = client_->Get("/api/portfolio");
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Body(res)["models"].size(), 60u);
  EXPECT_TRUE(Body(res)["models"][0].contains("plane"));

  res = client_->Post("/api/run", "{}", "application/json");
  ASSERT_EQ(res->status, 200) << res->body;
  const std::string run1 = Body(res)["run_id"];
  EXPECT_EQ(Body(res)["k_star"], 3);
  EXPECT_TRUE(std::filesystem::exists(persist / (run1 + ".json")));

  res = client_->Post("/api/run", "", "application/json");
  ASSERT_EQ(res->status, 200);
  const std::string run2 = Body(res)["run_id"];
  EXPECT_NE(run1, run2);

  json a = Body(client_->Get("/api/runs/" + run1));
  json b = Body(client_->Get("/api/runs/" + run2));
  EXPECT_EQ(a["run_id"], run1);
  EXPECT_EQ(a["validation"]["k_star"], 3);
  for (auto* doc : {&a, &b}) {
    doc->erase("run_id");
    doc->erase("timings");
  }
  EXPECT_EQ(a, b);
  EXPECT_EQ(client_->Get("/api/runs/" + run1)->body, client_->Get("/api/runs/" + run1)->body);

  for (const char* sub : {"validation", "clusters", "profiles", "features", "heatmap"}) {
    EXPECT_EQ(client_->Get("/api/runs/" + run1 + "/" + sub)->status, 200) << sub;
  }
  const json clusters = Body(client_->Get("/api/runs/" + run1 + "/clusters"));
  EXPECT_EQ(clusters["models"].size(), 60u);
  EXPECT_EQ(Body(client_->Get("/api/runs/" + run1 + "/features?top_n=2")).size(), 2u);
  EXPECT_EQ(client_->Get("/api/runs/" + run1 + "/features?top_n=x")->status, 400);
  EXPECT_EQ(client_->Get("/api/runs/" + run1 + "/features?top_n=99")->status, 400);

  const std::string first_id = clusters["models"][0]["id"];
  res = client_->Get("/api/models/" + first_id);
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Body(res)["run_id"], run2);
  EXPECT_EQ(Body(res)["cluster"], clusters["models"][0]["cluster"]);
  EXPECT_EQ(client_->Get("/api/models/nope")->status, 404);
}

TEST_F(ServerTest, PreconditionFailuresAre422WithStage) {
  Start();
  ASSERT_EQ(client_->Post("/api/portfolio", UploadSynth(), "application/json")->status, 200);
  auto res = client_->Post("/api/run", R"({"sim_threshold": 0.3, "dissim_threshold": 0.2})",
                           "application/json");
  EXPECT_EQ(res->status, 422) << res->body;
  res = client_->Post("/api/run", R"({"k_override": 500})", "application/json");
  EXPECT_EQ(res->status, 422);
  EXPECT_EQ(Body(res)["error"]["stage"], "configure");
}

TEST_F(ServerTest, CorsHeaders) {
  ServerOptions options;
  options.cors_origin = "http://localhost:5173";
  Start(options);
  auto res = client_->Get("/api/health");
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
  res = client_->Options("/api/run");
  EXPECT_EQ(res->status, 204);
}

TEST_F(ServerTest, ConcurrentReadersDuringRuns) {
  Start();
  ASSERT_EQ(client_->Post("/api/portfolio", UploadSynth(), "application/json")->status, 200);
  auto first = client_->Post("/api/run", "{}", "application/json");
  const std::string run1 = Body(first)["run_id"];
  const std::string reference = client_->Get("/api/runs/" + run1)->body;
  std::thread writer([this] {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(60, 0);
    for (int i = 0; i < 3; ++i) c.Post("/api/run", "{}", "application/json");
  });
  httplib::Client reader("127.0.0.1", port_);
  for (int i = 0; i < 20; ++i) {
    auto res = reader.Get("/api/runs/" + run1);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->body, reference);
  }
  writer.join();
}

}  // namespace
}  // namespace fairscope
