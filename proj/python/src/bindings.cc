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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairscope/errors.h"
#include "fairscope/kmeans.h"
#include "fairscope/metric.h"
#include "fairscope/pipeline.h"
#include "fairscope/portfolio.h"
#include "fairscope/results.h"
#include "fairscope/synth.h"
#include "fairscope/validity.h"

namespace py = pybind11;
using namespace fairscope;

namespace {

std::vector<IndexPair> ToPairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<IndexPair> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

PYBIND11_MODULE(_fairscope, m) {
  m.doc() = "Native core of the FairScope model-portfolio explorer.";

  static py::exception<Error> error(m, "FairScopeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string msg = std::string(ErrorKindName(e.kind())) + ": " + e.what();
      if (!e.stage().empty()) msg += " (stage " + e.stage() + ")";
      py::set_error(error, msg.c_str());
    }
  });

  py::class_<ModelRecord>(m, "ModelRecord")
      .def_readonly("id", &ModelRecord::id)
      .def_readonly("trade_off_param", &ModelRecord::trade_off_param)
      .def_readonly("performance", &ModelRecord::performance)
      .def_readonly("fairness", &ModelRecord::fairness)
      .def_readonly("importances", &ModelRecord::importances)
      .def_readonly("hyperparameters", &ModelRecord::hyperparameters);

  py::class_<Portfolio>(m, "Portfolio")
      .def_readonly("dataset_name", &Portfolio::dataset_name)
      .def_readonly("method_name", &Portfolio::method_name)
      .def_readonly("feature_names", &Portfolio::feature_names)
      .def_readonly("models", &Portfolio::models)
      .def("__len__", &Portfolio::num_models)
      .def("importance_matrix", &Portfolio::ImportanceMatrix)
      .def("fingerprint", [](const Portfolio& p) { return PortfolioFingerprint(p); })
      .def("to_json", [](const Portfolio& p) { return PortfolioToJson(p); })
      .def("to_csv", [](const Portfolio& p) { return PortfolioToCsv(p); });

  m.def("load_portfolio", [](const std::string& path) { return LoadPortfolio(path); }, py::arg("path"));
  m.def("parse_portfolio_json", [](const std::string& text) { return ParsePortfolioJson(text); });
  m.def("parse_portfolio_csv", [](const std::string& text) { return ParsePortfolioCsv(text); });

  m.def(
      "generate_synthetic",
      [](int n_models, int n_features, int n_archetypes, double noise_sd, double a, double b,
         std::uint64_t seed) {
        SynthConfig cfg;
        cfg.n_models = n_models;
        cfg.n_features = n_features;
        cfg.n_archetypes = n_archetypes;
        cfg.noise_sd = noise_sd;
        cfg.exponent_a = a;
        cfg.exponent_b = b;
        cfg.seed = seed;
        return GenerateSynthetic(cfg);
      },
      py::arg("n_models") = 200, py::arg("n_features") = 12, py::arg("n_archetypes") = 5,
      py::arg("noise_sd") = 0.01, py::arg("a") = 2.0, py::arg("b") = 1.0, py::arg("seed") = 7);
  m.def("planted_labels", &PlantedLabels);

  m.def(
      "run_pipeline_json",
      [](const Portfolio& p, const std::string& config_json, bool with_timings) {
        const auto doc = config_json.empty() ? nlohmann::json(nullptr) : nlohmann::json::parse(config_json);
        const PipelineConfig cfg = ConfigFromJson(doc);
        PipelineResult r;
        {
          py::gil_scoped_release release;
          r = RunPipeline(p, cfg);
        }
        return SerializeResult(r, with_timings);
      },
      py::arg("portfolio"), py::arg("config_json") = "", py::arg("with_timings") = false);

  m.def("silhouette", [](const Eigen::MatrixXd& x, const std::vector<int>& labels) {
    return Silhouette(x, labels);
  });
  m.def("calinski_harabasz", [](const Eigen::MatrixXd& x, const std::vector<int>& labels) {
    return CalinskiHarabasz(x, labels).value;
  });
  m.def("davies_bouldin", [](const Eigen::MatrixXd& x, const std::vector<int>& labels) {
    return DaviesBouldin(x, labels);
  });
  m.def("dunn", [](const Eigen::MatrixXd& x, const std::vector<int>& labels) {
    return Dunn(x, labels).value;
  });
  m.def("adjusted_rand_index", [](const std::vector<int>& a, const std::vector<int>& b) {
    return AdjustedRandIndex(a, b);
  });

  m.def(
      "kmeans",
      [](const Eigen::MatrixXd& x, int k, int n_init, std::uint64_t seed) {
        KMeansConfig cfg;
        cfg.k = k;
        cfg.n_init = n_init;
        cfg.seed = seed;
        const ClusteringResult r = KMeans(x, cfg);
        py::dict out;
        out["assignments"] = r.assignments;
        out["centroids"] = r.centroids;
        out["inertia"] = r.inertia;
        out["restarts_inertias"] = r.restarts_inertias;
        return out;
      },
      py::arg("data"), py::arg("k"), py::arg("n_init") = 10, py::arg("seed") = 42);

  m.def(
      "learn_metric",
      [](const Eigen::MatrixXd& x, const std::vector<std::pair<std::size_t, std::size_t>>& similar,
         const std::vector<std::pair<std::size_t, std::size_t>>& dissimilar, int max_iter) {
        ItmlConfig cfg;
        cfg.max_iter = max_iter;
        const LearnedMetric r = LearnMetric(x, ToPairs(similar), ToPairs(dissimilar), cfg);
        py::dict out;
        out["M"] = r.M;
        out["L"] = r.L;
        out["converged"] = r.converged;
        out["constraint_satisfaction_before"] = r.constraint_satisfaction_before;
        out["constraint_satisfaction_after"] = r.constraint_satisfaction_after;
        return out;
      },
      py::arg("data"), py::arg("similar"), py::arg("dissimilar"), py::arg("max_iter") = 600);

  m.def("mahalanobis", [](const Eigen::MatrixXd& M, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return Mahalanobis(M, x, y);
  });
}
