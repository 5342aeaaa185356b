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

#include "fairscope/results.h"

#include <fmt/format.h>

#include "fairscope/errors.h"

namespace fairscope {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json MatrixToJson(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
ordered_json Nullable(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

// Typed accessors that turn nlohmann's type errors into FormatErrors with a
// field path.
const json& At(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw FormatError("expected an object", 0, where);
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError("missing key", 0, where + "." + key);
  return *it;
}

template <typename T>
T Get(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("wrong type: ") + e.what(), 0, where);
  }
}

template <typename T>
T GetAt(const json& obj, const std::string& key, const std::string& where) {
  return Get<T>(At(obj, key, where), where + "." + key);
}

Eigen::MatrixXd MatrixFromJson(const json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError("expected a nested array", 0, where);
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(v[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw FormatError("ragged matrix", 0, fmt::format("{}[{}]", where, i));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = Get<double>(row[static_cast<std::size_t>(j)], where);
    }
  }
  return m;
}

template <typename Allowed>
void CheckKeys(const json& obj, const Allowed& allowed, const std::string& where) {
  if (!obj.is_object()) throw FormatError("expected an object", 0, where);
  for (const auto& item : obj.items()) {
    if (std::find(std::begin(allowed), std::end(allowed), item.key()) == std::end(allowed)) {
      throw FormatError("unknown key", 0, where.empty() ? item.key() : where + "." + item.key());
    }
  }
}

}  // namespace

ordered_json ConfigToJson(const PipelineConfig& cfg) {
  ordered_json out;
  out["sim_threshold"] = cfg.constraint.sim_threshold;
  out["dissim_threshold"] = cfg.constraint.dissim_threshold;
  out["max_pairs_per_class"] = Nullable(cfg.constraint.max_pairs_per_class);
  if (cfg.constraint.plane_bounds) {
    const auto& b = *cfg.constraint.plane_bounds;
    out["plane_bounds"] = {{"performance_min", b.performance_min},
                           {"performance_max", b.performance_max},
                           {"fairness_min", b.fairness_min},
                           {"fairness_max", b.fairness_max}};
  } else {
    out["plane_bounds"] = nullptr;
  }
  out["itml"] = {{"gamma", cfg.itml.gamma},
                 {"max_iter", cfg.itml.max_iter},
                 {"convergence_tol", cfg.itml.convergence_tol},
                 {"bound_u", Nullable(cfg.itml.bound_u)},
                 {"bound_l", Nullable(cfg.itml.bound_l)}};
  out["kmeans"] = {{"n_init", cfg.kmeans.n_init},
                   {"max_lloyd_iter", cfg.kmeans.max_lloyd_iter},
                   {"rel_tol", cfg.kmeans.rel_tol}};
  out["k_grid"] = cfg.k_grid;
  out["k_override"] = Nullable(cfg.k_override);
  out["baseline_mode"] = cfg.baseline_mode;
  out["seed"] = cfg.seed;
  out["top_n_features"] = cfg.top_n_features;
  return out;
}

PipelineConfig ConfigFromJson(const json& doc) {
  static const std::vector<std::string> kKeys = {
      "sim_threshold", "dissim_threshold", "max_pairs_per_class", "plane_bounds", "itml",
      "kmeans",        "k_grid",           "k_min",               "k_max",        "k_override",
      "baseline_mode", "seed",             "top_n_features"};
  if (doc.is_null()) return {};
  CheckKeys(doc, kKeys, "");
  PipelineConfig cfg;
  auto opt = [&](const json& obj, const char* key) -> const json* {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  };
  if (auto* v = opt(doc, "sim_threshold")) cfg.constraint.sim_threshold = Get<double>(*v, "sim_threshold");
  if (auto* v = opt(doc, "dissim_threshold")) cfg.constraint.dissim_threshold = Get<double>(*v, "dissim_threshold");
  if (auto* v = opt(doc, "max_pairs_per_class")) {
    cfg.constraint.max_pairs_per_class = Get<std::size_t>(*v, "max_pairs_per_class");
  }
  if (auto* v = opt(doc, "plane_bounds")) {
    static const std::vector<std::string> kBoundKeys = {"performance_min", "performance_max",
                                                        "fairness_min", "fairness_max"};
    CheckKeys(*v, kBoundKeys, "plane_bounds");
    PlaneBounds b;
    b.performance_min = GetAt<double>(*v, "performance_min", "plane_bounds");
    b.performance_max = GetAt<double>(*v, "performance_max", "plane_bounds");
    b.fairness_min = GetAt<double>(*v, "fairness_min", "plane_bounds");
    b.fairness_max = GetAt<double>(*v, "fairness_max", "plane_bounds");
    cfg.constraint.plane_bounds = b;
  }
  if (auto* v = opt(doc, "itml")) {
    static const std::vector<std::string> kItmlKeys = {"gamma", "max_iter", "convergence_tol",
                                                       "bound_u", "bound_l"};
    CheckKeys(*v, kItmlKeys, "itml");
    if (auto* x = opt(*v, "gamma")) cfg.itml.gamma = Get<double>(*x, "itml.gamma");
    if (auto* x = opt(*v, "max_iter")) cfg.itml.max_iter = Get<int>(*x, "itml.max_iter");
    if (auto* x = opt(*v, "convergence_tol")) cfg.itml.convergence_tol = Get<double>(*x, "itml.convergence_tol");
    if (auto* x = opt(*v, "bound_u")) cfg.itml.bound_u = Get<double>(*x, "itml.bound_u");
    if (auto* x = opt(*v, "bound_l")) cfg.itml.bound_l = Get<double>(*x, "itml.bound_l");
  }
  if (auto* v = opt(doc, "kmeans")) {
    static const std::vector<std::string> kKmKeys = {"n_init", "max_lloyd_iter", "rel_tol"};
    CheckKeys(*v, kKmKeys, "kmeans");
    if (auto* x = opt(*v, "n_init")) cfg.kmeans.n_init = Get<int>(*x, "kmeans.n_init");
    if (auto* x = opt(*v, "max_lloyd_iter")) cfg.kmeans.max_lloyd_iter = Get<int>(*x, "kmeans.max_lloyd_iter");
    if (auto* x = opt(*v, "rel_tol")) cfg.kmeans.rel_tol = Get<double>(*x, "kmeans.rel_tol");
  }
  const json* grid = opt(doc, "k_grid");
  const json* kmin = opt(doc, "k_min");
  const json* kmax = opt(doc, "k_max");
  if (grid && (kmin || kmax)) {
    throw FormatError("give either k_grid or k_min/k_max, not both", 0, "k_grid");
  }
  if (grid) {
    cfg.k_grid = Get<std::vector<int>>(*grid, "k_grid");
  } else if (kmin || kmax) {
    const int lo = kmin ? Get<int>(*kmin, "k_min") : 3;
    const int hi = kmax ? Get<int>(*kmax, "k_max") : 20;
    cfg.k_grid.clear();
    for (int k = lo; k <= hi; ++k) cfg.k_grid.push_back(k);
  }
  if (auto* v = opt(doc, "k_override")) cfg.k_override = Get<int>(*v, "k_override");
  if (auto* v = opt(doc, "baseline_mode")) cfg.baseline_mode = Get<bool>(*v, "baseline_mode");
  if (auto* v = opt(doc, "seed")) cfg.seed = Get<std::uint64_t>(*v, "seed");
  if (auto* v = opt(doc, "top_n_features")) cfg.top_n_features = Get<int>(*v, "top_n_features");
  return cfg;
}

ordered_json ResultToJson(const PipelineResult& r, bool include_timings) {
  ordered_json out;
  out["schema_version"] = kResultsSchemaVersion;
  out["kind"] = "fairscope.results";

  ordered_json models = ordered_json::array();
  for (const auto& m : r.models) {
    models.push_back({{"id", m.id},
                      {"trade_off_param", Nullable(m.trade_off_param)},
                      {"performance", m.performance},
                      {"fairness", m.fairness},
                      {"plane", {{"performance", m.plane.performance}, {"fairness", m.plane.fairness}}}});
  }
  out["portfolio"] = {{"fingerprint", r.fingerprint},
                      {"dataset", r.dataset_name},
                      {"method", r.method_name},
                      {"performance_metric", r.performance_metric_name},
                      {"fairness_metric", r.fairness_metric_name},
                      {"feature_names", r.feature_names},
                      {"models", std::move(models)}};
  out["config"] = ConfigToJson(r.config);
  if (r.constraints) {
    out["constraints"] = {{"similar", r.constraints->similar},
                          {"dissimilar", r.constraints->dissimilar},
                          {"similar_candidates", r.constraints->similar_candidates},
                          {"dissimilar_candidates", r.constraints->dissimilar_candidates},
                          {"excluded_zero_distance", r.constraints->excluded_zero_distance}};
  } else {
    out["constraints"] = nullptr;
  }
  out["metric"] = {
      {"learned", !r.config.baseline_mode},
      {"M", MatrixToJson(r.metric.M)},
      {"L", MatrixToJson(r.metric.L)},
      {"sweeps_run", r.metric.sweeps_run},
      {"converged", r.metric.converged},
      {"bound_u", r.metric.bound_u},
      {"bound_l", r.metric.bound_l},
      {"constraint_satisfaction_before", r.metric.constraint_satisfaction_before},
      {"constraint_satisfaction_after", r.metric.constraint_satisfaction_after},
      {"factor_fallback", r.metric.factor_fallback},
      {"diagnostics",
       {{"frobenius_dist_to_identity", r.diagnostics.frobenius_dist_to_identity},
        {"offdiag_ratio", r.diagnostics.offdiag_ratio},
        {"eigenvalues", r.diagnostics.eigenvalues}}}};

  ordered_json rows = ordered_json::array();
  for (const auto& row : r.validation.rows) {
    rows.push_back({{"k", row.k},
                    {"silhouette", row.silhouette},
                    {"calinski_harabasz", row.calinski_harabasz},
                    {"davies_bouldin", row.davies_bouldin},
                    {"dunn", row.dunn},
                    {"z_sil", row.z_sil},
                    {"z_ch", row.z_ch},
                    {"z_db", row.z_db},
                    {"z_dunn", row.z_dunn},
                    {"composite", row.composite},
                    {"usable", row.usable},
                    {"note", row.note}});
  }
  out["validation"] = {{"k_grid", r.validation.k_grid},
                       {"k_star", r.validation.k_star},
                       {"rows", std::move(rows)}};
  out["clustering"] = {{"chosen_k", r.chosen_k},
                       {"k_overridden", r.config.k_override.has_value()},
                       {"assignments", r.assignments},
                       {"inertia", r.inertia},
                       {"baseline_assignments", r.baseline_assignments}};

  ordered_json profiles = ordered_json::array();
  for (const auto& p : r.profiles) {
    profiles.push_back({{"cluster_id", p.cluster_id},
                        {"n_points", p.n_points},
                        {"total_variance", p.total_variance},
                        {"performance_mean", p.performance_mean},
                        {"performance_sd", p.performance_sd},
                        {"fairness_mean", p.fairness_mean},
                        {"fairness_sd", p.fairness_sd},
                        {"member_ids", p.member_ids}});
  }
  out["profiles"] = std::move(profiles);

  ordered_json features = ordered_json::array();
  for (const auto& f : r.features) {
    ordered_json clusters = ordered_json::array();
    for (const auto& c : f.clusters) {
      clusters.push_back({{"cluster_id", c.cluster_id},
                          {"median", c.stats.median},
                          {"q1", c.stats.q1},
                          {"q3", c.stats.q3},
                          {"whisker_low", c.stats.whisker_low},
                          {"whisker_high", c.stats.whisker_high},
                          {"outliers", c.stats.outliers},
                          {"mean", c.stats.mean}});
    }
    features.push_back({{"feature_name", f.feature_name},
                        {"mean_abs_importance", f.mean_abs_importance},
                        {"clusters", std::move(clusters)}});
  }
  out["features"] = std::move(features);
  out["heatmap"] = {{"ordering_key", r.heatmap.ordering_key},
                    {"ordered_ids", r.heatmap.ordered_ids},
                    {"delta", MatrixToJson(r.heatmap.delta)}};
  if (include_timings) {
    ordered_json timings = ordered_json::array();
    for (const auto& t : r.timings) {
      timings.push_back({{"stage", t.stage}, {"milliseconds", t.milliseconds}});
    }
    out["timings"] = std::move(timings);
  }
  return out;
}

std::string SerializeResult(const PipelineResult& result, bool include_timings) {
  return ResultToJson(result, include_timings).dump(1) + "\n";
}

PipelineResult ParseResult(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed results file: ") + e.what());
  }
  if (GetAt<int>(doc, "schema_version", "") != kResultsSchemaVersion) {
    throw FormatError("unsupported results schema_version", 0, "schema_version");
  }
  PipelineResult r;
  const json& pf = At(doc, "portfolio", "");
  r.fingerprint = GetAt<std::string>(pf, "fingerprint", "portfolio");
  r.dataset_name = GetAt<std::string>(pf, "dataset", "portfolio");
  r.method_name = GetAt<std::string>(pf, "method", "portfolio");
  r.performance_metric_name = GetAt<std::string>(pf, "performance_metric", "portfolio");
  r.fairness_metric_name = GetAt<std::string>(pf, "fairness_metric", "portfolio");
  r.feature_names = GetAt<std::vector<std::string>>(pf, "feature_names", "portfolio");
  for (const auto& m : At(pf, "models", "portfolio")) {
    ModelPoint pt;
    pt.id = GetAt<std::string>(m, "id", "portfolio.models");
    if (const json& t = At(m, "trade_off_param", "portfolio.models"); !t.is_null()) {
      pt.trade_off_param = Get<double>(t, "portfolio.models.trade_off_param");
    }
    pt.performance = GetAt<double>(m, "performance", "portfolio.models");
    pt.fairness = GetAt<double>(m, "fairness", "portfolio.models");
    const json& plane = At(m, "plane", "portfolio.models");
    pt.plane.performance = GetAt<double>(plane, "performance", "portfolio.models.plane");
    pt.plane.fairness = GetAt<double>(plane, "fairness", "portfolio.models.plane");
    r.models.push_back(std::move(pt));
  }
  r.config = ConfigFromJson(At(doc, "config", ""));

  if (const json& c = At(doc, "constraints", ""); !c.is_null()) {
    r.constraints = ConstraintSummary{
        GetAt<std::size_t>(c, "similar", "constraints"),
        GetAt<std::size_t>(c, "dissimilar", "constraints"),
        GetAt<std::size_t>(c, "similar_candidates", "constraints"),
        GetAt<std::size_t>(c, "dissimilar_candidates", "constraints"),
        GetAt<std::size_t>(c, "excluded_zero_distance", "constraints")};
  }

  const json& mt = At(doc, "metric", "");
  r.metric.M = MatrixFromJson(At(mt, "M", "metric"), "metric.M");
  r.metric.L = MatrixFromJson(At(mt, "L", "metric"), "metric.L");
  r.metric.sweeps_run = GetAt<int>(mt, "sweeps_run", "metric");
  r.metric.converged = GetAt<bool>(mt, "converged", "metric");
  r.metric.bound_u = GetAt<double>(mt, "bound_u", "metric");
  r.metric.bound_l = GetAt<double>(mt, "bound_l", "metric");
  r.metric.constraint_satisfaction_before = GetAt<double>(mt, "constraint_satisfaction_before", "metric");
  r.metric.constraint_satisfaction_after = GetAt<double>(mt, "constraint_satisfaction_after", "metric");
  r.metric.factor_fallback = GetAt<bool>(mt, "factor_fallback", "metric");
  const json& dg = At(mt, "diagnostics", "metric");
  r.diagnostics.frobenius_dist_to_identity = GetAt<double>(dg, "frobenius_dist_to_identity", "metric.diagnostics");
  r.diagnostics.offdiag_ratio = GetAt<double>(dg, "offdiag_ratio", "metric.diagnostics");
  r.diagnostics.eigenvalues = GetAt<std::vector<double>>(dg, "eigenvalues", "metric.diagnostics");

  const json& val = At(doc, "validation", "");
  r.validation.k_grid = GetAt<std::vector<int>>(val, "k_grid", "validation");
  r.validation.k_star = GetAt<int>(val, "k_star", "validation");
  for (const auto& row : At(val, "rows", "validation")) {
    const std::string w = "validation.rows";
    ValidationRow vr;
    vr.k = GetAt<int>(row, "k", w);
    vr.silhouette = GetAt<double>(row, "silhouette", w);
    vr.calinski_harabasz = GetAt<double>(row, "calinski_harabasz", w);
    vr.davies_bouldin = GetAt<double>(row, "davies_bouldin", w);
    vr.dunn = GetAt<double>(row, "dunn", w);
    vr.z_sil = GetAt<double>(row, "z_sil", w);
    vr.z_ch = GetAt<double>(row, "z_ch", w);
    vr.z_db = GetAt<double>(row, "z_db", w);
    vr.z_dunn = GetAt<double>(row, "z_dunn", w);
    vr.composite = GetAt<double>(row, "composite", w);
    vr.usable = GetAt<bool>(row, "usable", w);
    vr.note = GetAt<std::string>(row, "note", w);
    r.validation.rows.push_back(std::move(vr));
  }

  const json& cl = At(doc, "clustering", "");
  r.chosen_k = GetAt<int>(cl, "chosen_k", "clustering");
  r.assignments = GetAt<std::vector<int>>(cl, "assignments", "clustering");
  r.inertia = GetAt<double>(cl, "inertia", "clustering");
  r.baseline_assignments = GetAt<std::vector<int>>(cl, "baseline_assignments", "clustering");

  for (const auto& p : At(doc, "profiles", "")) {
    const std::string w = "profiles";
    ClusterProfile cp;
    cp.cluster_id = GetAt<int>(p, "cluster_id", w);
    cp.n_points = GetAt<int>(p, "n_points", w);
    cp.total_variance = GetAt<double>(p, "total_variance", w);
    cp.performance_mean = GetAt<double>(p, "performance_mean", w);
    cp.performance_sd = GetAt<double>(p, "performance_sd", w);
    cp.fairness_mean = GetAt<double>(p, "fairness_mean", w);
    cp.fairness_sd = GetAt<double>(p, "fairness_sd", w);
    cp.member_ids = GetAt<std::vector<std::string>>(p, "member_ids", w);
    r.profiles.push_back(std::move(cp));
  }

  for (const auto& f : At(doc, "features", "")) {
    const std::string w = "features";
    FeatureSummary fs;
    fs.feature_name = GetAt<std::string>(f, "feature_name", w);
    fs.mean_abs_importance = GetAt<double>(f, "mean_abs_importance", w);
    for (const auto& c : At(f, "clusters", w)) {
      const std::string wc = "features.clusters";
      ClusterBox box;
      box.cluster_id = GetAt<int>(c, "cluster_id", wc);
      box.stats.median = GetAt<double>(c, "median", wc);
      box.stats.q1 = GetAt<double>(c, "q1", wc);
      box.stats.q3 = GetAt<double>(c, "q3", wc);
      box.stats.whisker_low = GetAt<double>(c, "whisker_low", wc);
      box.stats.whisker_high = GetAt<double>(c, "whisker_high", wc);
      box.stats.outliers = GetAt<std::vector<double>>(c, "outliers", wc);
      box.stats.mean = GetAt<double>(c, "mean", wc);
      fs.clusters.push_back(std::move(box));
    }
    r.features.push_back(std::move(fs));
  }

  const json& hm = At(doc, "heatmap", "");
  r.heatmap.ordering_key = GetAt<std::string>(hm, "ordering_key", "heatmap");
  r.heatmap.ordered_ids = GetAt<std::vector<std::string>>(hm, "ordered_ids", "heatmap");
  r.heatmap.delta = MatrixFromJson(At(hm, "delta", "heatmap"), "heatmap.delta");

  if (auto it = doc.find("timings"); it != doc.end()) {
    for (const auto& t : *it) {
      r.timings.push_back({GetAt<std::string>(t, "stage", "timings"),
                           GetAt<double>(t, "milliseconds", "timings")});
    }
  }
  return r;
}

}  // namespace fairscope
