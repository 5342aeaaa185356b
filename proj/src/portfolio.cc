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

#include "fairscope/portfolio.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "fairscope/errors.h"
#include "fairscope/random.h"
#include "json.hpp"
#include "text_util.h"

namespace fairscope {

using nlohmann::json;
using nlohmann::ordered_json;

Eigen::MatrixXd Portfolio::ImportanceMatrix() const {
  const auto n = static_cast<Eigen::Index>(models.size());
  const auto p = static_cast<Eigen::Index>(feature_names.size());
  Eigen::MatrixXd out(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& imp = models[static_cast<std::size_t>(i)].importances;
    for (Eigen::Index j = 0; j < p; ++j) out(i, j) = imp[static_cast<std::size_t>(j)];
  }
  return out;
}

std::optional<std::size_t> Portfolio::IndexOf(std::string_view id) const {
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (models[i].id == id) return i;
  }
  return std::nullopt;
}

PortfolioFormat FormatFromPath(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? PortfolioFormat::kCsv : PortfolioFormat::kJson;
}

void ValidatePortfolio(const Portfolio& portfolio) {
  if (portfolio.schema_version != 1) {
    throw ValidationError(
        fmt::format("unsupported schema_version {}", portfolio.schema_version));
  }
  if (portfolio.feature_names.empty()) {
    throw ValidationError("portfolio must declare at least one feature");
  }
  if (portfolio.models.size() < 2) {
    throw ValidationError(fmt::format(
        "portfolio must contain at least 2 models, found {}", portfolio.models.size()));
  }
  std::unordered_set<std::string> names;
  for (const auto& name : portfolio.feature_names) {
    if (!names.insert(name).second) {
      throw ValidationError(fmt::format("duplicate feature name '{}'", name));
    }
  }
  const std::size_t p = portfolio.feature_names.size();
  std::unordered_set<std::string> ids;
  for (const auto& m : portfolio.models) {
    if (m.id.empty()) throw ValidationError("model with empty id");
    if (!ids.insert(m.id).second) {
      throw ValidationError(fmt::format("model '{}': duplicate id", m.id));
    }
    if (!std::isfinite(m.performance) || m.performance < 0.0 || m.performance > 1.0) {
      throw ValidationError(fmt::format(
          "model '{}': performance {} is not a finite value in [0, 1]", m.id, m.performance));
    }
    if (!std::isfinite(m.fairness) || m.fairness < 0.0 || m.fairness > 1.0) {
      throw ValidationError(fmt::format(
          "model '{}': fairness {} is not a finite value in [0, 1]", m.id, m.fairness));
    }
    if (m.trade_off_param && !std::isfinite(*m.trade_off_param)) {
      throw ValidationError(fmt::format("model '{}': trade_off_param is not finite", m.id));
    }
    if (m.importances.size() != p) {
      throw ValidationError(fmt::format(
          "model '{}': importances has {} entries but feature_names has {}", m.id,
          m.importances.size(), p));
    }
    for (std::size_t j = 0; j < p; ++j) {
      if (!std::isfinite(m.importances[j])) {
        throw ValidationError(fmt::format("model '{}': importances[{}] is not finite",
                                          m.id, j));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

constexpr const char* kTopKeys[] = {"schema_version",  "dataset",       "method",
                                    "performance_metric", "fairness_metric",
                                    "feature_names",   "models"};
constexpr const char* kModelKeys[] = {"id",       "trade_off_param", "performance",
                                      "fairness", "importances",     "hyperparameters"};

template <std::size_t N>
void RejectUnknownKeys(const json& obj, const char* const (&allowed)[N],
                       const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::find_if(std::begin(allowed), std::end(allowed), [&](const char* k) {
          return item.key() == k;
        }) == std::end(allowed)) {
      throw FormatError("unknown key", 0,
                        where.empty() ? item.key() : where + "." + item.key());
    }
  }
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError("missing required key", 0, where.empty() ? key : where + "." + key);
  }
  return *it;
}

double AsNumber(const json& v, const std::string& field) {
  if (!v.is_number()) throw FormatError("expected a number", 0, field);
  return v.get<double>();
}

std::string AsString(const json& v, const std::string& field) {
  if (!v.is_string()) throw FormatError("expected a string", 0, field);
  return v.get<std::string>();
}

std::string OptionalString(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  return AsString(*it, key);
}

std::size_t LineOfByte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

Portfolio ParsePortfolioJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what(), LineOfByte(text, e.byte));
  }
  if (!doc.is_object()) throw FormatError("top-level value must be an object", 1);
  RejectUnknownKeys(doc, kTopKeys, "");

  Portfolio p;
  const json& version = Require(doc, "schema_version", "");
  if (!version.is_number_integer()) {
    throw FormatError("expected an integer", 0, "schema_version");
  }
  p.schema_version = version.get<int>();
  if (p.schema_version != 1) {
    throw FormatError(fmt::format("unsupported schema_version {}", p.schema_version), 0,
                      "schema_version");
  }
  p.dataset_name = OptionalString(doc, "dataset");
  p.method_name = OptionalString(doc, "method");
  p.performance_metric_name = OptionalString(doc, "performance_metric");
  p.fairness_metric_name = OptionalString(doc, "fairness_metric");

  const json& features = Require(doc, "feature_names", "");
  if (!features.is_array()) throw FormatError("expected an array", 0, "feature_names");
  for (std::size_t j = 0; j < features.size(); ++j) {
    p.feature_names.push_back(AsString(features[j], fmt::format("feature_names[{}]", j)));
  }

  const json& models = Require(doc, "models", "");
  if (!models.is_array()) throw FormatError("expected an array", 0, "models");
  for (std::size_t i = 0; i < models.size(); ++i) {
    const std::string where = fmt::format("models[{}]", i);
    const json& m = models[i];
    if (!m.is_object()) throw FormatError("expected an object", 0, where);
    RejectUnknownKeys(m, kModelKeys, where);
    ModelRecord rec;
    rec.id = AsString(Require(m, "id", where), where + ".id");
    if (auto it = m.find("trade_off_param"); it != m.end() && !it->is_null()) {
      rec.trade_off_param = AsNumber(*it, where + ".trade_off_param");
    }
    rec.performance = AsNumber(Require(m, "performance", where), where + ".performance");
    rec.fairness = AsNumber(Require(m, "fairness", where), where + ".fairness");
    const json& imp = Require(m, "importances", where);
    if (!imp.is_array()) throw FormatError("expected an array", 0, where + ".importances");
    for (std::size_t j = 0; j < imp.size(); ++j) {
      rec.importances.push_back(AsNumber(imp[j], fmt::format("{}.importances[{}]", where, j)));
    }
    if (auto it = m.find("hyperparameters"); it != m.end() && !it->is_null()) {
      if (!it->is_object()) {
        throw FormatError("expected an object or null", 0, where + ".hyperparameters");
      }
      HyperParameters hp;
      for (const auto& item : it->items()) {
        hp[item.key()] = AsString(item.value(), where + ".hyperparameters." + item.key());
      }
      rec.hyperparameters = std::move(hp);
    }
    p.models.push_back(std::move(rec));
  }
  ValidatePortfolio(p);
  return p;
}

std::string PortfolioToJson(const Portfolio& portfolio) {
  ordered_json doc;
  doc["schema_version"] = portfolio.schema_version;
  doc["dataset"] = portfolio.dataset_name;
  doc["method"] = portfolio.method_name;
  doc["performance_metric"] = portfolio.performance_metric_name;
  doc["fairness_metric"] = portfolio.fairness_metric_name;
  doc["feature_names"] = portfolio.feature_names;
  ordered_json models = ordered_json::array();
  for (const auto& m : portfolio.models) {
    ordered_json rec;
    rec["id"] = m.id;
    rec["trade_off_param"] =
        m.trade_off_param ? ordered_json(*m.trade_off_param) : ordered_json(nullptr);
    rec["performance"] = m.performance;
    rec["fairness"] = m.fairness;
    rec["importances"] = m.importances;
    if (m.hyperparameters) {
      ordered_json hp = ordered_json::object();
      for (const auto& [k, v] : *m.hyperparameters) hp[k] = v;
      rec["hyperparameters"] = std::move(hp);
    } else {
      rec["hyperparameters"] = nullptr;
    }
    models.push_back(std::move(rec));
  }
  doc["models"] = std::move(models);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kImpPrefix = "imp:";
constexpr std::string_view kHpPrefix = "hp:";

double CsvNumber(const internal::CsvRecord& rec, std::size_t col, const std::string& name) {
  auto v = internal::ParseDouble(rec.fields[col]);
  if (!v) {
    throw FormatError(fmt::format("cannot parse '{}' as a number", rec.fields[col]), rec.line,
                      name);
  }
  return *v;
}

}  // namespace

Portfolio ParsePortfolioCsv(std::string_view text) {
  const auto records = internal::ParseCsv(text);
  if (records.empty()) throw FormatError("empty file: missing header row", 1);
  const auto& header = records.front().fields;

  std::optional<std::size_t> id_col, theta_col, perf_col, fair_col;
  std::vector<std::size_t> imp_cols;
  std::vector<std::pair<std::string, std::size_t>> hp_cols;
  Portfolio p;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& h = header[c];
    auto claim = [&](std::optional<std::size_t>& slot) {
      if (slot) throw FormatError("duplicate column", 1, h);
      slot = c;
    };
    if (h == "model_id") {
      claim(id_col);
    } else if (h == "trade_off_param") {
      claim(theta_col);
    } else if (h == "performance") {
      claim(perf_col);
    } else if (h == "fairness") {
      claim(fair_col);
    } else if (h.starts_with(kImpPrefix)) {
      p.feature_names.push_back(h.substr(kImpPrefix.size()));
      imp_cols.push_back(c);
    } else if (h.starts_with(kHpPrefix)) {
      hp_cols.emplace_back(h.substr(kHpPrefix.size()), c);
    } else {
      throw FormatError("unknown column", 1, h);
    }
  }
  if (!id_col) throw FormatError("missing required column", 1, "model_id");
  if (!perf_col) throw FormatError("missing required column", 1, "performance");
  if (!fair_col) throw FormatError("missing required column", 1, "fairness");

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw FormatError(fmt::format("expected {} fields, found {}", header.size(),
                                    rec.fields.size()),
                        rec.line);
    }
    ModelRecord m;
    m.id = rec.fields[*id_col];
    if (theta_col && !rec.fields[*theta_col].empty()) {
      m.trade_off_param = CsvNumber(rec, *theta_col, "trade_off_param");
    }
    m.performance = CsvNumber(rec, *perf_col, "performance");
    m.fairness = CsvNumber(rec, *fair_col, "fairness");
    for (std::size_t j = 0; j < imp_cols.size(); ++j) {
      m.importances.push_back(CsvNumber(rec, imp_cols[j], header[imp_cols[j]]));
    }
    for (const auto& [name, col] : hp_cols) {
      if (rec.fields[col].empty()) continue;
      if (!m.hyperparameters) m.hyperparameters.emplace();
      (*m.hyperparameters)[name] = rec.fields[col];
    }
    p.models.push_back(std::move(m));
  }
  ValidatePortfolio(p);
  return p;
}

std::string PortfolioToCsv(const Portfolio& portfolio) {
  std::set<std::string> hp_names;
  for (const auto& m : portfolio.models) {
    if (!m.hyperparameters) continue;
    for (const auto& [k, v] : *m.hyperparameters) hp_names.insert(k);
  }
  std::string out = "model_id,trade_off_param,performance,fairness";
  for (const auto& f : portfolio.feature_names) {
    out += ',' + internal::CsvEscape(std::string(kImpPrefix) + f);
  }
  for (const auto& h : hp_names) out += ',' + internal::CsvEscape(std::string(kHpPrefix) + h);
  out += '\n';
  for (const auto& m : portfolio.models) {
    out += internal::CsvEscape(m.id);
    out += ',';
    if (m.trade_off_param) out += internal::ShortestDouble(*m.trade_off_param);
    out += ',' + internal::ShortestDouble(m.performance);
    out += ',' + internal::ShortestDouble(m.fairness);
    for (double v : m.importances) out += ',' + internal::ShortestDouble(v);
    for (const auto& h : hp_names) {
      out += ',';
      if (!m.hyperparameters) continue;
      if (auto it = m.hyperparameters->find(h); it != m.hyperparameters->end()) {
        out += internal::CsvEscape(it->second);
      }
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

Portfolio LoadPortfolio(const std::filesystem::path& path, PortfolioFormat format) {
  const std::string text = internal::ReadFile(path);
  return format == PortfolioFormat::kCsv ? ParsePortfolioCsv(text) : ParsePortfolioJson(text);
}

Portfolio LoadPortfolio(const std::filesystem::path& path) {
  return LoadPortfolio(path, FormatFromPath(path));
}

void SavePortfolio(const Portfolio& portfolio, const std::filesystem::path& path,
                   PortfolioFormat format) {
  internal::WriteFile(path, format == PortfolioFormat::kCsv ? PortfolioToCsv(portfolio)
                                                            : PortfolioToJson(portfolio));
}

std::string PortfolioFingerprint(const Portfolio& portfolio) {
  return fmt::format("fnv1a64:{:016x}", Fnv1a64(PortfolioToJson(portfolio)));
}

std::vector<PlanePoint> NormalizePlane(const Portfolio& portfolio,
                                       const std::optional<PlaneBounds>& bounds) {
  const auto& models = portfolio.models;
  if (models.size() < 2) {
    throw ArgumentError("plane normalization needs at least 2 models");
  }
  double pmin, pmax, fmin, fmax;
  if (bounds) {
    pmin = bounds->performance_min;
    pmax = bounds->performance_max;
    fmin = bounds->fairness_min;
    fmax = bounds->fairness_max;
  } else {
    auto [plo, phi] = std::minmax_element(
        models.begin(), models.end(),
        [](const ModelRecord& a, const ModelRecord& b) { return a.performance < b.performance; });
    auto [flo, fhi] = std::minmax_element(
        models.begin(), models.end(),
        [](const ModelRecord& a, const ModelRecord& b) { return a.fairness < b.fairness; });
    pmin = plo->performance;
    pmax = phi->performance;
    fmin = flo->fairness;
    fmax = fhi->fairness;
  }
  const double prange = pmax - pmin;
  const double frange = fmax - fmin;
  if (!(prange > 0.0)) spdlog::warn("performance axis is constant; normalized to 0");
  if (!(frange > 0.0)) spdlog::warn("fairness axis is constant; normalized to 0");

  std::vector<PlanePoint> out;
  out.reserve(models.size());
  for (const auto& m : models) {
    PlanePoint pt;
    pt.performance = prange > 0.0 ? (m.performance - pmin) / prange : 0.0;
    pt.fairness = frange > 0.0 ? (m.fairness - fmin) / frange : 0.0;
    out.push_back(pt);
  }
  return out;
}

}  // namespace fairscope
