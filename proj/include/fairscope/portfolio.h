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

// Portfolio data model: one record per candidate model with its position in
// the fairness-performance plane and its feature-importance vector.
//
// Two on-disk formats are supported:
//
//  * JSON object (schema_version 1):
//      {"schema_version": 1, "dataset": ..., "method": ...,
//       "performance_metric": ..., "fairness_metric": ...,
//       "feature_names": [...],
//       "models": [{"id": ..., "trade_off_param": <number|null>,
//                   "performance": ..., "fairness": ...,
//                   "importances": [...], "hyperparameters": <object|null>}]}
//    Unknown keys are rejected at every level.
//
//  * CSV: header row with model_id, performance, fairness, optional
//    trade_off_param, one "imp:<feature>" column per feature, and optional
//    "hp:<name>" hyperparameter columns. Comma separator, '.' decimal point,
//    RFC 4180 quoting. Dataset/method/metric names are not carried and load
//    as empty strings.

#ifndef FAIRSCOPE_PORTFOLIO_H_
#define FAIRSCOPE_PORTFOLIO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace fairscope {

using HyperParameters = std::map<std::string, std::string>;

struct ModelRecord {
  std::string id;
  std::optional<double> trade_off_param;
  double performance = 0.0;
  double fairness = 0.0;
  std::vector<double> importances;
  std::optional<HyperParameters> hyperparameters;

  bool operator==(const ModelRecord&) const = default;
};

struct Portfolio {
  int schema_version = 1;
  std::string dataset_name;
  std::string method_name;
  std::string performance_metric_name;
  std::string fairness_metric_name;
  std::vector<std::string> feature_names;
  std::vector<ModelRecord> models;

  std::size_t num_models() const { return models.size(); }
  std::size_t num_features() const { return feature_names.size(); }

  // n x P matrix of raw importances, row order = model order.
  Eigen::MatrixXd ImportanceMatrix() const;

  // Index of the model with `id`, if present.
  std::optional<std::size_t> IndexOf(std::string_view id) const;

  bool operator==(const Portfolio&) const = default;
};

enum class PortfolioFormat { kJson, kCsv };

// Picks a format from the file extension (.csv -> CSV, anything else JSON).
PortfolioFormat FormatFromPath(const std::filesystem::path& path);

// Throws ValidationError naming the offending model id and field.
void ValidatePortfolio(const Portfolio& portfolio);

Portfolio ParsePortfolioJson(std::string_view text);
Portfolio ParsePortfolioCsv(std::string_view text);
std::string PortfolioToJson(const Portfolio& portfolio);
std::string PortfolioToCsv(const Portfolio& portfolio);

Portfolio LoadPortfolio(const std::filesystem::path& path,
                        PortfolioFormat format);
Portfolio LoadPortfolio(const std::filesystem::path& path);
void SavePortfolio(const Portfolio& portfolio,
                   const std::filesystem::path& path, PortfolioFormat format);

// Content hash of the canonical JSON serialization, "fnv1a64:<16 hex>".
std::string PortfolioFingerprint(const Portfolio& portfolio);

struct PlanePoint {
  double performance = 0.0;
  double fairness = 0.0;
};

// Fixed normalization ranges; when supplied, plane coordinates no longer
// depend on which other models are in the portfolio.
struct PlaneBounds {
  double performance_min = 0.0;
  double performance_max = 1.0;
  double fairness_min = 0.0;
  double fairness_max = 1.0;
};

// Per-axis min-max scaling. A constant axis maps to 0 for every model.
// With explicit `bounds`, values outside the bounds land outside [0, 1].
std::vector<PlanePoint> NormalizePlane(
    const Portfolio& portfolio,
    const std::optional<PlaneBounds>& bounds = std::nullopt);

}  // namespace fairscope

#endif  // FAIRSCOPE_PORTFOLIO_H_
