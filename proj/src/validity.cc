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

#include "fairscope/validity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fairscope/errors.h"

namespace fairscope {

namespace {

using Index = Eigen::Index;

constexpr double kInfinitySentinel = std::numeric_limits<double>::max();

// Labels remapped to 0..k-1 by ascending label value, plus per-cluster
// member lists.
struct Partition {
  std::vector<int> compact;
  std::vector<std::vector<Index>> members;
  int k() const { return static_cast<int>(members.size()); }
};

Partition MakePartition(const Eigen::MatrixXd& data, std::span<const int> labels) {
  if (static_cast<Index>(labels.size()) != data.rows()) {
    throw ArgumentError(fmt::format("{} labels for {} rows", labels.size(), data.rows()));
  }
  std::map<int, int> ids;
  for (int l : labels) ids.emplace(l, 0);
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  Partition p;
  p.members.resize(ids.size());
  p.compact.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = ids[labels[i]];
    p.compact.push_back(c);
    p.members[static_cast<std::size_t>(c)].push_back(static_cast<Index>(i));
  }
  return p;
}

void RequireClusters(const Partition& p, Index n, bool strict_upper, const char* name) {
  if (p.k() < 2) {
    throw ArgumentError(fmt::format("{} is undefined for a single cluster", name));
  }
  if (strict_upper && p.k() >= n) {
    throw ArgumentError(fmt::format("{} requires fewer clusters than points (k={}, n={})",
                                    name, p.k(), n));
  }
}

Eigen::MatrixXd Centroids(const Eigen::MatrixXd& data, const Partition& p) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p.k(), data.cols());
  for (int j = 0; j < p.k(); ++j) {
    const auto& m = p.members[static_cast<std::size_t>(j)];
    for (Index i : m) c.row(j) += data.row(i);
    c.row(j) /= static_cast<double>(m.size());
  }
  return c;
}

Eigen::MatrixXd PairwiseDistances(const Eigen::MatrixXd& data) {
  const Index n = data.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (data.row(i) - data.row(j)).norm();
    }
  }
  return d;
}

}  // namespace

double Silhouette(const Eigen::MatrixXd& data, std::span<const int> labels) {
  const Partition p = MakePartition(data, labels);
  RequireClusters(p, data.rows(), false, "silhouette");
  const Index n = data.rows();
  const Eigen::MatrixXd dist = PairwiseDistances(data);
  double total = 0.0;
  std::vector<double> sums(static_cast<std::size_t>(p.k()));
  for (Index i = 0; i < n; ++i) {
    const int own = p.compact[static_cast<std::size_t>(i)];
    const auto own_size = p.members[static_cast<std::size_t>(own)].size();
    if (own_size == 1) continue;  // s(i) = 0
    std::fill(sums.begin(), sums.end(), 0.0);
    for (Index j = 0; j < n; ++j) sums[static_cast<std::size_t>(p.compact[static_cast<std::size_t>(j)])] += dist(i, j);
    const double a = sums[static_cast<std::size_t>(own)] / static_cast<double>(own_size - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < p.k(); ++c) {
      if (c == own) continue;
      b = std::min(b, sums[static_cast<std::size_t>(c)] /
                          static_cast<double>(p.members[static_cast<std::size_t>(c)].size()));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

IndexValue CalinskiHarabasz(const Eigen::MatrixXd& data, std::span<const int> labels) {
  const Partition p = MakePartition(data, labels);
  const Index n = data.rows();
  RequireClusters(p, n, true, "Calinski-Harabasz");
  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centroids = Centroids(data, p);
  double between = 0.0;
  double within = 0.0;
  for (int c = 0; c < p.k(); ++c) {
    const auto& m = p.members[static_cast<std::size_t>(c)];
    between += static_cast<double>(m.size()) * (centroids.row(c) - mean).squaredNorm();
    for (Index i : m) within += (data.row(i) - centroids.row(c)).squaredNorm();
  }
  if (within == 0.0) return {kInfinitySentinel, true};
  const double k = p.k();
  return {(between / (k - 1.0)) / (within / (static_cast<double>(n) - k)), false};
}

double DaviesBouldin(const Eigen::MatrixXd& data, std::span<const int> labels) {
  const Partition p = MakePartition(data, labels);
  RequireClusters(p, data.rows(), false, "Davies-Bouldin");
  const Eigen::MatrixXd centroids = Centroids(data, p);
  std::vector<double> scatter(static_cast<std::size_t>(p.k()), 0.0);
  for (int c = 0; c < p.k(); ++c) {
    const auto& m = p.members[static_cast<std::size_t>(c)];
    for (Index i : m) scatter[static_cast<std::size_t>(c)] += (data.row(i) - centroids.row(c)).norm();
    scatter[static_cast<std::size_t>(c)] /= static_cast<double>(m.size());
  }
  double total = 0.0;
  for (int i = 0; i < p.k(); ++i) {
    double worst = 0.0;
    for (int j = 0; j < p.k(); ++j) {
      if (i == j) continue;
      const double sep = (centroids.row(i) - centroids.row(j)).norm();
      if (sep == 0.0) {
        throw DegenerateClusteringError(
            fmt::format("clusters {} and {} have coincident centroids", i, j));
      }
      worst = std::max(worst, (scatter[static_cast<std::size_t>(i)] + scatter[static_cast<std::size_t>(j)]) / sep);
    }
    total += worst;
  }
  return total / p.k();
}

IndexValue Dunn(const Eigen::MatrixXd& data, std::span<const int> labels) {
  const Partition p = MakePartition(data, labels);
  RequireClusters(p, data.rows(), false, "Dunn");
  const Index n = data.rows();
  const Eigen::MatrixXd dist = PairwiseDistances(data);
  double min_inter = std::numeric_limits<double>::infinity();
  double max_diameter = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (p.compact[static_cast<std::size_t>(i)] == p.compact[static_cast<std::size_t>(j)]) {
        max_diameter = std::max(max_diameter, dist(i, j));
      } else {
        min_inter = std::min(min_inter, dist(i, j));
      }
    }
  }
  if (max_diameter == 0.0) return {kInfinitySentinel, true};
  return {min_inter / max_diameter, false};
}

double AdjustedRandIndex(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ArgumentError("labelings differ in length");
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, count] : joint) index += choose2(count);
  for (const auto& [key, count] : rows) sum_rows += choose2(count);
  for (const auto& [key, count] : cols) sum_cols += choose2(count);
  const double expected = sum_rows * sum_cols / choose2(static_cast<double>(n));
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;  // both trivial partitions
  return (index - expected) / (max_index - expected);
}

CviMeasurement MeasureClustering(const Eigen::MatrixXd& data, std::span<const int> labels,
                                 int k) {
  CviMeasurement m;
  m.k = k;
  std::vector<std::string> notes;
  try {
    m.silhouette = Silhouette(data, labels);
  } catch (const Error& e) {
    m.usable = false;
    notes.push_back(fmt::format("silhouette: {}", e.what()));
  }
  try {
    const IndexValue ch = CalinskiHarabasz(data, labels);
    m.calinski_harabasz = ch.value;
    if (ch.sentinel) {
      m.usable = false;
      notes.emplace_back("calinski_harabasz: zero within-cluster dispersion");
    }
  } catch (const Error& e) {
    m.usable = false;
    notes.push_back(fmt::format("calinski_harabasz: {}", e.what()));
  }
  try {
    m.davies_bouldin = DaviesBouldin(data, labels);
  } catch (const Error& e) {
    m.usable = false;
    notes.push_back(fmt::format("davies_bouldin: {}", e.what()));
  }
  try {
    const IndexValue dn = Dunn(data, labels);
    m.dunn = dn.value;
    if (dn.sentinel) {
      m.usable = false;
      notes.emplace_back("dunn: zero maximum diameter");
    }
  } catch (const Error& e) {
    m.usable = false;
    notes.push_back(fmt::format("dunn: {}", e.what()));
  }
  m.note = fmt::format("{}", fmt::join(notes, "; "));
  return m;
}

std::vector<double> ZScores(std::span<const double> values) {
  std::vector<double> z(values.size(), 0.0);
  if (values.empty()) return z;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / static_cast<double>(values.size()));
  if (sigma == 0.0) return z;
  for (std::size_t i = 0; i < values.size(); ++i) z[i] = (values[i] - mean) / sigma;
  return z;
}

std::vector<ValidationRow> ValidationTable::TopByComposite(std::size_t top) const {
  std::vector<ValidationRow> out;
  for (const auto& r : rows) {
    if (r.usable) out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(), [](const ValidationRow& a, const ValidationRow& b) {
    return a.composite > b.composite;
  });
  if (out.size() > top) out.resize(top);
  return out;
}

ValidationTable CompositeTable(std::vector<CviMeasurement> measurements) {
  std::sort(measurements.begin(), measurements.end(),
            [](const CviMeasurement& a, const CviMeasurement& b) { return a.k < b.k; });
  for (std::size_t i = 1; i < measurements.size(); ++i) {
    if (measurements[i].k == measurements[i - 1].k) {
      throw ArgumentError(fmt::format("duplicate k = {} in validation input", measurements[i].k));
    }
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    const auto& m = measurements[i];
    if (!m.usable) continue;
    if (!std::isfinite(m.silhouette) || !std::isfinite(m.calinski_harabasz) ||
        !std::isfinite(m.davies_bouldin) || !std::isfinite(m.dunn)) {
      throw ArgumentError(fmt::format("non-finite index value at k = {}", m.k));
    }
    usable.push_back(i);
  }
  if (usable.size() < 2) {
    throw ArgumentError(fmt::format(
        "composite validation needs at least 2 usable k values, found {}", usable.size()));
  }

  std::vector<double> sil, ch, neg_db, dunn;
  for (std::size_t i : usable) {
    sil.push_back(measurements[i].silhouette);
    ch.push_back(measurements[i].calinski_harabasz);
    neg_db.push_back(-measurements[i].davies_bouldin);
    dunn.push_back(measurements[i].dunn);
  }
  const auto z_sil = ZScores(sil);
  const auto z_ch = ZScores(ch);
  const auto z_db = ZScores(neg_db);
  const auto z_dunn = ZScores(dunn);

  ValidationTable table;
  for (const auto& m : measurements) {
    ValidationRow row;
    row.k = m.k;
    row.silhouette = m.silhouette;
    row.calinski_harabasz = m.calinski_harabasz;
    row.davies_bouldin = m.davies_bouldin;
    row.dunn = m.dunn;
    row.usable = m.usable;
    row.note = m.note;
    table.rows.push_back(row);
    table.k_grid.push_back(m.k);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < usable.size(); ++u) {
    ValidationRow& row = table.rows[usable[u]];
    row.z_sil = z_sil[u];
    row.z_ch = z_ch[u];
    row.z_db = z_db[u];
    row.z_dunn = z_dunn[u];
    row.composite = row.z_sil + row.z_ch + row.z_db + row.z_dunn;
    if (row.composite > best) {
      best = row.composite;
      table.k_star = row.k;
    }
  }
  return table;
}

}  // namespace fairscope
