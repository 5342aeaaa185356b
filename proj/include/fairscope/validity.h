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

// Internal cluster validity indices and the z-scored composite used to pick
// the number of clusters.
//
// All indices use Euclidean distance on the rows of `data`. Labels are
// arbitrary integers; the number of clusters is the number of distinct
// labels. Calinski-Harabasz and Dunn can be unbounded on degenerate
// partitions (zero within-cluster scatter, all singletons); they then return
// the largest finite double with `sentinel` set.

#ifndef FAIRSCOPE_VALIDITY_H_
#define FAIRSCOPE_VALIDITY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fairscope {

struct IndexValue {
  double value = 0.0;
  bool sentinel = false;  // value stands in for +infinity
};

double Silhouette(const Eigen::MatrixXd& data, std::span<const int> labels);
IndexValue CalinskiHarabasz(const Eigen::MatrixXd& data, std::span<const int> labels);
double DaviesBouldin(const Eigen::MatrixXd& data, std::span<const int> labels);
IndexValue Dunn(const Eigen::MatrixXd& data, std::span<const int> labels);

// Chance-corrected agreement of two labelings; 1 when they are equal up to
// relabeling.
double AdjustedRandIndex(std::span<const int> a, std::span<const int> b);

// Raw index values for one k. `usable` is false when any index was
// degenerate (sentinel or scoring error); such rows are kept in the table but
// excluded from z-scoring.
struct CviMeasurement {
  int k = 0;
  double silhouette = 0.0;
  double calinski_harabasz = 0.0;
  double davies_bouldin = 0.0;
  double dunn = 0.0;
  bool usable = true;
  std::string note;
};

// Computes all four indices for one labeling, catching degenerate cases.
CviMeasurement MeasureClustering(const Eigen::MatrixXd& data, std::span<const int> labels, int k);

struct ValidationRow {
  int k = 0;
  double silhouette = 0.0;
  double calinski_harabasz = 0.0;
  double davies_bouldin = 0.0;
  double dunn = 0.0;
  double z_sil = 0.0;
  double z_ch = 0.0;
  double z_db = 0.0;  // z-score of the negated Davies-Bouldin column
  double z_dunn = 0.0;
  double composite = 0.0;
  bool usable = true;
  std::string note;
};

struct ValidationTable {
  std::vector<ValidationRow> rows;  // ascending k
  std::vector<int> k_grid;
  int k_star = 0;

  // Usable rows by composite descending, ties by ascending k; at most `top`.
  std::vector<ValidationRow> TopByComposite(std::size_t top) const;
};

// Population z-scores per column over the usable rows (sigma = 0 gives
// z = 0), composite = sum of the four z columns, k* = argmax composite with
// ties to the smallest k. Throws ArgumentError with fewer than two usable
// distinct k values.
ValidationTable CompositeTable(std::vector<CviMeasurement> measurements);

// z-scores with population sigma; all zeros when sigma is 0.
std::vector<double> ZScores(std::span<const double> values);

}  // namespace fairscope

#endif  // FAIRSCOPE_VALIDITY_H_
