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

// Payload types for the FairScope HTTP API. Field names mirror the JSON
// emitted by the server byte for byte; numbers are IEEE doubles unless noted.

export type ModelId = string;
export type RunId = string; // "run-000001", ...

export type Matrix = number[][];

export interface PlanePoint {
  performance: number;
  fairness: number;
}

// ---- Portfolio ----------------------------------------------------------

export interface ModelRecord {
  id: ModelId;
  trade_off_param: number | null;
  performance: number;
  fairness: number;
  importances: number[];
  hyperparameters: Record<string, string> | null;
}

/** Body of POST /api/portfolio (JSON variant). */
export interface PortfolioUpload {
  schema_version?: number;
  dataset?: string;
  method?: string;
  performance_metric?: string;
  fairness_metric?: string;
  feature_names: string[];
  models: Array<Omit<ModelRecord, "trade_off_param" | "hyperparameters"> & {
    trade_off_param?: number | null;
    hyperparameters?: Record<string, string> | null;
  }>;
}

export interface PortfolioSummary {
  fingerprint: string;
  dataset: string;
  method: string;
  performance_metric: string;
  fairness_metric: string;
  n_models: number;
  n_features: number;
  feature_names: string[];
}

export interface PlacedModel {
  id: ModelId;
  trade_off_param: number | null;
  performance: number;
  fairness: number;
  plane: PlanePoint;
}

/** GET /api/portfolio */
export interface PortfolioView extends PortfolioSummary {
  models: PlacedModel[];
}

// ---- Run configuration ----------------------------------------------------

export interface PlaneBounds {
  performance_min: number;
  performance_max: number;
  fairness_min: number;
  fairness_max: number;
}

export interface ItmlConfig {
  gamma: number;
  max_iter: number;
  convergence_tol: number;
  bound_u: number | null;
  bound_l: number | null;
}

export interface KMeansConfig {
  n_init: number;
  max_lloyd_iter: number;
  rel_tol: number;
}

/** Resolved configuration echoed in every results document. */
export interface PipelineConfig {
  sim_threshold: number;
  dissim_threshold: number;
  max_pairs_per_class: number | null;
  plane_bounds: PlaneBounds | null;
  itml: ItmlConfig;
  kmeans: KMeansConfig;
  k_grid: number[];
  k_override: number | null;
  baseline_mode: boolean;
  seed: number; // unsigned 64-bit on the server
  top_n_features: number;
}

/**
 * Body of POST /api/run. Every key is optional; k_min/k_max build a
 * contiguous grid and are ignored when k_grid is given. Unknown keys are
 * rejected with 400.
 */
export interface RunRequest {
  sim_threshold?: number;
  dissim_threshold?: number;
  max_pairs_per_class?: number | null;
  plane_bounds?: PlaneBounds | null;
  itml?: Partial<ItmlConfig>;
  kmeans?: Partial<KMeansConfig>;
  k_grid?: number[];
  k_min?: number;
  k_max?: number;
  k_override?: number | null;
  baseline_mode?: boolean;
  seed?: number;
  top_n_features?: number;
}

export interface RunCreated {
  run_id: RunId;
  k_star: number;
  chosen_k: number;
}

// ---- Results ----------------------------------------------------------------

export interface ConstraintCounts {
  similar: number;
  dissimilar: number;
  similar_candidates: number;
  dissimilar_candidates: number;
  excluded_zero_distance: number;
}

export interface MetricDiagnostics {
  frobenius_dist_to_identity: number;
  offdiag_ratio: number;
  eigenvalues: number[];
}

export interface MetricSummary {
  learned: boolean;
  M: Matrix;
  L: Matrix;
  sweeps_run: number;
  converged: boolean;
  bound_u: number;
  bound_l: number;
  constraint_satisfaction_before: number;
  constraint_satisfaction_after: number;
  factor_fallback: boolean;
  diagnostics: MetricDiagnostics;
}

export interface ValidationRow {
  k: number;
  silhouette: number | null;
  calinski_harabasz: number | null;
  davies_bouldin: number | null;
  dunn: number | null;
  z_sil: number | null;
  z_ch: number | null;
  z_db: number | null;
  z_dunn: number | null;
  composite: number | null;
  usable: boolean;
  note: string;
}

/** GET /api/runs/{id}/validation */
export interface ValidationTable {
  k_grid: number[];
  k_star: number;
  rows: ValidationRow[];
}

export interface ClusteringSummary {
  chosen_k: number;
  k_overridden: boolean;
  assignments: number[];
  inertia: number;
  baseline_assignments: number[];
}

export interface ClusterProfile {
  cluster_id: number;
  n_points: number;
  total_variance: number;
  performance_mean: number;
  performance_sd: number;
  fairness_mean: number;
  fairness_sd: number;
  member_ids: ModelId[];
}

export interface BoxStats {
  cluster_id: number;
  median: number;
  q1: number;
  q3: number;
  whisker_low: number;
  whisker_high: number;
  outliers: number[];
  mean: number;
}

export interface FeatureSummary {
  feature_name: string;
  mean_abs_importance: number;
  clusters: BoxStats[];
}

/** GET /api/runs/{id}/heatmap; delta[i][j] = before - after distance. */
export interface Heatmap {
  ordering_key: string;
  ordered_ids: ModelId[];
  delta: Matrix;
}

export interface StageTiming {
  stage: string;
  milliseconds: number;
}

export interface ResultsDocument {
  schema_version: 1;
  kind: "fairscope.results";
  portfolio: {
    fingerprint: string;
    dataset: string;
    method: string;
    performance_metric: string;
    fairness_metric: string;
    feature_names: string[];
    models: PlacedModel[];
  };
  config: PipelineConfig;
  constraints: ConstraintCounts | null; // null in baseline mode
  metric: MetricSummary;
  validation: ValidationTable;
  clustering: ClusteringSummary;
  profiles: ClusterProfile[];
  features: FeatureSummary[];
  heatmap: Heatmap;
  timings?: StageTiming[];
}

/** GET /api/runs/{id} */
export interface RunDocument extends ResultsDocument {
  run_id: RunId;
}

export interface ClusterMember {
  id: ModelId;
  cluster: number;
  baseline_cluster: number;
}

/** GET /api/runs/{id}/clusters */
export interface ClustersView {
  run_id: RunId;
  chosen_k: number;
  k_star: number;
  models: ClusterMember[];
}

/** GET /api/models/{id}; run_id and cluster refer to the latest run. */
export interface ModelView {
  model: ModelRecord;
  run_id: RunId | null;
  cluster: number | null;
}

// ---- Errors -------------------------------------------------------------------

export type ErrorKind =
  | "format"
  | "validation"
  | "config"
  | "argument"
  | "numerical"
  | "degenerate"
  | "io"
  | "not_found"
  | "conflict";

export interface ApiError {
  error: {
    kind: ErrorKind;
    message: string;
    stage?: string;
  };
}

export interface Health {
  status: "ok";
}
