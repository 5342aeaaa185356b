# Copyright 2026 The FairScope Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the FairScope portfolio pipeline."""

import json as _json

from ._fairscope import (
    FairScopeError,
    ModelRecord,
    Portfolio,
    adjusted_rand_index,
    calinski_harabasz,
    davies_bouldin,
    dunn,
    generate_synthetic,
    kmeans,
    learn_metric,
    load_portfolio,
    mahalanobis,
    parse_portfolio_csv,
    parse_portfolio_json,
    planted_labels,
    run_pipeline_json,
    silhouette,
)

__all__ = [
    "FairScopeError",
    "ModelRecord",
    "Portfolio",
    "adjusted_rand_index",
    "calinski_harabasz",
    "davies_bouldin",
    "dunn",
    "generate_synthetic",
    "kmeans",
    "learn_metric",
    "load_portfolio",
    "mahalanobis",
    "parse_portfolio_csv",
    "parse_portfolio_json",
    "planted_labels",
    "run_pipeline",
    "run_pipeline_json",
    "silhouette",
]


def run_pipeline(portfolio, config=None, with_timings=False):
    """Runs the full pipeline and returns the results document as a dict.

    `config` uses the same keys as the results file's "config" section; any
    omitted key keeps its default.
    """
    text = run_pipeline_json(portfolio, _json.dumps(config) if config else "", with_timings)
    return _json.loads(text)
