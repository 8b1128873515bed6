# Copyright 2026 The fuzzylb Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Fuzzy-logic dynamic load balancing simulator."""

from ._core import (
    Breakpoints,
    ConfigError,
    FuzzyController,
    HeavyCountPartition,
    InferenceResult,
    NodeStatus,
    PolicyKind,
    RunMetrics,
    SimConfig,
    classify_status,
    cli,
    defuzzify_centroid,
    fuzzify_heavy_count,
    fuzzify_load,
    generate_random_graph,
    improvement_pct,
    mean_improvement,
    routing_table,
    run_experiment,
    run_simulation,
    RNG_ALGORITHM,
)

__all__ = [
    "Breakpoints",
    "ConfigError",
    "FuzzyController",
    "HeavyCountPartition",
    "InferenceResult",
    "NodeStatus",
    "PolicyKind",
    "RunMetrics",
    "SimConfig",
    "classify_status",
    "cli",
    "defuzzify_centroid",
    "fuzzify_heavy_count",
    "fuzzify_load",
    "generate_random_graph",
    "improvement_pct",
    "mean_improvement",
    "routing_table",
    "run_experiment",
    "run_simulation",
    "RNG_ALGORITHM",
]
