# Copyright 2024, persistence-erosion contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# oracles, sampling and verify are test surface and stay out of these exports
from .config import ErosionConfig
from .command import CommandBuilder, UsageError, command_handler
from .diagram import (
    EMPTY_DIAGRAM,
    BirthDeathPair,
    PersistenceDiagram,
    RankQueryPoint,
    diagram_leq,
    erosion_feasible,
    in_open_ball,
    interpolate_matched,
    local_radius,
    rank_at,
    shrink_diagram,
)
from .landscape import (
    EMPTY_LANDSCAPE,
    LandscapeCurve,
    LandscapeSequence,
    TentFunction,
    ValidationReport,
    build_landscape,
    critical_points,
    degree_at,
    direct_sum,
    evaluate,
    flow,
    invert_by_degree,
    invert_by_peeling,
    landscape_from_tents,
    landscape_leq,
    local_maxima_count,
    sup_norm_dist,
    tent,
    validate,
)
from .coflow import interleaving_bracket, landscape_interleaving
from .metrics import (
    DeathVector,
    FiniteMetric,
    GapWitness,
    PartialMatching,
    birthzero_distance,
    bottleneck,
    bottleneck_distance,
    death_vectorization,
    diagram_from_death_vector,
    dv_distance,
    embed_finite_metric,
    erosion,
    erosion_direct,
    erosion_path_length,
    gap_example,
    landscape_distance,
    matching_cost,
)
from .util import (
    DiagramFormatError,
    InvalidDiagramError,
    InvalidLandscapeError,
    InvalidMatchingError,
    InvalidMetricError,
    OracleLimitError,
    PropertyViolation,
    Scalar,
    format_scalar,
    to_scalar,
)
