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
"""Distances between persistence diagrams.

Bottleneck, erosion (landscape route and rank-bisection route), landscape
and the closed form on birth-zero diagrams, together with the death
vectorization, the intrinsic path-length experiment and the isometric
embedding of finite metric spaces into birth-zero diagrams.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from ovos_utils.log import LOG
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .coflow import interleaving_bracket
from .diagram import (BirthDeathPair, PersistenceDiagram, diagram_leq,
                      interpolate_matched, shrink_diagram)
from .landscape import build_landscape, sup_norm_dist
from .util import (InvalidDiagramError, InvalidMatchingError, InvalidMetricError,
                   ScalarLike, pairwise, to_scalar)


@dataclass(frozen=True)
class PartialMatching:
    """Bijection between some pairs of two diagrams; the rest go to the diagonal.

    Indices refer to `PersistenceDiagram.points()` of the two diagrams.
    """
    matched: Tuple[Tuple[int, int], ...] = ()
    unmatched_left: Tuple[int, ...] = ()
    unmatched_right: Tuple[int, ...] = ()
    cost: Fraction = Fraction(0)

    def validate(self, n_left: int, n_right: int):
        """Raise InvalidMatchingError unless the indices partition both sides."""
        left = [i for i, _ in self.matched] + list(self.unmatched_left)
        right = [j for _, j in self.matched] + list(self.unmatched_right)
        if sorted(left) != list(range(n_left)):
            raise InvalidMatchingError(f"left indices {sorted(left)} do not partition 0..{n_left - 1}")
        if sorted(right) != list(range(n_right)):
            raise InvalidMatchingError(f"right indices {sorted(right)} do not partition 0..{n_right - 1}")


def matching_cost(diagram: PersistenceDiagram, other: PersistenceDiagram,
                  matching: PartialMatching) -> Fraction:
    """Largest l-infinity move of a matched pair or half-persistence of an unmatched one."""
    start, end = diagram.points(), other.points()
    matching.validate(len(start), len(end))
    costs = [start[i].linf(end[j]) for i, j in matching.matched]
    costs.extend(start[i].half_persistence for i in matching.unmatched_left)
    costs.extend(end[j].half_persistence for j in matching.unmatched_right)
    return max(costs, default=Fraction(0))


def _threshold_graph(left: List[BirthDeathPair], right: List[BirthDeathPair],
                     delta: Fraction) -> csr_matrix:
    """Diagonal-augmented bipartite graph of the moves costing at most delta.

    Rows are the left pairs followed by one diagonal slot per right pair;
    columns are the right pairs followed by one diagonal slot per left pair.
    """
    n, m = len(left), len(right)
    rows, cols = [], []
    for i, p in enumerate(left):
        for j, q in enumerate(right):
            if p.linf(q) <= delta:
                rows.append(i)
                cols.append(j)
        if p.half_persistence <= delta:
            rows.append(i)
            cols.append(m + i)
    for j, q in enumerate(right):
        if q.half_persistence <= delta:
            rows.append(n + j)
            cols.append(j)
        for i in range(n):
            rows.append(n + j)
            cols.append(m + i)
    data = np.ones(len(rows), dtype=np.int8)
    return csr_matrix((data, (rows, cols)), shape=(n + m, m + n))


def _perfect_matching(left: List[BirthDeathPair], right: List[BirthDeathPair],
                      delta: Fraction) -> Optional[PartialMatching]:
    n, m = len(left), len(right)
    assignment = maximum_bipartite_matching(_threshold_graph(left, right, delta),
                                            perm_type="column")
    if np.any(assignment < 0):
        return None
    matched, unmatched_left, unmatched_right = [], [], []
    for row, col in enumerate(assignment.tolist()):
        if row < n:
            if col < m:
                matched.append((row, col))
            else:
                unmatched_left.append(row)
        elif col < m:
            unmatched_right.append(col)
    return PartialMatching(tuple(matched), tuple(unmatched_left), tuple(sorted(unmatched_right)))


def bottleneck(diagram: PersistenceDiagram,
               other: PersistenceDiagram) -> Tuple[Fraction, PartialMatching]:
    """Exact bottleneck distance and an optimal matching.

    The optimum is one of the candidate costs (a pairwise l-infinity distance,
    a half-persistence, or 0), so a binary search over the sorted candidates
    with a perfect-matching feasibility test finds it exactly.

    Args:
        diagram: first diagram
        other: second diagram

    Returns:
        (distance, matching) where the matching's cost equals the distance.
    """
    left, right = diagram.points(), other.points()
    if not left and not right:
        return Fraction(0), PartialMatching()
    candidates = {Fraction(0)}
    candidates.update(p.linf(q) for p in left for q in right)
    candidates.update(p.half_persistence for p in left)
    candidates.update(q.half_persistence for q in right)
    candidates = sorted(candidates)

    # the largest candidate admits the all-diagonal matching
    lo, hi = 0, len(candidates) - 1
    best = _perfect_matching(left, right, candidates[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        found = _perfect_matching(left, right, candidates[mid])
        if found is None:
            lo = mid + 1
        else:
            hi, best = mid, found
    distance = candidates[hi]
    LOG.debug(f"bottleneck threshold {distance} ({hi + 1} of {len(candidates)} candidates)")
    return distance, PartialMatching(best.matched, best.unmatched_left, best.unmatched_right,
                                     matching_cost(diagram, other, best))


def bottleneck_distance(diagram: PersistenceDiagram, other: PersistenceDiagram) -> Fraction:
    return bottleneck(diagram, other)[0]


def erosion(diagram: PersistenceDiagram, other: PersistenceDiagram) -> Fraction:
    """Exact erosion distance, computed as the sup-norm distance of the landscapes."""
    return sup_norm_dist(build_landscape(diagram), build_landscape(other))


def landscape_distance(diagram: PersistenceDiagram, other: PersistenceDiagram) -> Fraction:
    """sup over k and t of |lambda_k - lambda'_k|.

    Same computation as `erosion`; kept as its own entry point because the
    two distances are defined differently and only coincide by theorem.
    """
    return sup_norm_dist(build_landscape(diagram), build_landscape(other))


def erosion_direct(diagram: PersistenceDiagram, other: PersistenceDiagram,
                   tol: ScalarLike) -> Tuple[Fraction, Fraction]:
    """Bracket the erosion distance by bisection on the rank conditions.

    Independent of the landscape route. The initial upper bound is the
    largest half-persistence plus the spread of all coordinates; there both
    shrunk diagrams are empty.
    """
    coordinates = [c for d in (diagram, other) for pair in d.points()
                   for c in (pair.birth, pair.death)]
    if not coordinates:
        return Fraction(0), Fraction(0)
    hi = max(diagram.max_persistence, other.max_persistence) / 2 \
        + max(coordinates) - min(coordinates)
    return interleaving_bracket(diagram, other, shrink_diagram, diagram_leq, hi, tol)


def _require_birth_zero(*diagrams: PersistenceDiagram):
    for diagram in diagrams:
        if not diagram.is_birth_zero:
            raise InvalidDiagramError(f"diagram {diagram} has a pair not born at 0")


def _sorted_deaths(diagram: PersistenceDiagram) -> List[Fraction]:
    return sorted((pair.death for pair in diagram.points()), reverse=True)


def birthzero_distance(diagram: PersistenceDiagram, other: PersistenceDiagram) -> Fraction:
    """Closed form shared by bottleneck, erosion and landscape distance on birth-zero diagrams.

    max_i min(|d_i - d'_i|, max(d_i, d'_i) / 2) over the deaths sorted in
    decreasing order, the shorter list padded with zeros.
    """
    _require_birth_zero(diagram, other)
    zero = Fraction(0)
    return max((min(abs(d - e), max(d, e) / 2)
                for d, e in zip_longest(_sorted_deaths(diagram), _sorted_deaths(other),
                                        fillvalue=zero)),
               default=zero)


@dataclass(frozen=True)
class DeathVector:
    """Non-increasing sequence of positive deaths, implicitly followed by zeros."""
    entries: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        entries = tuple(to_scalar(entry) for entry in self.entries)
        if any(entry <= 0 for entry in entries):
            raise InvalidDiagramError(f"death vector entries must be positive: {entries}")
        if any(a < b for a, b in pairwise(entries)):
            raise InvalidDiagramError(f"death vector must be non-increasing: {entries}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)


def death_vectorization(diagram: PersistenceDiagram) -> DeathVector:
    _require_birth_zero(diagram)
    return DeathVector(tuple(_sorted_deaths(diagram)))


def diagram_from_death_vector(vector: DeathVector) -> PersistenceDiagram:
    return PersistenceDiagram.from_points((0, death) for death in vector.entries)


def dv_distance(vector: DeathVector, other: DeathVector) -> Fraction:
    """Sup-norm distance of two zero-padded death vectors."""
    zero = Fraction(0)
    return max((abs(a - b) for a, b in zip_longest(vector.entries, other.entries, fillvalue=zero)),
               default=zero)


@dataclass(frozen=True)
class FiniteMetric:
    """Distance matrix of a finite metric space, checked on construction."""
    dist: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        dist = tuple(tuple(to_scalar(value) for value in row) for row in self.dist)
        object.__setattr__(self, "dist", dist)
        n = len(dist)
        if n < 1:
            raise InvalidMetricError("non-empty", "a metric space needs at least one point")
        if any(len(row) != n for row in dist):
            raise InvalidMetricError("square matrix", f"expected {n} entries per row")
        for i in range(n):
            if dist[i][i] != 0:
                raise InvalidMetricError("zero diagonal", f"d({i},{i}) = {dist[i][i]}")
            for j in range(n):
                if dist[i][j] != dist[j][i]:
                    raise InvalidMetricError("symmetry", f"d({i},{j}) = {dist[i][j]} != d({j},{i}) = {dist[j][i]}")
                if i != j and dist[i][j] <= 0:
                    raise InvalidMetricError("positivity", f"d({i},{j}) = {dist[i][j]}")
                for k in range(n):
                    if dist[i][k] > dist[i][j] + dist[j][k]:
                        raise InvalidMetricError("triangle inequality",
                                                 f"d({i},{k}) > d({i},{j}) + d({j},{k})")

    @property
    def n(self) -> int:
        return len(self.dist)

    def kuratowski(self) -> List[Tuple[Fraction, ...]]:
        """Images x_i -> (d(x_i, x_1), ..., d(x_i, x_n)), isometric into l-infinity."""
        return [tuple(row) for row in self.dist]


def embed_finite_metric(metric: FiniteMetric) -> List[PersistenceDiagram]:
    """Isometric embedding of a finite metric space into birth-zero diagrams.

    The Kuratowski vectors a^i are made strictly decreasing and positive by
    phi(a)_k = 2c(n + 2 - k) + a_k, with c larger than every |a^i_k| and every
    |a^i_k - a^j_k'|; their death-vector preimages are the diagrams. Under
    that condition the birth-zero closed form reduces to the sup-norm of a^i - a^j.
    """
    vectors = metric.kuratowski()
    entries = [value for vector in vectors for value in vector]
    c = max(max(abs(value) for value in entries), max(entries) - min(entries)) + 1
    dimension = metric.n
    diagrams = []
    for vector in vectors:
        shifted = tuple(2 * c * (dimension + 2 - k) + a for k, a in enumerate(vector, start=1))
        diagrams.append(diagram_from_death_vector(DeathVector(shifted)))
    LOG.debug(f"embedded {dimension} points with c = {c}")
    return diagrams


def erosion_path_length(diagram: PersistenceDiagram, other: PersistenceDiagram,
                        segments: int) -> Fraction:
    """Erosion length of the straight path along an optimal bottleneck matching.

    Collisions of interpolated pairs along the path are not handled.
    """
    if segments < 1:
        raise ValueError(f"segments must be a positive integer, got {segments}")
    _, matching = bottleneck(diagram, other)
    path = [interpolate_matched(diagram, other, matching, Fraction(j, segments))
            for j in range(segments + 1)]
    return sum((erosion(a, b) for a, b in pairwise(path)), Fraction(0))


class GapWitness(NamedTuple):
    diagram: PersistenceDiagram
    other: PersistenceDiagram
    bottleneck: Fraction
    erosion: Fraction


GAP_PAIR = (((0, 8),), ((0, 6), (2, 8)))


def gap_example() -> GapWitness:
    """A pair of diagrams whose erosion distance is strictly below their bottleneck distance.

    {(0,8)} against {(0,6),(2,8)}: the single pair on the left absorbs at most
    one pair on the right and the other one costs half its persistence, so
    d_B = 3, while the landscapes never differ by more than 2.
    """
    diagram, other = (PersistenceDiagram.from_points(points) for points in GAP_PAIR)
    return GapWitness(diagram, other, bottleneck_distance(diagram, other), erosion(diagram, other))


def pairwise_distances(diagrams: Sequence[PersistenceDiagram]) -> List[List[Fraction]]:
    """Birth-zero distance matrix of a list of birth-zero diagrams."""
    return [[birthzero_distance(a, b) for b in diagrams] for a in diagrams]
