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
"""Brute-force reference computations for the test surface.

Nothing in here calls into the modules it checks: diagrams and landscapes
are read as raw coordinates and every quantity is recomputed from its
definition. The production modules never import this one.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from .util import OracleLimitError, ScalarLike, to_scalar

Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class GridSpec:
    """Evenly spaced sample values lo, lo + step, ..., hi."""
    lo: Fraction
    hi: Fraction
    step: Fraction

    def __post_init__(self):
        lo, hi, step = to_scalar(self.lo), to_scalar(self.hi), to_scalar(self.step)
        if not lo < hi:
            raise ValueError(f"grid needs lo < hi, got [{lo}, {hi}]")
        if step <= 0 or ((hi - lo) / step).denominator != 1:
            raise ValueError(f"step {step} does not divide [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "step", step)

    def values(self) -> Iterator[Fraction]:
        count = int((self.hi - self.lo) / self.step)
        return (self.lo + i * self.step for i in range(count + 1))

    @classmethod
    def covering(cls, *point_lists: Sequence[Point], step: ScalarLike = Fraction(1, 16),
                 margin: ScalarLike = 1) -> "GridSpec":
        """A grid on a step-aligned window around every coordinate of the given points."""
        step, margin = to_scalar(step), to_scalar(margin)
        coordinates = [c for points in point_lists for p in points for c in p] or [Fraction(0)]
        lo = (min(coordinates) - margin) // step * step
        hi = -((-(max(coordinates) + margin)) // step) * step
        return cls(lo, max(hi, lo + step), step)


def raw_points(diagram) -> List[Point]:
    """(birth, death) tuples of a diagram, repeated by multiplicity."""
    return [(pair.birth, pair.death) for pair, multiplicity in diagram.pairs
            for _ in range(multiplicity)]


def _cost(p: Point, q: Point) -> Fraction:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diagonal_cost(p: Point) -> Fraction:
    return (p[1] - p[0]) / 2


def bottleneck_bruteforce(diagram, other, limit: int = 12) -> Fraction:
    """Minimum cost over every partial matching, enumerated one left point at a time.

    Raises:
        OracleLimitError: the two diagrams have more than `limit` points together
    """
    left, right = raw_points(diagram), raw_points(other)
    if len(left) + len(right) > limit:
        raise OracleLimitError(f"{len(left)} + {len(right)} points exceed the brute-force limit {limit}")

    def best(i: int, used: frozenset) -> Fraction:
        if i == len(left):
            return max((_diagonal_cost(q) for j, q in enumerate(right) if j not in used),
                       default=Fraction(0))
        options = [max(_diagonal_cost(left[i]), best(i + 1, used))]
        for j, q in enumerate(right):
            if j not in used:
                options.append(max(_cost(left[i], q), best(i + 1, used | {j})))
        return min(options)

    return best(0, frozenset())


def count_containing(points: Sequence[Point], b: Fraction, d: Fraction) -> int:
    """Literal rank: pairs with birth <= b and d < death."""
    return sum(1 for birth, death in points if birth <= b and d < death)


def rank_grid_check(diagram, other, eps: ScalarLike, grid: GridSpec) -> bool:
    """Both grown-rank inequalities of the erosion condition at every grid query b <= d."""
    eps = to_scalar(eps)
    left, right = raw_points(diagram), raw_points(other)
    values = list(grid.values())
    for b in values:
        for d in values:
            if b > d:
                continue
            if count_containing(left, b - eps, d + eps) > count_containing(right, b, d):
                return False
            if count_containing(right, b - eps, d + eps) > count_containing(left, b, d):
                return False
    return True


def rank_dominated_on_samples(diagram, other, offset: ScalarLike = Fraction(1, 64)) -> bool:
    """rank[diagram] <= rank[other] at every coordinate value and its +-offset neighbours."""
    offset = to_scalar(offset)
    left, right = raw_points(diagram), raw_points(other)
    coordinates = {c for p in left + right for c in p}
    samples = sorted({c + s for c in coordinates for s in (-offset, Fraction(0), offset)})
    return all(count_containing(left, b, d) <= count_containing(right, b, d)
               for b in samples for d in samples if b <= d)


def tent_kmax(diagram, k: int, t: ScalarLike) -> Fraction:
    """k-th largest tent value at t, straight from the tent formula."""
    t = to_scalar(t)
    values = sorted((max(Fraction(0), min(t - b, d - t)) for b, d in raw_points(diagram)),
                    reverse=True)
    return values[k - 1] if k <= len(values) else Fraction(0)


def _interpolate(breakpoints: Sequence[Point], t: Fraction) -> Fraction:
    for (t0, h0), (t1, h1) in zip(breakpoints, breakpoints[1:]):
        if t0 <= t <= t1:
            return h0 + (h1 - h0) * (t - t0) / (t1 - t0)
    if len(breakpoints) == 1 and breakpoints[0][0] == t:
        return breakpoints[0][1]
    return Fraction(0)


def landscape_grid_supnorm(landscape, other, grid: GridSpec) -> Fraction:
    """max over depths and grid abscissas of the difference of two landscapes."""
    first = [curve.breakpoints for curve in landscape.curves]
    second = [curve.breakpoints for curve in other.curves]
    depth = max(len(first), len(second))
    first += [()] * (depth - len(first))
    second += [()] * (depth - len(second))
    return max((abs(_interpolate(a, t) - _interpolate(b, t))
                for a, b in zip(first, second) for t in grid.values()),
               default=Fraction(0))


def landscape_grid_leq(landscape, other, grid: GridSpec) -> bool:
    """lambda_k(t) <= mu_k(t) at every grid abscissa and every depth."""
    first = [curve.breakpoints for curve in landscape.curves]
    second = [curve.breakpoints for curve in other.curves]
    second += [()] * max(0, len(first) - len(second))
    return all(_interpolate(a, t) <= _interpolate(b, t)
               for a, b in zip(first, second) for t in grid.values())
