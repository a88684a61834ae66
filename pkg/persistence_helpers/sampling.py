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
"""Seeded random diagrams, perturbations and metrics with dyadic coordinates."""
from fractions import Fraction
from typing import Optional

import numpy as np

from .diagram import BirthDeathPair, PersistenceDiagram, local_radius
from .metrics import FiniteMetric


class DiagramSampler:
    """Random generator for the property suites.

    Every value is a dyadic rational k / 2**depth inside [0, bound], drawn
    from a numpy Generator, so a seed fixes the whole sequence of cases.

    Args:
        seed: seed of the underlying numpy Generator
        max_points: largest number of pairs in a generated diagram
        bound: coordinates are drawn from [0, bound]
        depth: coordinates have denominators dividing 2**depth
    """

    def __init__(self, seed: int = 0, max_points: int = 8, bound: int = 16, depth: int = 3):
        self.rng = np.random.default_rng(seed)
        self.max_points = max_points
        self.bound = bound
        self.depth = depth

    @property
    def resolution(self) -> int:
        return 2 ** self.depth

    def dyadic(self, lo: Fraction = Fraction(0), hi: Optional[Fraction] = None) -> Fraction:
        """Uniform dyadic value in [lo, hi] at the sampler's resolution."""
        hi = Fraction(self.bound) if hi is None else hi
        first = -((-lo * self.resolution) // 1)
        last = (hi * self.resolution) // 1
        return Fraction(int(self.rng.integers(first, last + 1)), self.resolution)

    def count(self, lo: int = 0, hi: Optional[int] = None) -> int:
        hi = self.max_points if hi is None else hi
        return int(self.rng.integers(lo, hi + 1))

    def pair(self) -> BirthDeathPair:
        while True:
            a, b = self.dyadic(), self.dyadic()
            if a != b:
                return BirthDeathPair(min(a, b), max(a, b))

    def diagram(self, min_points: int = 0, max_points: Optional[int] = None) -> PersistenceDiagram:
        points = [self.pair() for _ in range(self.count(min_points, max_points))]
        # repeat a pair now and then so multiplicities get exercised
        if len(points) >= 2 and self.rng.random() < 0.25:
            points[-1] = points[0]
        return PersistenceDiagram.from_points(points)

    def birth_zero_diagram(self, min_points: int = 0,
                           max_points: Optional[int] = None) -> PersistenceDiagram:
        deaths = [self.dyadic(Fraction(1, self.resolution)) for _ in range(self.count(min_points, max_points))]
        return PersistenceDiagram.from_points((0, death) for death in deaths)

    def eps(self, hi: Optional[Fraction] = None) -> Fraction:
        hi = Fraction(self.bound, 4) if hi is None else hi
        return self.dyadic(Fraction(0), hi)

    def perturbation(self, diagram: PersistenceDiagram, spurious: int = 2,
                     scale: int = 1) -> PersistenceDiagram:
        """Move every pair by less than scale * r and add a few short-lived pairs.

        r is the local radius of the diagram. Offsets are multiples of
        r / 2**depth strictly below scale * r, and the added pairs have
        half-persistence below scale * r. Pairs pushed onto or below the
        diagonal are dropped.
        """
        radius = local_radius(diagram) * scale
        steps = self.resolution

        def offset() -> Fraction:
            return Fraction(int(self.rng.integers(-(steps - 1), steps)), steps) * radius

        moved = []
        for pair in diagram.points():
            birth, death = pair.birth + offset(), pair.death + offset()
            if birth < death:
                moved.append(BirthDeathPair(birth, death))
        for _ in range(int(self.rng.integers(0, spurious + 1))):
            birth = self.dyadic()
            persistence = Fraction(int(self.rng.integers(1, 2 * steps)), steps) * radius
            moved.append(BirthDeathPair(birth, birth + persistence))
        return PersistenceDiagram.from_points(moved)

    def metric(self, max_size: int = 6) -> FiniteMetric:
        """Shortest-path metric of a complete graph with random positive dyadic weights."""
        n = self.count(1, max_size)
        weights = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                weights[i][j] = weights[j][i] = self.dyadic(Fraction(1, self.resolution))
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    weights[i][j] = min(weights[i][j], weights[i][k] + weights[k][j])
        return FiniteMetric(tuple(tuple(row) for row in weights))
