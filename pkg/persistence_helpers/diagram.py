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
"""Persistence diagrams as exact multisets of birth-death pairs.

Everything here works on `fractions.Fraction` values, so the coflow axioms and
the rank inequalities can be checked with `==` and `<=` instead of tolerances.

The order on diagrams compares rank functions: Y <= Y' when every query
interval is properly contained in at least as many pairs of Y' as of Y. The
grow/shrink coflow moves every pair inwards by eps on both ends; pairs that
reach the diagonal disappear.
"""
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Iterator, List, Tuple, Union

from .util import InvalidDiagramError, ScalarLike, to_scalar

if TYPE_CHECKING:
    from .metrics import PartialMatching


@dataclass(frozen=True, order=True)
class BirthDeathPair:
    """A point (birth, death) strictly above the diagonal."""
    birth: Fraction
    death: Fraction

    def __post_init__(self):
        birth, death = to_scalar(self.birth), to_scalar(self.death)
        if not birth < death:
            raise InvalidDiagramError(
                f"pair ({birth}, {death}) is not strictly above the diagonal")
        object.__setattr__(self, "birth", birth)
        object.__setattr__(self, "death", death)

    @property
    def persistence(self) -> Fraction:
        return self.death - self.birth

    @property
    def half_persistence(self) -> Fraction:
        """Cost of matching this pair to the diagonal, also its tent height."""
        return self.persistence / 2

    @property
    def midpoint(self) -> Fraction:
        return (self.birth + self.death) / 2

    def linf(self, other: "BirthDeathPair") -> Fraction:
        return max(abs(self.birth - other.birth), abs(self.death - other.death))

    def contains(self, b: Fraction, d: Fraction) -> bool:
        """True when this pair properly contains the query (b, d): birth <= b and d < death."""
        return self.birth <= b and d < self.death


@dataclass(frozen=True)
class RankQueryPoint:
    """A query interval (b, d) with b <= d; the diagonal is allowed."""
    b: Fraction
    d: Fraction

    def __post_init__(self):
        b, d = to_scalar(self.b), to_scalar(self.d)
        if b > d:
            raise InvalidDiagramError(f"rank query ({b}, {d}) has b > d")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def grow(self, eps: ScalarLike) -> "RankQueryPoint":
        eps = to_scalar(eps)
        return RankQueryPoint(self.b - eps, self.d + eps)


PairLike = Union[BirthDeathPair, Tuple[ScalarLike, ScalarLike]]


def as_pair(value: PairLike) -> BirthDeathPair:
    if isinstance(value, BirthDeathPair):
        return value
    birth, death = value
    return BirthDeathPair(birth, death)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Finite multiset of birth-death pairs.

    `pairs` holds (pair, multiplicity) entries sorted by (birth, death) with
    duplicates merged, so two diagrams are equal as multisets exactly when
    they are equal as values.
    """
    pairs: Tuple[Tuple[BirthDeathPair, int], ...] = ()

    def __post_init__(self):
        counts = Counter()
        for pair, multiplicity in self.pairs:
            multiplicity = int(multiplicity)
            if multiplicity < 0:
                raise InvalidDiagramError(f"negative multiplicity {multiplicity}")
            if multiplicity:
                counts[as_pair(pair)] += multiplicity
        object.__setattr__(self, "pairs", tuple(sorted(counts.items())))

    @classmethod
    def from_points(cls, points: Iterable[PairLike]) -> "PersistenceDiagram":
        """Build a diagram from an iterable of pairs, repeated pairs counting twice."""
        return cls(tuple((as_pair(point), 1) for point in points))

    def points(self) -> List[BirthDeathPair]:
        """All pairs with multiplicity, in canonical order."""
        return [pair for pair, multiplicity in self.pairs
                for _ in range(multiplicity)]

    def __iter__(self) -> Iterator[BirthDeathPair]:
        return iter(self.points())

    def __len__(self) -> int:
        return sum(multiplicity for _, multiplicity in self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def multiplicity(self, pair: PairLike) -> int:
        pair = as_pair(pair)
        for candidate, multiplicity in self.pairs:
            if candidate == pair:
                return multiplicity
        return 0

    @property
    def births(self) -> List[Fraction]:
        return sorted({pair.birth for pair, _ in self.pairs})

    @property
    def deaths(self) -> List[Fraction]:
        return sorted({pair.death for pair, _ in self.pairs})

    @property
    def is_birth_zero(self) -> bool:
        return all(pair.birth == 0 for pair, _ in self.pairs)

    @property
    def max_persistence(self) -> Fraction:
        return max((pair.persistence for pair, _ in self.pairs), default=Fraction(0))

    def __str__(self) -> str:
        entries = ", ".join(f"({p.birth}, {p.death})" + (f"x{m}" if m > 1 else "")
                            for p, m in self.pairs)
        return "{" + entries + "}"


EMPTY_DIAGRAM = PersistenceDiagram()


def _check_eps(eps: ScalarLike) -> Fraction:
    eps = to_scalar(eps)
    if eps < 0:
        raise InvalidDiagramError(f"coflow parameter must be non-negative, got {eps}")
    return eps


def _rank(diagram: PersistenceDiagram, b: Fraction, d: Fraction) -> int:
    return sum(multiplicity for pair, multiplicity in diagram.pairs
               if pair.contains(b, d))


def rank_at(diagram: PersistenceDiagram, query: RankQueryPoint) -> int:
    """Count the pairs of the diagram, with multiplicity, that properly contain the query.

    A pair (b_i, d_i) properly contains (b, d) when b_i <= b and d < d_i.

    Args:
        diagram: the persistence diagram
        query: the query interval, b <= d

    Returns:
        The value of the rank function at the query.
    """
    if not isinstance(query, RankQueryPoint):
        query = RankQueryPoint(*query)
    return _rank(diagram, query.b, query.d)


def shrink_diagram(diagram: PersistenceDiagram, eps: ScalarLike) -> PersistenceDiagram:
    """Apply the shrink functor: keep the pairs whose eps-grow lands in the diagram.

    Every pair (b, d) becomes (b + eps, d - eps) and survives only while
    b + eps < d - eps. Multiplicities of survivors are preserved.
    """
    eps = _check_eps(eps)
    if eps == 0:
        return diagram
    shrunk = []
    for pair, multiplicity in diagram.pairs:
        birth, death = pair.birth + eps, pair.death - eps
        if birth < death:
            shrunk.append((BirthDeathPair(birth, death), multiplicity))
    return PersistenceDiagram(tuple(shrunk))


def rank_test_points(*diagrams: PersistenceDiagram) -> Iterator[Tuple[Fraction, Fraction]]:
    """Finite set of queries on which rank comparisons between the diagrams are decided.

    Let B be the births of all diagrams and T = B plus all deaths. Every rank
    function involved is right-continuous and constant on the half-open cells
    [beta_k, beta_k+1) x [delta_l, delta_l+1) cut out by B in the first
    coordinate and by the deaths in the second. A cell that meets {b <= d}
    contains its lower-left corner (beta_k, delta_l) when beta_k <= delta_l,
    and otherwise the diagonal point (beta_k, beta_k). Queries left of every
    birth have rank 0 for every diagram. So comparing ranks on
    {(beta, delta) : beta in B, delta in T, beta <= delta} compares them
    everywhere on the half-plane b <= d.
    """
    births = sorted({pair.birth for diagram in diagrams for pair, _ in diagram.pairs})
    deaths = {pair.death for diagram in diagrams for pair, _ in diagram.pairs}
    thresholds = sorted(deaths.union(births))
    for beta in births:
        for delta in thresholds:
            if beta <= delta:
                yield beta, delta


def _deaths_born_by(diagram: PersistenceDiagram, beta: Fraction) -> List[Fraction]:
    return sorted(pair.death for pair in diagram.points() if pair.birth <= beta)


def diagram_leq(diagram: PersistenceDiagram, other: PersistenceDiagram) -> bool:
    """True iff rank[diagram] <= rank[other] at every query interval.

    Evaluated on `rank_test_points`; for a fixed beta the rank at (beta, delta)
    is the number of deaths above delta among the pairs born by beta.
    """
    if not diagram:
        return True
    current, mine, theirs = None, [], []
    for beta, delta in rank_test_points(diagram, other):
        if beta != current:
            current = beta
            mine, theirs = _deaths_born_by(diagram, beta), _deaths_born_by(other, beta)
        if len(mine) - bisect_right(mine, delta) > len(theirs) - bisect_right(theirs, delta):
            return False
    return True


def erosion_feasible(diagram: PersistenceDiagram, other: PersistenceDiagram,
                     eps: ScalarLike) -> bool:
    """Check both rank conditions of the erosion distance at eps.

    rank[Y](b - eps, d + eps) <= rank[Y'](b, d) is the same as
    rank[shrink(Y, eps)] <= rank[Y'] because growing the query by eps and
    shrinking the diagram by eps count the same pairs.
    """
    eps = _check_eps(eps)
    return (diagram_leq(shrink_diagram(diagram, eps), other)
            and diagram_leq(shrink_diagram(other, eps), diagram))


def local_radius(diagram: PersistenceDiagram) -> Fraction:
    """Radius below which bottleneck and erosion distances agree around the diagram.

    Half the minimum over the non-zero birth gaps, the non-zero death gaps
    and the half-persistences (d_i - b_i) / 2. Gaps between equal
    coordinates are skipped, so repeated pairs only contribute their
    persistence term.

    Raises:
        InvalidDiagramError: the diagram is empty
    """
    if not diagram:
        raise InvalidDiagramError("local radius of the empty diagram is undefined")
    terms = [pair.persistence / 2 for pair, _ in diagram.pairs]
    births, deaths = diagram.births, diagram.deaths
    # sorted distinct values: the smallest non-zero gap is between neighbours
    terms.extend(b2 - b1 for b1, b2 in zip(births, births[1:]))
    terms.extend(d2 - d1 for d1, d2 in zip(deaths, deaths[1:]))
    return min(terms) / 2


def in_open_ball(diagram: PersistenceDiagram, other: PersistenceDiagram,
                 radius: ScalarLike) -> bool:
    """Membership of `other` in the box-and-band region U(diagram, radius).

    1. each pair of `diagram` with multiplicity m has exactly m pairs of
       `other` (with multiplicity) in its open l-infinity box of the radius;
    2. each pair of `other` lies in one of those boxes or in the open band
       (d - b) / 2 < radius above the diagonal.
    """
    radius = to_scalar(radius)
    if radius <= 0:
        raise InvalidDiagramError("radius must be positive")
    for center, multiplicity in diagram.pairs:
        inside = sum(count for pair, count in other.pairs
                     if center.linf(pair) < radius)
        if inside != multiplicity:
            return False
    for pair, _ in other.pairs:
        in_box = any(center.linf(pair) < radius for center, _ in diagram.pairs)
        if not in_box and not pair.half_persistence < radius:
            return False
    return True


def _lerp(start: Fraction, end: Fraction, t: Fraction) -> Fraction:
    return start + t * (end - start)


def interpolate_matched(diagram: PersistenceDiagram, other: PersistenceDiagram,
                        matching: "PartialMatching", t: ScalarLike) -> PersistenceDiagram:
    """Point of the straight-line path between two diagrams along a matching.

    Matched pairs move linearly to their partners. Unmatched pairs of
    `diagram` slide to their diagonal projection ((b+d)/2, (b+d)/2); unmatched
    pairs of `other` slide out of theirs. Interpolants on the diagonal are
    dropped.

    Args:
        diagram: the start of the path (t = 0)
        other: the end of the path (t = 1)
        matching: a partial matching between the two, indices into `points()`
        t: position on the path, 0 <= t <= 1

    Returns:
        The diagram at parameter t.
    """
    t = to_scalar(t)
    if not 0 <= t <= 1:
        raise InvalidDiagramError(f"path parameter {t} outside [0, 1]")
    start, end = diagram.points(), other.points()
    matching.validate(len(start), len(end))

    moved = []
    for i, j in matching.matched:
        p, q = start[i], end[j]
        moved.append((_lerp(p.birth, q.birth, t), _lerp(p.death, q.death, t)))
    for i in matching.unmatched_left:
        p = start[i]
        moved.append((_lerp(p.birth, p.midpoint, t), _lerp(p.death, p.midpoint, t)))
    for j in matching.unmatched_right:
        q = end[j]
        moved.append((_lerp(q.midpoint, q.birth, t), _lerp(q.midpoint, q.death, t)))
    return PersistenceDiagram.from_points((b, d) for b, d in moved if b < d)
