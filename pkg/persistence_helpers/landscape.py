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
"""Exact persistence landscapes.

A landscape curve is stored as its breakpoints (t, h); between breakpoints it
is linear and outside them it is zero. Curves are kept canonical (no
collinear interior breakpoints, no leading or trailing zero segments), so a
breakpoint with positive height is always a genuine local maximum or minimum
and two curves are equal as functions exactly when they are equal as values.

The k-th envelope of a family of such curves is computed by sampling the
k-th largest value at every breakpoint and every pairwise segment crossing:
between two consecutive sample abscissas every curve is linear and no two
curves cross, so the k-th largest value is linear there too.
"""
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ovos_utils import timed_lru_cache
from ovos_utils.log import LOG

from .diagram import BirthDeathPair, PersistenceDiagram
from .util import InvalidLandscapeError, ScalarLike, pairwise, to_scalar

Breakpoint = Tuple[Fraction, Fraction]


def _collinear(a: Breakpoint, b: Breakpoint, c: Breakpoint) -> bool:
    return (b[1] - a[1]) * (c[0] - b[0]) == (c[1] - b[1]) * (b[0] - a[0])


def _canonical_breakpoints(points: Iterable[Tuple[ScalarLike, ScalarLike]]) -> Tuple[Breakpoint, ...]:
    canonical: List[Breakpoint] = []
    for t, h in points:
        point = (to_scalar(t), to_scalar(h))
        if canonical and point[0] <= canonical[-1][0]:
            raise InvalidLandscapeError(
                f"breakpoint abscissas must increase strictly, got {canonical[-1][0]} then {point[0]}")
        while len(canonical) >= 2 and _collinear(canonical[-2], canonical[-1], point):
            canonical.pop()
        canonical.append(point)
    while len(canonical) >= 2 and canonical[0][1] == 0 and canonical[1][1] == 0:
        canonical.pop(0)
    while len(canonical) >= 2 and canonical[-1][1] == 0 and canonical[-2][1] == 0:
        canonical.pop()
    if len(canonical) == 1 and canonical[0][1] == 0:
        canonical = []
    return tuple(canonical)


@dataclass(frozen=True)
class LandscapeCurve:
    """Compactly supported piecewise-linear function given by its breakpoints."""
    breakpoints: Tuple[Breakpoint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", _canonical_breakpoints(self.breakpoints))

    @property
    def abscissas(self) -> Tuple[Fraction, ...]:
        return tuple(t for t, _ in self.breakpoints)

    @property
    def is_zero(self) -> bool:
        return not self.breakpoints

    def __call__(self, t: ScalarLike) -> Fraction:
        t = to_scalar(t)
        ts = self.abscissas
        if not ts or t < ts[0] or t > ts[-1]:
            return Fraction(0)
        i = bisect_right(ts, t) - 1
        t0, h0 = self.breakpoints[i]
        if t0 == t or i + 1 == len(ts):
            return h0
        t1, h1 = self.breakpoints[i + 1]
        return h0 + (h1 - h0) * (t - t0) / (t1 - t0)

    def segments(self) -> List[Tuple[Breakpoint, Breakpoint]]:
        return pairwise(self.breakpoints)

    def _slope(self, i: int) -> Fraction:
        (t0, h0), (t1, h1) = self.breakpoints[i], self.breakpoints[i + 1]
        return (h1 - h0) / (t1 - t0)

    def one_sided_slopes(self, t: ScalarLike) -> Tuple[Fraction, Fraction]:
        """Left and right derivatives (D-, D+) at t."""
        t = to_scalar(t)
        ts = self.abscissas
        zero = Fraction(0)
        if not ts or t < ts[0] or t > ts[-1]:
            return zero, zero
        i = bisect_left(ts, t)
        if ts[i] == t:
            left = self._slope(i - 1) if i > 0 else zero
            right = self._slope(i) if i + 1 < len(ts) else zero
            return left, right
        slope = self._slope(i - 1)
        return slope, slope

    def local_maxima(self) -> List[Breakpoint]:
        return [(t, h) for t, h in self.breakpoints
                if h > 0 and self.one_sided_slopes(t) == (1, -1)]

    def violations(self) -> List[str]:
        """Reasons this curve is not a landscape curve, empty when it is one."""
        problems = []
        if self.is_zero:
            return problems
        (first_t, first_h), (last_t, last_h) = self.breakpoints[0], self.breakpoints[-1]
        if first_h != 0 or last_h != 0:
            problems.append(f"support is not closed off: height {first_h} at t={first_t}, "
                            f"{last_h} at t={last_t}")
        for t, h in self.breakpoints:
            if h < 0:
                problems.append(f"negative height {h} at t={t}")
        for i, ((t0, h0), (t1, h1)) in enumerate(self.segments()):
            slope = self._slope(i)
            if max(h0, h1) > 0 and slope not in (1, -1):
                problems.append(f"slope {slope} on [{t0}, {t1}]")
        return problems


ZERO_CURVE = LandscapeCurve()


@dataclass(frozen=True)
class LandscapeSequence:
    """The stack (lambda_1, ..., lambda_K); curves past K are zero.

    Trailing zero curves are dropped. Validity in the sense of landscape
    sequences is not enforced here; see `validate`.
    """
    curves: Tuple[LandscapeCurve, ...] = ()

    def __post_init__(self):
        curves = [curve if isinstance(curve, LandscapeCurve) else LandscapeCurve(tuple(curve))
                  for curve in self.curves]
        while curves and curves[-1].is_zero:
            curves.pop()
        object.__setattr__(self, "curves", tuple(curves))

    @property
    def depth(self) -> int:
        return len(self.curves)

    def curve(self, k: int) -> LandscapeCurve:
        """The k-th curve, 1-based."""
        if k < 1:
            raise ValueError(f"landscape depth index must be positive, got {k}")
        return self.curves[k - 1] if k <= self.depth else ZERO_CURVE


EMPTY_LANDSCAPE = LandscapeSequence()


@dataclass(frozen=True)
class TentFunction:
    """The tent of a pair: slopes +1 then -1, peak ((b+d)/2, (d-b)/2)."""
    birth: Fraction
    death: Fraction

    def __post_init__(self):
        birth, death = to_scalar(self.birth), to_scalar(self.death)
        if not birth < death:
            raise InvalidLandscapeError(f"tent needs birth < death, got ({birth}, {death})")
        object.__setattr__(self, "birth", birth)
        object.__setattr__(self, "death", death)

    @property
    def peak(self) -> Breakpoint:
        return (self.birth + self.death) / 2, (self.death - self.birth) / 2

    def __call__(self, t: ScalarLike) -> Fraction:
        t = to_scalar(t)
        return max(Fraction(0), min(t - self.birth, self.death - t))

    def curve(self) -> LandscapeCurve:
        return LandscapeCurve(((self.birth, Fraction(0)), self.peak, (self.death, Fraction(0))))

    def sequence(self) -> LandscapeSequence:
        return LandscapeSequence((self.curve(),))


def tent(birth: ScalarLike, death: ScalarLike) -> LandscapeCurve:
    return TentFunction(birth, death).curve()


def _crossing(seg_a: Tuple[Breakpoint, Breakpoint],
              seg_b: Tuple[Breakpoint, Breakpoint]) -> Optional[Fraction]:
    (a0, ah0), (a1, ah1) = seg_a
    (b0, bh0), (b1, bh1) = seg_b
    lo, hi = max(a0, b0), min(a1, b1)
    if lo > hi:
        return None
    slope_a = (ah1 - ah0) / (a1 - a0)
    slope_b = (bh1 - bh0) / (b1 - b0)
    if slope_a == slope_b:
        return None
    t = (bh0 - ah0 + slope_a * a0 - slope_b * b0) / (slope_a - slope_b)
    return t if lo <= t <= hi else None


def kth_envelopes(curves: Sequence[LandscapeCurve]) -> LandscapeSequence:
    """Pointwise sorted stack of a family of non-negative piecewise-linear curves.

    The k-th output curve is, at every t, the k-th largest of the input
    values at t.
    """
    curves = [curve for curve in curves if not curve.is_zero]
    if not curves:
        return EMPTY_LANDSCAPE
    abscissas = {t for curve in curves for t in curve.abscissas}
    segments = [segment for curve in curves for segment in curve.segments()]
    for i, seg_a in enumerate(segments):
        for seg_b in segments[i + 1:]:
            t = _crossing(seg_a, seg_b)
            if t is not None:
                abscissas.add(t)
    abscissas = sorted(abscissas)
    columns = [sorted((curve(t) for curve in curves), reverse=True) for t in abscissas]
    layers = [LandscapeCurve(tuple((t, column[k]) for t, column in zip(abscissas, columns)))
              for k in range(len(curves))]
    return LandscapeSequence(tuple(layers))


@timed_lru_cache(seconds=60 * 15)
def build_landscape(diagram: PersistenceDiagram) -> LandscapeSequence:
    """Persistence landscape of a diagram: lambda_k(t) is the k-th largest tent value at t."""
    return kth_envelopes([tent(pair.birth, pair.death) for pair in diagram.points()])


def evaluate(landscape: LandscapeSequence, k: int, t: ScalarLike) -> Fraction:
    return landscape.curve(k)(t)


def _merged_abscissas(a: LandscapeCurve, b: LandscapeCurve) -> List[Fraction]:
    return sorted(set(a.abscissas).union(b.abscissas))


def sup_norm_dist(landscape: LandscapeSequence, other: LandscapeSequence) -> Fraction:
    """sup over k and t of |lambda_k(t) - mu_k(t)|.

    The difference of two curves is piecewise linear with breakpoints among
    the merged breakpoints, and zero outside them, so the supremum is a
    maximum over those abscissas.
    """
    best = Fraction(0)
    for k in range(1, max(landscape.depth, other.depth) + 1):
        a, b = landscape.curve(k), other.curve(k)
        for t in _merged_abscissas(a, b):
            best = max(best, abs(a(t) - b(t)))
    return best


def landscape_leq(landscape: LandscapeSequence, other: LandscapeSequence) -> bool:
    """True iff lambda_k <= mu_k everywhere, for every k."""
    for k in range(1, landscape.depth + 1):
        a, b = landscape.curve(k), other.curve(k)
        if any(a(t) > b(t) for t in _merged_abscissas(a, b)):
            return False
    return True


def direct_sum(landscape: LandscapeSequence, other: LandscapeSequence) -> LandscapeSequence:
    """kmax{eta_1..eta_k, mu_1..mu_k} for every k.

    For non-increasing stacks the k largest values of the union always come
    from the first k curves of each summand, so this is the sorted stack of
    all curves of both summands.
    """
    return kth_envelopes(list(landscape.curves) + list(other.curves))


def landscape_from_tents(pairs: Iterable[Union[BirthDeathPair, Tuple]]) -> LandscapeSequence:
    """Direct sum of the tents of the given pairs, folded one summand at a time."""
    tents = [TentFunction(*((p.birth, p.death) if isinstance(p, BirthDeathPair) else p)).sequence()
             for p in pairs]
    return reduce(direct_sum, tents, EMPTY_LANDSCAPE)


def _lower_curve(curve: LandscapeCurve, eps: Fraction) -> LandscapeCurve:
    if curve.is_zero:
        return curve
    lowered = []
    for (t0, h0), (t1, h1) in curve.segments():
        lowered.append((t0, max(h0 - eps, Fraction(0))))
        if (h0 - eps) * (h1 - eps) < 0:
            lowered.append((t0 + (eps - h0) * (t1 - t0) / (h1 - h0), Fraction(0)))
    t_last, h_last = curve.breakpoints[-1]
    lowered.append((t_last, max(h_last - eps, Fraction(0))))
    return LandscapeCurve(tuple(lowered))


def flow(landscape: LandscapeSequence, eps: ScalarLike) -> LandscapeSequence:
    """Shift every curve down by eps and cut it off at zero."""
    eps = to_scalar(eps)
    if eps < 0:
        raise InvalidLandscapeError(f"flow parameter must be non-negative, got {eps}")
    if eps == 0:
        return landscape
    return LandscapeSequence(tuple(_lower_curve(curve, eps) for curve in landscape.curves))


def degree_at(landscape: Union[LandscapeSequence, Sequence[LandscapeCurve]],
              t: ScalarLike, h: ScalarLike) -> int:
    """Number of curves with a local maximum at (t, h) minus those with a local minimum.

    Args:
        landscape: the landscape sequence (or a raw list of curves)
        t: abscissa of the point
        h: height of the point, positive

    Returns:
        The degree of (t, h).
    """
    t, h = to_scalar(t), to_scalar(h)
    if h <= 0:
        raise InvalidLandscapeError(f"degree is only defined above height 0, got {h}")
    curves = landscape.curves if isinstance(landscape, LandscapeSequence) else landscape
    degree = 0
    for curve in curves:
        if curve(t) != h:
            continue
        slopes = curve.one_sided_slopes(t)
        if slopes == (1, -1):
            degree += 1
        elif slopes == (-1, 1):
            degree -= 1
    return degree


def critical_points(landscape: Union[LandscapeSequence, Sequence[LandscapeCurve]]) -> List[Breakpoint]:
    """All breakpoints of positive height, over every curve, without repetition."""
    curves = landscape.curves if isinstance(landscape, LandscapeSequence) else landscape
    return sorted({(t, h) for curve in curves for t, h in curve.breakpoints if h > 0})


def local_maxima_count(landscape: LandscapeSequence) -> int:
    return sum(len(curve.local_maxima()) for curve in landscape.curves)


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(self.violations)


def validate(landscape: Union[LandscapeSequence, Sequence[LandscapeCurve]]) -> ValidationReport:
    """Check a candidate stack of curves against the definition of a landscape sequence.

    1. every curve is a landscape curve (closed-off compact support, heights
       non-negative, slopes +1 or -1 wherever the curve is positive);
    2. the curves are ordered, lambda_k >= lambda_k+1;
    3. finitely many curves are non-zero (always true for a stored list);
    4. every critical point of positive height has non-negative degree.
    """
    curves, violations = [], []
    candidates = landscape.curves if isinstance(landscape, LandscapeSequence) else landscape
    for k, curve in enumerate(candidates, start=1):
        if isinstance(curve, LandscapeCurve):
            curves.append(curve)
            continue
        try:
            curves.append(LandscapeCurve(tuple(curve)))
        except InvalidLandscapeError as error:
            violations.append(f"curve {k}: {error}")
    if violations:
        # the stack checks need every curve
        return ValidationReport(tuple(violations))
    for k, curve in enumerate(curves, start=1):
        violations.extend(f"curve {k}: {problem}" for problem in curve.violations())
    for k, (upper, lower) in enumerate(pairwise(curves), start=1):
        for t in _merged_abscissas(upper, lower):
            if upper(t) < lower(t):
                violations.append(f"curves {k} and {k + 1} out of order at t={t}")
                break
    for t, h in critical_points(curves):
        degree = degree_at(curves, t, h)
        if degree < 0:
            violations.append(f"negative degree {degree} at ({t}, {h})")
    return ValidationReport(tuple(violations))


def _require_valid(landscape: LandscapeSequence):
    report = validate(landscape)
    if not report:
        raise InvalidLandscapeError(f"not a landscape sequence:\n{report}", report)


def invert_by_degree(landscape: LandscapeSequence) -> PersistenceDiagram:
    """The unique diagram whose landscape is the given one.

    Each positive-degree point (t, h) contributes the pair (t - h, t + h)
    with multiplicity equal to its degree.
    """
    _require_valid(landscape)
    pairs = []
    for t, h in critical_points(landscape):
        degree = degree_at(landscape, t, h)
        if degree > 0:
            pairs.append((BirthDeathPair(t - h, t + h), degree))
    return PersistenceDiagram(tuple(pairs))


def _leftmost_maximum(curve: LandscapeCurve) -> Breakpoint:
    maxima = curve.local_maxima()
    if not maxima:
        raise InvalidLandscapeError("first curve has no local maximum")
    return maxima[0]


def _leg_meeting(curve: LandscapeCurve, start: Fraction, end: Fraction) -> Optional[Fraction]:
    """First t >= start (and < end) where the curve climbs onto the line h = end - t."""
    for i, ((t0, h0), (t1, _)) in enumerate(curve.segments()):
        if curve._slope(i) != 1:
            continue
        t = (end - h0 + t0) / 2
        if t0 < t <= t1 and start <= t < end:
            return t
    return None


def _splice(left: LandscapeCurve, right: LandscapeCurve, x: Fraction) -> LandscapeCurve:
    if left(x) != right(x):
        raise InvalidLandscapeError(f"peeling splice is discontinuous at t={x}")
    points = [(t, h) for t, h in left.breakpoints if t < x]
    points.append((x, right(x)))
    points.extend((t, h) for t, h in right.breakpoints if t > x)
    return LandscapeCurve(tuple(points))


def peel_tent(landscape: LandscapeSequence) -> Tuple[BirthDeathPair, LandscapeSequence]:
    """Remove the tent at the leftmost local maximum of lambda_1.

    With (x1, y1) that maximum, x_i is where lambda_i climbs onto the falling
    leg of the tent, x_1 <= x_2 <= ... <= x_n, and x_j = x1 + y1 past n. The
    remainder is eta_k = lambda_k+1 left of x_k+1 and lambda_k from there on,
    so that lambda = tent(x1 - y1, x1 + y1) + eta.
    """
    x1, y1 = _leftmost_maximum(landscape.curve(1))
    end = x1 + y1
    meetings = [x1]
    for k in range(2, landscape.depth + 1):
        meeting = _leg_meeting(landscape.curve(k), meetings[-1], end)
        if meeting is None:
            break
        meetings.append(meeting)

    def x(j: int) -> Fraction:
        return meetings[j - 1] if j <= len(meetings) else end

    remainder = tuple(_splice(landscape.curve(k + 1), landscape.curve(k), x(k + 1))
                      for k in range(1, landscape.depth + 1))
    LOG.debug(f"peeled ({x1 - y1}, {end}); leg meets curves at {meetings}")
    return BirthDeathPair(x1 - y1, end), LandscapeSequence(remainder)


def invert_by_peeling(landscape: LandscapeSequence) -> PersistenceDiagram:
    """Recover the diagram by removing one tent at a time until nothing is left."""
    _require_valid(landscape)
    budget = local_maxima_count(landscape)
    pairs = []
    while landscape.depth:
        if budget <= 0:
            raise InvalidLandscapeError("peeling did not terminate")
        pair, landscape = peel_tent(landscape)
        pairs.append(pair)
        budget -= 1
    return PersistenceDiagram.from_points(pairs)
