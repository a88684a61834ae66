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
"""Interleaving distances induced by a coflow.

A coflow on a poset is a family of maps shrink(., eps) with shrink(x, 0) = x,
shrink(x, eps) <= x and shrink(shrink(x, a), b) = shrink(x, a + b). Two
elements are eps-interleaved when each one shrunk by eps lies below the
other; that condition is monotone in eps, so its infimum can be bracketed
by bisection.
"""
from fractions import Fraction
from typing import Callable, Tuple, TypeVar

from ovos_utils.log import LOG

from .landscape import LandscapeSequence, flow, landscape_leq
from .util import ScalarLike, to_scalar

T = TypeVar("T")


def interleaving_bracket(x: T, y: T,
                         shrink: Callable[[T, Fraction], T],
                         leq: Callable[[T, T], bool],
                         hi: ScalarLike, tol: ScalarLike) -> Tuple[Fraction, Fraction]:
    """Bracket inf{eps : leq(shrink(x, eps), y) and leq(shrink(y, eps), x)}.

    Args:
        x: first element
        y: second element
        shrink: the coflow
        leq: the poset order
        hi: an eps known to be feasible
        tol: maximum width of the returned interval, positive

    Returns:
        (lo, hi) with hi - lo <= tol, hi feasible and lo either 0 or infeasible.
    """
    tol, hi = to_scalar(tol), to_scalar(hi)
    if tol <= 0:
        raise ValueError(f"bisection tolerance must be positive, got {tol}")

    def feasible(eps: Fraction) -> bool:
        return leq(shrink(x, eps), y) and leq(shrink(y, eps), x)

    if not feasible(hi):
        raise ValueError(f"upper bound {hi} is not feasible")
    lo = Fraction(0)
    if feasible(lo):
        return lo, lo
    steps = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
        steps += 1
    LOG.debug(f"interleaving bracket [{lo}, {hi}] after {steps} bisection steps")
    return lo, hi


def landscape_interleaving(landscape: LandscapeSequence, other: LandscapeSequence,
                           tol: ScalarLike) -> Tuple[Fraction, Fraction]:
    """Interleaving distance of the flow coflow on landscapes, bracketed.

    This is the sup-norm distance: flowing by eps lowers every curve by eps.
    """
    peak = max((h for seq in (landscape, other) for curve in seq.curves
                for _, h in curve.breakpoints), default=Fraction(0))
    return interleaving_bracket(landscape, other, flow, landscape_leq, peak, tol)
