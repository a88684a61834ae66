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
"""Utility functions and exceptions shared by the persistence helpers."""
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from itertools import islice
from typing import Iterable, List, Optional, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]


class DiagramFormatError(ValueError):
    """Raise when a diagram, landscape or metric file cannot be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class InvalidDiagramError(ValueError):
    """Raise when a diagram operation gets arguments outside its domain."""
    pass


class InvalidLandscapeError(ValueError):
    """Raise when a candidate landscape sequence fails validation."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InvalidMatchingError(ValueError):
    """Raise when a partial matching does not partition both diagrams."""
    pass


class InvalidMetricError(ValueError):
    """Raise when a distance matrix violates one of the metric axioms."""

    def __init__(self, axiom: str, detail: str = ""):
        message = f"{axiom} violated" + (f": {detail}" if detail else "")
        super().__init__(message)
        self.axiom = axiom


class OracleLimitError(ValueError):
    """Raise when a brute-force oracle is asked for an instance above its size guard."""
    pass


class PropertyViolation(AssertionError):
    """Raise when a verified property fails; carries a printable counterexample."""

    def __init__(self, name: str, counterexample: str):
        super().__init__(f"{name} violated\n{counterexample}")
        self.name = name
        self.counterexample = counterexample


def to_scalar(value: ScalarLike) -> Scalar:
    """Convert an int, a Fraction or a decimal / `p/q` literal to an exact Scalar.

    Floats are refused: a float has already lost the value it was meant to carry.

    Args:
        value: the value to convert

    Returns:
        The exact rational value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as error:
        raise ValueError(f"not a rational literal: {value!r}") from error


def format_scalar(value: Scalar, decimal_places: Optional[int] = None) -> str:
    """Render a Scalar as `p/q` (or an integer), or rounded to `decimal_places`.

    Rounding is half-even and happens only here, at the output boundary.
    """
    value = Fraction(value)
    if decimal_places is None:
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    with localcontext() as ctx:
        ctx.prec = max(28, len(str(abs(value.numerator))) + decimal_places + 2)
        exact = Decimal(value.numerator) / Decimal(value.denominator)
        quantum = Decimal(1).scaleb(-decimal_places)
        return str(exact.quantize(quantum, rounding=ROUND_HALF_EVEN))


def pairwise(items: Iterable) -> List[tuple]:
    """Consecutive pairs (a, b), (b, c), ... of an iterable."""
    items = list(items)
    return list(zip(items, islice(items, 1, None)))
