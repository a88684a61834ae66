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
"""Text formats.

Diagrams (`.dgm`): one pair per line, ``birth death [multiplicity]``.
Landscapes (`.lsc`): one curve per line, ``k t:h t:h ...`` with k from 1.
Metrics (`.metric`): the size n on the first line, then n rows of n entries.

Values are decimal or ``p/q`` literals. ``#`` starts a comment and blank
lines are skipped in all three formats.
"""
from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

from .diagram import BirthDeathPair, PersistenceDiagram
from .landscape import LandscapeCurve, LandscapeSequence
from .metrics import FiniteMetric
from .util import (DiagramFormatError, InvalidDiagramError, InvalidLandscapeError,
                   format_scalar, to_scalar)

PathLike = Union[str, Path]


def _records(text: str) -> Iterator[Tuple[int, List[str]]]:
    for line_number, line in enumerate(text.splitlines(), start=1):
        fields = line.split("#", 1)[0].split()
        if fields:
            yield line_number, fields


def _scalar(field: str, line_number: int) -> Fraction:
    try:
        return to_scalar(field)
    except ValueError:
        raise DiagramFormatError(f"not a rational number: {field!r}", line_number)


def parse_diagram(text: str) -> PersistenceDiagram:
    pairs = []
    for line_number, fields in _records(text):
        if len(fields) not in (2, 3):
            raise DiagramFormatError(f"expected 'birth death [multiplicity]', got {len(fields)} fields",
                                     line_number)
        birth, death = (_scalar(field, line_number) for field in fields[:2])
        multiplicity = 1
        if len(fields) == 3:
            if not fields[2].isdigit() or int(fields[2]) < 1:
                raise DiagramFormatError(f"multiplicity must be a positive integer, got {fields[2]!r}",
                                         line_number)
            multiplicity = int(fields[2])
        try:
            pairs.append((BirthDeathPair(birth, death), multiplicity))
        except InvalidDiagramError as error:
            raise DiagramFormatError(str(error), line_number)
    return PersistenceDiagram(tuple(pairs))


def format_diagram(diagram: PersistenceDiagram, decimal_places: Optional[int] = None) -> str:
    lines = []
    for pair, multiplicity in diagram.pairs:
        fields = [format_scalar(pair.birth, decimal_places), format_scalar(pair.death, decimal_places)]
        if multiplicity > 1:
            fields.append(str(multiplicity))
        lines.append(" ".join(fields))
    return "".join(line + "\n" for line in lines)


def parse_landscape(text: str) -> LandscapeSequence:
    """Parse a landscape file. Curves that are not listed are zero.

    Only the syntax and the ordering of abscissas are checked here; whether
    the curves form a landscape sequence is for `validate` to say.
    """
    curves = {}
    for line_number, fields in _records(text):
        index = fields[0].rstrip(":")
        if not index.isdigit() or int(index) < 1:
            raise DiagramFormatError(f"curve index must be a positive integer, got {fields[0]!r}",
                                     line_number)
        if int(index) in curves:
            raise DiagramFormatError(f"curve {index} listed twice", line_number)
        breakpoints = []
        for field in fields[1:]:
            t, sep, h = field.partition(":")
            if not sep:
                raise DiagramFormatError(f"breakpoint must be 't:h', got {field!r}", line_number)
            breakpoints.append((_scalar(t, line_number), _scalar(h, line_number)))
        try:
            curves[int(index)] = LandscapeCurve(tuple(breakpoints))
        except InvalidLandscapeError as error:
            raise DiagramFormatError(str(error), line_number)
    depth = max(curves, default=0)
    return LandscapeSequence(tuple(curves.get(k, LandscapeCurve()) for k in range(1, depth + 1)))


def format_landscape(landscape: LandscapeSequence, decimal_places: Optional[int] = None) -> str:
    lines = []
    for k, curve in enumerate(landscape.curves, start=1):
        points = " ".join(f"{format_scalar(t, decimal_places)}:{format_scalar(h, decimal_places)}"
                          for t, h in curve.breakpoints)
        lines.append(f"{k} {points}".rstrip())
    return "".join(line + "\n" for line in lines)


def parse_metric(text: str) -> FiniteMetric:
    records = list(_records(text))
    if not records:
        raise DiagramFormatError("empty metric file")
    line_number, fields = records[0]
    if len(fields) != 1 or not fields[0].isdigit():
        raise DiagramFormatError(f"first line must hold the number of points, got {' '.join(fields)!r}",
                                 line_number)
    n = int(fields[0])
    rows = records[1:]
    if len(rows) != n:
        raise DiagramFormatError(f"expected {n} rows, found {len(rows)}",
                                 rows[-1][0] if rows else line_number)
    matrix = []
    for line_number, fields in rows:
        if len(fields) != n:
            raise DiagramFormatError(f"expected {n} entries, got {len(fields)}", line_number)
        matrix.append(tuple(_scalar(field, line_number) for field in fields))
    return FiniteMetric(tuple(matrix))


def format_metric(metric: FiniteMetric) -> str:
    rows = [" ".join(format_scalar(value) for value in row) for row in metric.dist]
    return "".join(line + "\n" for line in [str(metric.n)] + rows)


def read_diagram(path: PathLike) -> PersistenceDiagram:
    return parse_diagram(Path(path).read_text())


def write_diagram(path: PathLike, diagram: PersistenceDiagram):
    Path(path).write_text(format_diagram(diagram))


def read_landscape(path: PathLike) -> LandscapeSequence:
    return parse_landscape(Path(path).read_text())


def write_landscape(path: PathLike, landscape: LandscapeSequence):
    Path(path).write_text(format_landscape(landscape))


def read_metric(path: PathLike) -> FiniteMetric:
    return parse_metric(Path(path).read_text())
