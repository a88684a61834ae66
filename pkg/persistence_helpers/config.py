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
"""Parse the core configuration and command line settings into tool options."""
from fractions import Fraction
from typing import Optional

from ovos_config import Configuration

from .util import to_scalar

CONFIG_SECTION = "persistence_erosion"

DEFAULT_TOLERANCE = Fraction(1, 2 ** 20)
DEFAULT_BRUTEFORCE_LIMIT = 12
DEFAULT_SEED = 0
DEFAULT_CASES = 100
DEFAULT_MAX_POINTS = 8
DEFAULT_COORDINATE_BOUND = 16
DEFAULT_DYADIC_DEPTH = 3
DEFAULT_SEGMENTS = 64
DEFAULT_SVG_WIDTH = 800
DEFAULT_SVG_HEIGHT = 400


class ErosionConfig:
    """Build an object representing the configuration values for the tool.

    Command line settings win over the `persistence_erosion` section of the
    core configuration, which wins over the built-in defaults.
    """

    def __init__(self, core_config: dict = None, settings: dict = None):
        self.core_config = core_config if core_config is not None else Configuration()
        self.settings = settings or {}

    @property
    def section(self) -> dict:
        return self.core_config.get(CONFIG_SECTION) or {}

    def _get(self, key: str, default=None):
        value = self.settings.get(key)
        if value is None:
            value = self.section.get(key)
        return default if value is None else value

    @property
    def decimal_places(self) -> Optional[int]:
        """Digits after the point for printed distances, None for exact `p/q`."""
        places = self._get("decimal_places")
        return None if places is None else int(places)

    @property
    def bisection_tolerance(self) -> Fraction:
        """Bracket width of the rank-condition bisection."""
        tolerance = self._get("bisection_tolerance", DEFAULT_TOLERANCE)
        if isinstance(tolerance, float):
            # JSON numbers arrive as floats; take their shortest decimal text
            tolerance = repr(tolerance)
        tolerance = to_scalar(tolerance)
        if tolerance <= 0:
            raise ValueError("bisection_tolerance must be positive")
        return tolerance

    @property
    def bruteforce_limit(self) -> int:
        return int(self._get("bruteforce_limit", DEFAULT_BRUTEFORCE_LIMIT))

    @property
    def seed(self) -> int:
        return int(self._get("seed", DEFAULT_SEED))

    @property
    def cases(self) -> int:
        return int(self._get("cases", DEFAULT_CASES))

    @property
    def max_points(self) -> int:
        return int(self._get("max_points", DEFAULT_MAX_POINTS))

    @property
    def coordinate_bound(self) -> int:
        return int(self._get("coordinate_bound", DEFAULT_COORDINATE_BOUND))

    @property
    def dyadic_depth(self) -> int:
        """Random coordinates are multiples of 2 ** -dyadic_depth."""
        return int(self._get("dyadic_depth", DEFAULT_DYADIC_DEPTH))

    @property
    def segments(self) -> int:
        return int(self._get("segments", DEFAULT_SEGMENTS))

    @property
    def svg_size(self) -> tuple:
        """Width and height of rendered plots, in points."""
        return (int(self._get("svg_width", DEFAULT_SVG_WIDTH)),
                int(self._get("svg_height", DEFAULT_SVG_HEIGHT)))
