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
"""Command line tool for exact distances between persistence diagrams

Computes bottleneck, erosion, landscape and birth-zero distances with exact
rational arithmetic, builds and inverts persistence landscapes, and runs the
property suites that check the identities relating them.

Exit codes: 0 on success, 1 for unreadable or invalid input, 2 when a
verified property fails.
"""
import json
import sys
from argparse import Namespace
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, TextIO

from ovos_utils.log import LOG

from .persistence_helpers import (
    CommandBuilder,
    ErosionConfig,
    PersistenceDiagram,
    PropertyViolation,
    birthzero_distance,
    bottleneck,
    build_landscape,
    command_handler,
    death_vectorization,
    dv_distance,
    embed_finite_metric,
    erosion,
    erosion_path_length,
    format_scalar,
    gap_example,
    invert_by_degree,
    invert_by_peeling,
    landscape_distance,
    local_radius,
    validate,
)
from .persistence_helpers.command import CommandParser, collect_handlers
from .persistence_helpers.fileio import (
    format_diagram,
    format_landscape,
    read_diagram,
    read_landscape,
    read_metric,
    write_diagram,
    write_landscape,
)

METRICS = ("bottleneck", "erosion", "landscape", "birthzero", "dv")
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_PROPERTY_VIOLATION = 2


class ErosionCLI:
    """Front end: one decorated handler per subcommand.

    Args:
        core_config: configuration dict, defaults to the ovos_config Configuration
        out: stream for results, defaults to stdout
        err: stream for error messages, defaults to stderr
    """

    def __init__(self, core_config: dict = None, out: TextIO = None, err: TextIO = None):
        self.core_config = core_config
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.config = ErosionConfig(core_config=core_config)
        self.handlers = collect_handlers(self)

    @property
    def parser(self) -> CommandParser:
        parser = CommandParser(prog="persistence-erosion",
                               description="Exact distances between persistence diagrams")
        parser.add_argument("--decimal", type=int, metavar="N",
                            help="print values rounded to N decimal places instead of p/q")
        parser.add_argument("--config", metavar="FILE",
                            help="JSON file with settings for the persistence_erosion section")
        parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
        subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
        for handler in self.handlers.values():
            handler.command.build(subparsers)
        return parser

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Parse argv, dispatch to the handler and map failures to exit codes."""
        try:
            args = self.parser.parse_args(argv)
            if args.verbose:
                LOG.set_level("DEBUG")
            self.config = self._load_config(args)
            return self.handlers[args.command](args) or EXIT_OK
        except PropertyViolation as violation:
            self._print(f"FAIL {violation.name}")
            self._print(violation.counterexample, end="")
            return EXIT_PROPERTY_VIOLATION
        except (ValueError, OSError) as error:
            LOG.debug(f"input error: {error!r}")
            print(f"error: {error}", file=self.err)
            return EXIT_INPUT_ERROR
        except Exception as error:
            LOG.exception("unexpected failure")
            print(f"error: {error}", file=self.err)
            return EXIT_INPUT_ERROR

    def _load_config(self, args: Namespace) -> ErosionConfig:
        settings = {}
        if args.config:
            settings.update(json.loads(Path(args.config).read_text()))
        for key in ("seed", "cases", "segments"):
            value = getattr(args, key, None)
            if value is not None:
                settings[key] = value
        if args.decimal is not None:
            settings["decimal_places"] = args.decimal
        return ErosionConfig(core_config=self.core_config, settings=settings)

    def _print(self, text: str = "", end: str = "\n"):
        print(text, file=self.out, end=end)

    def _scalar(self, value: Fraction) -> str:
        return format_scalar(value, self.config.decimal_places)

    def _pair(self, pair) -> str:
        return f"{self._scalar(pair.birth)} {self._scalar(pair.death)}"

    @command_handler(
        CommandBuilder("dist")
        .describe("distance between two diagrams")
        .optionally("--metric", choices=METRICS, default="erosion")
        .optionally("--witness", action="store_true", help="also print an optimal bottleneck matching")
        .require("diagram")
        .require("other"))
    def handle_dist(self, args: Namespace) -> int:
        """Print the requested distance between two diagram files.

        erosion and landscape print the same number: they are equal distances
        computed by the same landscape route.
        """
        diagram, other = read_diagram(args.diagram), read_diagram(args.other)
        if args.metric == "bottleneck":
            distance, matching = bottleneck(diagram, other)
            self._print(self._scalar(distance))
            if args.witness:
                self._print_matching(diagram, other, matching)
            return EXIT_OK
        if args.metric == "erosion":
            distance = erosion(diagram, other)
        elif args.metric == "landscape":
            distance = landscape_distance(diagram, other)
        elif args.metric == "birthzero":
            distance = birthzero_distance(diagram, other)
        else:
            distance = dv_distance(death_vectorization(diagram), death_vectorization(other))
        self._print(self._scalar(distance))
        return EXIT_OK

    def _print_matching(self, diagram: PersistenceDiagram, other: PersistenceDiagram, matching):
        start, end = diagram.points(), other.points()
        for i, j in matching.matched:
            self._print(f"match {self._pair(start[i])} -> {self._pair(end[j])}")
        for i in matching.unmatched_left:
            self._print(f"match {self._pair(start[i])} -> diagonal")
        for j in matching.unmatched_right:
            self._print(f"match diagonal -> {self._pair(end[j])}")

    @command_handler(
        CommandBuilder("landscape-build")
        .describe("persistence landscape of a diagram")
        .require("diagram")
        .optionally("-o", "--output", help="landscape file to write, stdout when omitted"))
    def handle_landscape_build(self, args: Namespace) -> int:
        landscape = build_landscape(read_diagram(args.diagram))
        if args.output:
            write_landscape(args.output, landscape)
            LOG.info(f"wrote {landscape.depth} curves to {args.output}")
        else:
            self._print(format_landscape(landscape, self.config.decimal_places), end="")
        return EXIT_OK

    @command_handler(
        CommandBuilder("landscape-invert")
        .describe("recover the diagram of a landscape")
        .require("landscape")
        .optionally("--method", choices=("degree", "peeling"), default="degree"))
    def handle_landscape_invert(self, args: Namespace) -> int:
        landscape = read_landscape(args.landscape)
        invert = invert_by_peeling if args.method == "peeling" else invert_by_degree
        self._print(format_diagram(invert(landscape), self.config.decimal_places), end="")
        return EXIT_OK

    @command_handler(
        CommandBuilder("landscape-validate")
        .describe("check a landscape file against the definition of a landscape sequence")
        .require("landscape"))
    def handle_landscape_validate(self, args: Namespace) -> int:
        report = validate(read_landscape(args.landscape))
        self._print(str(report))
        return EXIT_OK if report.ok else EXIT_INPUT_ERROR

    @command_handler(
        CommandBuilder("radius")
        .describe("radius below which bottleneck and erosion distance agree")
        .require("diagram"))
    def handle_radius(self, args: Namespace) -> int:
        self._print(self._scalar(local_radius(read_diagram(args.diagram))))
        return EXIT_OK

    @command_handler(
        CommandBuilder("embed")
        .describe("isometric embedding of a finite metric space into birth-zero diagrams")
        .require("metric")
        .optionally("-o", "--output", required=True, help="directory for point_<i>.dgm files"))
    def handle_embed(self, args: Namespace) -> int:
        diagrams = embed_finite_metric(read_metric(args.metric))
        directory = Path(args.output)
        directory.mkdir(parents=True, exist_ok=True)
        for i, diagram in enumerate(diagrams, start=1):
            write_diagram(directory / f"point_{i}.dgm", diagram)
        LOG.info(f"wrote {len(diagrams)} diagrams to {directory}")
        return EXIT_OK

    @command_handler(
        CommandBuilder("path-length")
        .describe("erosion length of the straight path along an optimal bottleneck matching")
        .require("diagram")
        .require("other")
        .optionally("--segments", type=int))
    def handle_path_length(self, args: Namespace) -> int:
        length = erosion_path_length(read_diagram(args.diagram), read_diagram(args.other),
                                     self.config.segments)
        self._print(self._scalar(length))
        return EXIT_OK

    @command_handler(
        CommandBuilder("gap-demo")
        .describe("a pair with erosion distance strictly below bottleneck distance"))
    def handle_gap_demo(self, args: Namespace) -> int:
        witness = gap_example()
        decimal_places = self.config.decimal_places
        self._print("# diagram")
        self._print(format_diagram(witness.diagram, decimal_places), end="")
        self._print("# other")
        self._print(format_diagram(witness.other, decimal_places), end="")
        self._print(f"bottleneck {self._scalar(witness.bottleneck)}")
        self._print(f"erosion {self._scalar(witness.erosion)}")
        return EXIT_OK

    @command_handler(
        CommandBuilder("verify")
        .describe("run the property suites")
        .optionally("--seed", type=int)
        .optionally("--cases", type=int)
        .optionally("--suite", action="append", dest="suites", metavar="NAME",
                    help="run only this suite, may be repeated"))
    def handle_verify(self, args: Namespace) -> int:
        # the suites pull in the brute-force oracles, so load them only here
        from .persistence_helpers.verify import SUITES, run_suites

        unknown = [name for name in args.suites or () if name not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        run_suites(self.config, args.suites, on_result=lambda result: self._print(str(result)))
        return EXIT_OK

    @command_handler(
        CommandBuilder("plot")
        .describe("render a landscape as SVG")
        .require("landscape")
        .optionally("-o", "--output", required=True, help="SVG file to write"))
    def handle_plot(self, args: Namespace) -> int:
        from .persistence_helpers.plot import render_landscape_svg

        render_landscape_svg(read_landscape(args.landscape), args.output, self.config.svg_size)
        return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the persistence-erosion console script."""
    return ErosionCLI().run(argv)
