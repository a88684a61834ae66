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
"""Property suites behind the `verify` command.

Each suite draws seeded random cases, checks one family of exact identities
and raises PropertyViolation with a shrunk counterexample on the first
failure. Suites are registered with the `suite` decorator and run in
registration order.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from ovos_utils.log import LOG

from .config import ErosionConfig
from .diagram import (PersistenceDiagram, diagram_leq, erosion_feasible, in_open_ball,
                      local_radius, shrink_diagram)
from .fileio import format_diagram
from .landscape import (build_landscape, direct_sum, flow, invert_by_degree,
                        invert_by_peeling, landscape_from_tents, landscape_leq,
                        sup_norm_dist, validate)
from .coflow import landscape_interleaving
from .metrics import (bottleneck, birthzero_distance, death_vectorization, dv_distance,
                      embed_finite_metric, erosion, erosion_direct, erosion_path_length,
                      gap_example, matching_cost)
from .oracles import GridSpec, bottleneck_bruteforce, rank_dominated_on_samples, rank_grid_check
from .sampling import DiagramSampler
from .util import PropertyViolation

FIG1 = PersistenceDiagram.from_points([(1, 7), (3, 8), (2, 5), (2, 5), (9, 10)])
CROSSING_PAIR = (PersistenceDiagram.from_points([(0, 10), (1, 11)]),
                 PersistenceDiagram.from_points([(0, 11), (1, 10)]))
TIGHTNESS_PAIR = (PersistenceDiagram.from_points([(0, 1)]),
                  PersistenceDiagram.from_points([(0, Fraction(1, 8))]))

SuiteFunction = Callable[[DiagramSampler, int, ErosionConfig], int]
SUITES: Dict[str, SuiteFunction] = {}


def suite(name: str):
    """Register a property suite under `name`."""

    def register(func: SuiteFunction) -> SuiteFunction:
        SUITES[name] = func
        return func

    return register


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int

    def __str__(self) -> str:
        return f"PASS {self.name} ({self.cases} cases)"


def render_counterexample(diagrams: Sequence[PersistenceDiagram], note: str = "") -> str:
    blocks = [f"# diagram {i}\n{format_diagram(diagram)}" for i, diagram in enumerate(diagrams, start=1)]
    if note:
        blocks.insert(0, "".join(f"# {line}\n" for line in note.splitlines()))
    return "".join(blocks)


def shrink_counterexample(diagrams: Sequence[PersistenceDiagram],
                          fails: Callable[..., bool]) -> List[PersistenceDiagram]:
    """Greedily drop pairs while the property keeps failing."""
    diagrams = list(diagrams)
    changed = True
    while changed:
        changed = False
        for index, diagram in enumerate(diagrams):
            for pair in diagram.points():
                smaller = list(diagram.points())
                smaller.remove(pair)
                candidate = diagrams[:index] + [PersistenceDiagram.from_points(smaller)] + diagrams[index + 1:]
                try:
                    still_fails = fails(*candidate)
                except ValueError:
                    still_fails = False
                if still_fails:
                    diagrams, changed = candidate, True
                    break
            if changed:
                break
    return diagrams


def expect(name: str, holds: Callable[..., bool], *diagrams: PersistenceDiagram,
           note: str = "", shrink: bool = True):
    """Raise PropertyViolation unless holds(*diagrams)."""
    if holds(*diagrams):
        return
    if shrink:
        diagrams = shrink_counterexample(diagrams, lambda *ds: not holds(*ds))
    raise PropertyViolation(name, render_counterexample(diagrams, note))


@suite("main_theorem")
def check_main_theorem(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    tol = config.bisection_tolerance

    def inside_bracket(a, b):
        lo, hi = erosion_direct(a, b, tol)
        return lo <= erosion(a, b) <= hi

    for _ in range(cases):
        expect("erosion equals landscape distance", inside_bracket, sampler.diagram(), sampler.diagram())
    return cases


@suite("structure_round_trip")
def check_structure(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    golden = build_landscape(FIG1)
    expect("four non-zero curves for the five-pair diagram",
           lambda y: build_landscape(y).depth == 4, FIG1, shrink=False)
    expect("inverse by degree of the five-pair diagram", lambda y: invert_by_degree(golden) == y, FIG1,
           shrink=False)
    expect("inverse by peeling of the five-pair diagram", lambda y: invert_by_peeling(golden) == y, FIG1,
           shrink=False)
    for _ in range(cases):
        diagram = sampler.diagram()
        expect("landscape passes validation", lambda y: validate(build_landscape(y)).ok, diagram)
        expect("inverse by degree recovers the diagram",
               lambda y: invert_by_degree(build_landscape(y)) == y, diagram)
        expect("inverse by peeling recovers the diagram",
               lambda y: invert_by_peeling(build_landscape(y)) == y, diagram)
    return cases + 1


@suite("decomposition")
def check_decomposition(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    expect("five-pair landscape is the sum of its tents",
           lambda y: landscape_from_tents(y.points()) == build_landscape(y), FIG1, shrink=False)
    for _ in range(cases):
        diagram, other = sampler.diagram(), sampler.diagram()
        expect("landscape is the direct sum of its tents",
               lambda y: landscape_from_tents(y.points()) == build_landscape(y), diagram)

        def commutes(a, b):
            la, lb = build_landscape(a), build_landscape(b)
            return direct_sum(la, lb) == direct_sum(lb, la)

        def stays_valid(a, b):
            return validate(direct_sum(build_landscape(a), build_landscape(b))).ok

        expect("direct sum commutes", commutes, diagram, other)
        expect("direct sum is a landscape sequence", stays_valid, diagram, other)
    return cases + 1


@suite("coflow_equivariance")
def check_coflows(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    for _ in range(cases):
        diagram = sampler.diagram()
        first, second = sampler.eps(), sampler.eps()
        note = f"eps1 = {first}, eps2 = {second}"
        expect("shrink by 0 is the identity", lambda y: shrink_diagram(y, 0) == y, diagram, note=note)
        expect("shrink lowers the diagram", lambda y: diagram_leq(shrink_diagram(y, first), y),
               diagram, note=note)
        expect("shrinks compose additively",
               lambda y: shrink_diagram(shrink_diagram(y, second), first) == shrink_diagram(y, first + second),
               diagram, note=note)
        expect("flow by 0 is the identity", lambda y: flow(build_landscape(y), 0) == build_landscape(y),
               diagram, note=note)
        expect("flow lowers the landscape",
               lambda y: landscape_leq(flow(build_landscape(y), first), build_landscape(y)),
               diagram, note=note)
        expect("flows compose additively",
               lambda y: flow(flow(build_landscape(y), second), first) == flow(build_landscape(y), first + second),
               diagram, note=note)
        expect("landscape of the shrunk diagram is the flowed landscape",
               lambda y: build_landscape(shrink_diagram(y, first)) == flow(build_landscape(y), first),
               diagram, note=note)
        other = sampler.diagram()

        def interleaving_brackets_sup_norm(a, b):
            la, lb = build_landscape(a), build_landscape(b)
            lo, hi = landscape_interleaving(la, lb, config.bisection_tolerance)
            return lo <= sup_norm_dist(la, lb) <= hi

        expect("flow interleaving is the sup-norm distance", interleaving_brackets_sup_norm,
               diagram, other)
    return cases


@suite("order_preservation")
def check_order(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    def agrees(a, b):
        return diagram_leq(a, b) == landscape_leq(build_landscape(a), build_landscape(b))

    def matches_sampling(a, b):
        return diagram_leq(a, b) == rank_dominated_on_samples(a, b)

    for _ in range(cases):
        diagram, other = sampler.diagram(), sampler.diagram()
        expect("diagram order matches landscape order", agrees, diagram, other)
        expect("diagram order matches rank sampling", matches_sampling, diagram, other)
        shrunk = shrink_diagram(diagram, sampler.eps())
        expect("shrunk diagram lies below, in both orders",
               lambda a, b: diagram_leq(a, b) and agrees(a, b), shrunk, diagram, shrink=False)
    return cases


@suite("distance_gap")
def check_gap(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    witness = gap_example()
    tol = config.bisection_tolerance

    def witness_holds(a, b):
        lo, hi = erosion_direct(a, b, tol)
        return (witness.bottleneck == bottleneck_bruteforce(a, b) == 3
                and witness.erosion == 2 and lo <= 2 <= hi)

    expect("strict gap witness", witness_holds, witness.diagram, witness.other, shrink=False)
    for _ in range(cases):
        expect("erosion is at most bottleneck",
               lambda a, b: erosion(a, b) <= bottleneck(a, b)[0], sampler.diagram(), sampler.diagram())
    return cases + 1


@suite("local_isometry")
def check_local_isometry(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    for _ in range(cases):
        diagram = sampler.diagram(min_points=1)
        radius = local_radius(diagram)
        note = f"radius = {radius}"

        def same_ball(a, b):
            in_bottleneck = bottleneck(a, b)[0] < radius
            return in_bottleneck == (erosion(a, b) < radius) == in_open_ball(a, b, radius)

        # a short-lived pair can rise above the leg of a longer tent, so the
        # two distances only coincide when nothing new is born
        moved = sampler.perturbation(diagram, spurious=0)
        expect("bottleneck equals erosion near a diagram",
               lambda a, b: bottleneck(a, b)[0] == erosion(a, b), diagram, moved, note=note, shrink=False)
        expect("open balls agree", same_ball, diagram, moved, note=note, shrink=False)
        near = sampler.perturbation(diagram)
        expect("open balls agree", same_ball, diagram, near, note=note, shrink=False)
        farther = sampler.perturbation(diagram, scale=2)
        expect("open balls agree", same_ball, diagram, farther, note=note, shrink=False)
    return cases


@suite("birth_zero")
def check_birth_zero(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    def closed_form_holds(a, b):
        return birthzero_distance(a, b) == bottleneck(a, b)[0] == erosion(a, b)

    def sandwiched(a, b):
        closed = birthzero_distance(a, b)
        vectorized = dv_distance(death_vectorization(a), death_vectorization(b))
        return closed <= vectorized <= 2 * closed

    def tight(a, b):
        return (birthzero_distance(a, b) == Fraction(1, 2)
                and dv_distance(death_vectorization(a), death_vectorization(b)) == Fraction(7, 8))

    expect("death vectorization tightness pair", tight, *TIGHTNESS_PAIR, shrink=False)
    for _ in range(cases):
        diagram, other = sampler.birth_zero_diagram(), sampler.birth_zero_diagram()
        expect("closed form equals bottleneck and erosion", closed_form_holds, diagram, other)
        expect("death vectorization is 2-bi-Lipschitz", sandwiched, diagram, other)
    return cases + 1


@suite("embedding")
def check_embedding(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    for _ in range(cases):
        metric = sampler.metric()
        diagrams = embed_finite_metric(metric)
        for i, a in enumerate(diagrams):
            for j, b in enumerate(diagrams):
                expect("embedding preserves distances",
                       lambda x, y: birthzero_distance(x, y) == metric.dist[i][j], a, b,
                       note=f"points {i + 1} and {j + 1} at distance {metric.dist[i][j]}", shrink=False)
    return cases


@suite("intrinsic_metric")
def check_intrinsic(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    witness = gap_example()
    pairs = [CROSSING_PAIR, (witness.diagram, witness.other)]
    for diagram, other in pairs:
        def converges(a, b):
            lengths = [erosion_path_length(a, b, 2 ** j) for j in range(7)]
            ordered = all(x <= y for x, y in zip(lengths, lengths[1:]))
            return ordered and lengths[0] == erosion(a, b) and lengths[-1] == bottleneck(a, b)[0]

        expect("path length converges to bottleneck", converges, diagram, other, shrink=False)
    return len(pairs)


@suite("bottleneck_bruteforce")
def check_bottleneck(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    limit = config.bruteforce_limit
    half = max(limit // 2, 1)

    def agrees(a, b):
        distance, matching = bottleneck(a, b)
        return (distance == bottleneck_bruteforce(a, b, limit)
                and matching_cost(a, b, matching) == distance == matching.cost)

    expect("crossing pair has bottleneck 1", lambda a, b: agrees(a, b) and bottleneck(a, b)[0] == 1,
           *CROSSING_PAIR, shrink=False)
    for _ in range(cases):
        diagram, other = sampler.diagram(max_points=half), sampler.diagram(max_points=half)
        expect("bottleneck matches enumeration", agrees, diagram, other)
    return cases + 1


@suite("rank_oracle")
def check_rank_oracle(sampler: DiagramSampler, cases: int, config: ErosionConfig) -> int:
    a, b = CROSSING_PAIR
    grid = GridSpec(-1, 12, Fraction(1, 4))
    expect("crossing pair refuted at eps = 1/4",
           lambda x, y: not rank_grid_check(x, y, Fraction(1, 4), grid)
           and not erosion_feasible(x, y, Fraction(1, 4)), a, b, shrink=False)
    for _ in range(cases):
        diagram, other, eps = sampler.diagram(), sampler.diagram(), sampler.eps()
        # every rank test point is a multiple of the resolution inside the coordinate range
        step = Fraction(1, sampler.resolution)
        fine = GridSpec.covering(*([(p.birth, p.death) for p in d.points()] for d in (diagram, other)),
                                 step=step, margin=step)
        expect("erosion feasibility matches the rank grid",
               lambda x, y: erosion_feasible(x, y, eps) == rank_grid_check(x, y, eps, fine),
               diagram, other, note=f"eps = {eps}")
    return cases + 1


def run_suites(config: ErosionConfig, names: Optional[Iterable[str]] = None,
               on_result: Optional[Callable[[SuiteResult], None]] = None) -> List[SuiteResult]:
    """Run the named suites (all by default) with the configured seed and case count.

    Raises:
        PropertyViolation: on the first failing property
        KeyError: unknown suite name
    """
    names = list(SUITES) if names is None else list(names)
    results = []
    for name in names:
        check = SUITES[name]
        sampler = DiagramSampler(config.seed, config.max_points, config.coordinate_bound,
                                 config.dyadic_depth)
        LOG.info(f"running {name} with {config.cases} cases")
        try:
            result = SuiteResult(name, check(sampler, config.cases, config))
        except PropertyViolation as violation:
            raise PropertyViolation(f"{name}: {violation.name}", violation.counterexample) from violation
        if not config.cases:
            LOG.warning(f"suite {name} ran without random cases")
        results.append(result)
        if on_result:
            on_result(result)
    return results
