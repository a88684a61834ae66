import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from persistence_erosion.persistence_helpers.diagram import (
    EMPTY_DIAGRAM,
    BirthDeathPair,
    PersistenceDiagram,
    RankQueryPoint,
    diagram_leq,
    erosion_feasible,
    in_open_ball,
    interpolate_matched,
    local_radius,
    rank_at,
    rank_test_points,
    shrink_diagram,
)
from persistence_erosion.persistence_helpers.metrics import PartialMatching
from persistence_erosion.persistence_helpers.oracles import rank_dominated_on_samples
from persistence_erosion.persistence_helpers.sampling import DiagramSampler
from persistence_erosion.persistence_helpers.util import (InvalidDiagramError,
                                                          InvalidMatchingError)

FIG1 = PersistenceDiagram.from_points([(1, 7), (3, 8), (2, 5), (2, 5), (9, 10)])
CROSSING = PersistenceDiagram.from_points([(0, 10), (1, 11)])
CROSSED = PersistenceDiagram.from_points([(0, 11), (1, 10)])

dyadic = st.integers(min_value=0, max_value=64).map(lambda n: Fraction(n, 4))
pairs = st.tuples(dyadic, dyadic).filter(lambda p: p[0] != p[1]).map(lambda p: (min(p), max(p)))
diagrams = st.lists(pairs, max_size=6).map(PersistenceDiagram.from_points)
epsilons = st.integers(min_value=0, max_value=24).map(lambda n: Fraction(n, 4))


class TestDiagramTypes(unittest.TestCase):
    def test_pair_above_diagonal(self):
        with self.assertRaises(InvalidDiagramError):
            BirthDeathPair(1, 1)
        with self.assertRaises(InvalidDiagramError):
            BirthDeathPair(2, 1)
        pair = BirthDeathPair(2, 5)
        self.assertEqual(pair.persistence, 3)
        self.assertEqual(pair.half_persistence, Fraction(3, 2))
        self.assertEqual(pair.midpoint, Fraction(7, 2))

    def test_pair_rejects_floats(self):
        with self.assertRaises(TypeError):
            BirthDeathPair(0.5, 1)

    def test_query_allows_diagonal(self):
        self.assertEqual(RankQueryPoint(3, 3).grow(1), RankQueryPoint(2, 4))
        with self.assertRaises(InvalidDiagramError):
            RankQueryPoint(4, 3)

    def test_canonical_multiset(self):
        shuffled = PersistenceDiagram.from_points([(9, 10), (2, 5), (3, 8), (1, 7), (2, 5)])
        self.assertEqual(shuffled, FIG1)
        self.assertEqual(len(FIG1), 5)
        self.assertEqual(FIG1.multiplicity((2, 5)), 2)
        self.assertEqual(FIG1.multiplicity((0, 1)), 0)
        merged = PersistenceDiagram(((BirthDeathPair(2, 5), 1), ((2, 5), 1), ((1, 7), 0)))
        self.assertEqual(merged, PersistenceDiagram.from_points([(2, 5), (2, 5)]))
        self.assertEqual(FIG1.births, [1, 2, 3, 9])
        self.assertEqual(FIG1.max_persistence, 6)
        self.assertFalse(EMPTY_DIAGRAM)

    def test_parses_literals(self):
        diagram = PersistenceDiagram.from_points([("1/2", "0.75")])
        self.assertEqual(diagram.points(), [BirthDeathPair(Fraction(1, 2), Fraction(3, 4))])


class TestRank(unittest.TestCase):
    def test_empty(self):
        self.assertEqual(rank_at(EMPTY_DIAGRAM, RankQueryPoint(0, 0)), 0)

    def test_five_pair_diagram(self):
        self.assertEqual(rank_at(FIG1, RankQueryPoint(3, 4)), 4)
        self.assertEqual(rank_at(FIG1, (1, 7)), 0)

    def test_half_open_containment(self):
        diagram = PersistenceDiagram.from_points([(0, 4)])
        self.assertEqual(rank_at(diagram, (0, 3)), 1)
        self.assertEqual(rank_at(diagram, (0, 4)), 0)

    def test_rejects_bad_query(self):
        with self.assertRaises(InvalidDiagramError):
            rank_at(FIG1, (4, 3))

    def test_order_reversing(self):
        sampler = DiagramSampler(seed=3)
        for _ in range(50):
            diagram = sampler.diagram()
            b, d = sorted((sampler.dyadic(), sampler.dyadic()))
            grow = sampler.eps()
            self.assertLessEqual(rank_at(diagram, RankQueryPoint(b, d).grow(grow)),
                                 rank_at(diagram, RankQueryPoint(b, d)))

    def test_shrink_matches_grown_query(self):
        sampler = DiagramSampler(seed=4)
        for _ in range(50):
            diagram, eps = sampler.diagram(), sampler.eps()
            shrunk = shrink_diagram(diagram, eps)
            for b, d in rank_test_points(diagram, shrunk):
                query = RankQueryPoint(b, d)
                self.assertEqual(rank_at(shrunk, query), rank_at(diagram, query.grow(eps)))


class TestShrink(unittest.TestCase):
    def test_identity(self):
        self.assertEqual(shrink_diagram(FIG1, 0), FIG1)

    def test_short_pairs_vanish(self):
        diagram = PersistenceDiagram.from_points([(0, 4), (1, 2)])
        expected = PersistenceDiagram.from_points([(Fraction(1, 2), Fraction(7, 2))])
        self.assertEqual(shrink_diagram(diagram, Fraction(1, 2)), expected)

    def test_everything_vanishes(self):
        self.assertEqual(shrink_diagram(FIG1, 3), EMPTY_DIAGRAM)

    def test_keeps_multiplicity(self):
        shrunk = shrink_diagram(FIG1, Fraction(1, 2))
        self.assertEqual(shrunk.multiplicity((Fraction(5, 2), Fraction(9, 2))), 2)

    def test_negative_eps(self):
        with self.assertRaises(InvalidDiagramError):
            shrink_diagram(FIG1, -1)

    @settings(max_examples=50, deadline=None)
    @given(diagrams, epsilons, epsilons)
    def test_coflow_axioms(self, diagram, first, second):
        self.assertTrue(diagram_leq(shrink_diagram(diagram, first), diagram))
        self.assertEqual(shrink_diagram(shrink_diagram(diagram, second), first),
                         shrink_diagram(diagram, first + second))


class TestOrder(unittest.TestCase):
    def test_reflexive_and_bottom(self):
        self.assertTrue(diagram_leq(FIG1, FIG1))
        self.assertTrue(diagram_leq(EMPTY_DIAGRAM, FIG1))
        self.assertFalse(diagram_leq(FIG1, EMPTY_DIAGRAM))

    def test_decided_on_test_points(self):
        sampler = DiagramSampler(seed=12)
        for _ in range(60):
            diagram, other = sampler.diagram(), sampler.diagram()
            pointwise = all(rank_at(diagram, RankQueryPoint(b, d)) <= rank_at(other, RankQueryPoint(b, d))
                            for b, d in rank_test_points(diagram, other))
            self.assertEqual(diagram_leq(diagram, other), pointwise)

    def test_multiplicity_counts(self):
        once = PersistenceDiagram.from_points([(2, 5)])
        twice = PersistenceDiagram.from_points([(2, 5), (2, 5)])
        self.assertTrue(diagram_leq(once, twice))
        self.assertFalse(diagram_leq(twice, once))

    def test_nested_pair(self):
        inner = PersistenceDiagram.from_points([(2, 3)])
        outer = PersistenceDiagram.from_points([(1, 4)])
        self.assertTrue(diagram_leq(inner, outer))
        self.assertFalse(diagram_leq(outer, inner))

    def test_matches_sampling(self):
        sampler = DiagramSampler(seed=5)
        for _ in range(60):
            diagram, other = sampler.diagram(), sampler.diagram()
            self.assertEqual(diagram_leq(diagram, other), rank_dominated_on_samples(diagram, other))
            shrunk = shrink_diagram(diagram, sampler.eps())
            self.assertTrue(diagram_leq(shrunk, diagram))
            self.assertTrue(rank_dominated_on_samples(shrunk, diagram))


class TestErosionFeasible(unittest.TestCase):
    def test_identity(self):
        self.assertTrue(erosion_feasible(FIG1, FIG1, 0))

    def test_crossing_pair(self):
        self.assertFalse(erosion_feasible(CROSSING, CROSSED, Fraction(1, 4)))
        self.assertFalse(erosion_feasible(CROSSING, CROSSED, Fraction(1, 2)))
        self.assertTrue(erosion_feasible(CROSSING, CROSSED, 1))

    def test_violation_witness(self):
        # shrinking the second diagram by 1/2 leaves a pair containing (1/2, 10)
        shrunk = shrink_diagram(CROSSED, Fraction(1, 2))
        self.assertEqual(rank_at(shrunk, (Fraction(1, 2), 10)), 1)
        self.assertEqual(rank_at(CROSSING, (Fraction(1, 2), 10)), 0)

    def test_monotone(self):
        sampler = DiagramSampler(seed=6)
        for _ in range(40):
            diagram, other = sampler.diagram(), sampler.diagram()
            low, high = sorted((sampler.eps(), sampler.eps()))
            if erosion_feasible(diagram, other, low):
                self.assertTrue(erosion_feasible(diagram, other, high))


class TestLocalRadius(unittest.TestCase):
    def test_single_pair(self):
        self.assertEqual(local_radius(PersistenceDiagram.from_points([(0, 4)])), 1)

    def test_five_pair_diagram(self):
        self.assertEqual(local_radius(FIG1), Fraction(1, 4))

    def test_repeated_pair(self):
        self.assertEqual(local_radius(PersistenceDiagram.from_points([(0, 2), (0, 2)])),
                         Fraction(1, 2))

    def test_empty(self):
        with self.assertRaises(InvalidDiagramError):
            local_radius(EMPTY_DIAGRAM)


class TestOpenBall(unittest.TestCase):
    def setUp(self):
        self.center = PersistenceDiagram.from_points([(0, 4)])

    def test_membership(self):
        self.assertTrue(in_open_ball(self.center, self.center, 1))
        self.assertTrue(in_open_ball(self.center, PersistenceDiagram.from_points([(Fraction(1, 2), 4)]), 1))
        with_noise = PersistenceDiagram.from_points([(0, 4), (5, 6)])
        self.assertTrue(in_open_ball(self.center, with_noise, 1))

    def test_non_membership(self):
        self.assertFalse(in_open_ball(self.center, EMPTY_DIAGRAM, 1))
        self.assertFalse(in_open_ball(self.center, PersistenceDiagram.from_points([(0, 4), (0, 4)]), 1))
        self.assertFalse(in_open_ball(self.center, PersistenceDiagram.from_points([(1, 4)]), 1))
        self.assertFalse(in_open_ball(self.center, PersistenceDiagram.from_points([(0, 4), (5, 7)]), 1))


class TestInterpolation(unittest.TestCase):
    def test_linear_midpoint(self):
        start = PersistenceDiagram.from_points([(0, 4)])
        end = PersistenceDiagram.from_points([(2, 6)])
        matching = PartialMatching(matched=((0, 0),))
        self.assertEqual(interpolate_matched(start, end, matching, Fraction(1, 2)),
                         PersistenceDiagram.from_points([(1, 5)]))
        self.assertEqual(interpolate_matched(start, end, matching, 0), start)
        self.assertEqual(interpolate_matched(start, end, matching, 1), end)

    def test_diagonal_moves(self):
        start = PersistenceDiagram.from_points([(0, 4)])
        end = PersistenceDiagram.from_points([(6, 8)])
        matching = PartialMatching(unmatched_left=(0,), unmatched_right=(0,))
        halfway = interpolate_matched(start, end, matching, Fraction(1, 2))
        self.assertEqual(halfway, PersistenceDiagram.from_points([(1, 3), (Fraction(13, 2), Fraction(15, 2))]))
        self.assertEqual(interpolate_matched(start, end, matching, 0), start)
        self.assertEqual(interpolate_matched(start, end, matching, 1), end)

    def test_rejects_bad_matching(self):
        start = PersistenceDiagram.from_points([(0, 4)])
        with self.assertRaises(InvalidMatchingError):
            interpolate_matched(start, start, PartialMatching(), Fraction(1, 2))
        with self.assertRaises(InvalidDiagramError):
            interpolate_matched(start, start, PartialMatching(matched=((0, 0),)), 2)
