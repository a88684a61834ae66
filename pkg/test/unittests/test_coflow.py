import unittest
from fractions import Fraction

from persistence_erosion.persistence_helpers.coflow import (interleaving_bracket,
                                                            landscape_interleaving)
from persistence_erosion.persistence_helpers.diagram import (EMPTY_DIAGRAM, PersistenceDiagram,
                                                             diagram_leq, shrink_diagram)
from persistence_erosion.persistence_helpers.landscape import (EMPTY_LANDSCAPE, TentFunction,
                                                               build_landscape, sup_norm_dist)
from persistence_erosion.persistence_helpers.sampling import DiagramSampler

FIG1 = PersistenceDiagram.from_points([(1, 7), (3, 8), (2, 5), (2, 5), (9, 10)])


class TestInterleavingBracket(unittest.TestCase):
    def test_diagrams(self):
        lo, hi = interleaving_bracket(FIG1, EMPTY_DIAGRAM, shrink_diagram, diagram_leq, 4,
                                      Fraction(1, 32))
        self.assertLessEqual(hi - lo, Fraction(1, 32))
        self.assertLessEqual(lo, 3)
        self.assertLessEqual(3, hi)

    def test_feasible_at_zero(self):
        self.assertEqual(interleaving_bracket(FIG1, FIG1, shrink_diagram, diagram_leq, 4, 1), (0, 0))

    def test_rejects_bad_arguments(self):
        with self.assertRaises(ValueError):
            interleaving_bracket(FIG1, EMPTY_DIAGRAM, shrink_diagram, diagram_leq, 4, 0)
        with self.assertRaises(ValueError):
            interleaving_bracket(FIG1, EMPTY_DIAGRAM, shrink_diagram, diagram_leq, 1, Fraction(1, 4))


class TestLandscapeInterleaving(unittest.TestCase):
    def test_tent(self):
        lo, hi = landscape_interleaving(TentFunction(0, 2).sequence(), EMPTY_LANDSCAPE, Fraction(1, 8))
        self.assertTrue(lo <= 1 <= hi)

    def test_brackets_sup_norm(self):
        sampler = DiagramSampler(seed=41)
        tol = Fraction(1, 256)
        for _ in range(20):
            first, second = build_landscape(sampler.diagram()), build_landscape(sampler.diagram())
            lo, hi = landscape_interleaving(first, second, tol)
            self.assertLessEqual(hi - lo, tol)
            self.assertTrue(lo <= sup_norm_dist(first, second) <= hi)
