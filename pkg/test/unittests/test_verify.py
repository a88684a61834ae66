import unittest

from persistence_erosion.persistence_helpers.config import ErosionConfig
from persistence_erosion.persistence_helpers.diagram import EMPTY_DIAGRAM, PersistenceDiagram
from persistence_erosion.persistence_helpers.util import PropertyViolation
from persistence_erosion.persistence_helpers.verify import (FIG1, SUITES, SuiteResult, expect,
                                                            render_counterexample, run_suites,
                                                            shrink_counterexample)


class TestCounterexamples(unittest.TestCase):
    def test_render(self):
        single = PersistenceDiagram.from_points([(0, 8)])
        self.assertEqual(render_counterexample([EMPTY_DIAGRAM, single], note="eps = 1"),
                         "# eps = 1\n# diagram 1\n# diagram 2\n0 8\n")

    def test_shrink(self):
        shrunk = shrink_counterexample([FIG1], lambda y: len(y) >= 2)
        self.assertEqual(len(shrunk), 1)
        self.assertEqual(len(shrunk[0]), 2)

    def test_shrink_stops_on_errors(self):
        def fails(y):
            if len(y) < 5:
                raise ValueError("too small")
            return True

        self.assertEqual(shrink_counterexample([FIG1], fails), [FIG1])

    def test_expect(self):
        expect("always holds", lambda y: True, FIG1)
        with self.assertRaises(PropertyViolation) as context:
            expect("never holds", lambda y: len(y) > 10, FIG1)
        self.assertEqual(context.exception.name, "never holds")
        # shrinking removes every pair
        self.assertEqual(context.exception.counterexample, "# diagram 1\n")


class TestSuites(unittest.TestCase):
    def test_result_text(self):
        self.assertEqual(str(SuiteResult("birth_zero", 4)), "PASS birth_zero (4 cases)")

    def test_registry(self):
        self.assertEqual(list(SUITES), [
            "main_theorem", "structure_round_trip", "decomposition", "coflow_equivariance",
            "order_preservation", "distance_gap", "local_isometry", "birth_zero", "embedding",
            "intrinsic_metric", "bottleneck_bruteforce", "rank_oracle",
        ])

    def test_all_suites_pass(self):
        seen = []
        config = ErosionConfig(core_config={}, settings={"cases": 3, "seed": 5})
        results = run_suites(config, on_result=seen.append)
        self.assertEqual([result.name for result in results], list(SUITES))
        self.assertEqual(seen, results)

    def test_other_seed(self):
        config = ErosionConfig(core_config={"persistence_erosion": {"cases": 10, "seed": 99}})
        results = run_suites(config, ["main_theorem", "order_preservation", "local_isometry"])
        self.assertEqual([result.cases for result in results], [10, 10, 10])

    def test_unknown_suite(self):
        with self.assertRaises(KeyError):
            run_suites(ErosionConfig(core_config={}), ["no_such_suite"])

    def test_local_isometry_default_seed(self):
        config = ErosionConfig(core_config={}, settings={"cases": 200})
        results = run_suites(config, ["local_isometry"])
        self.assertEqual(results, [SuiteResult("local_isometry", 200)])
