import unittest
from fractions import Fraction
from os.path import join
from tempfile import TemporaryDirectory

from persistence_erosion.persistence_helpers.diagram import EMPTY_DIAGRAM, PersistenceDiagram
from persistence_erosion.persistence_helpers.fileio import (
    format_diagram,
    format_landscape,
    format_metric,
    parse_diagram,
    parse_landscape,
    parse_metric,
    read_diagram,
    read_landscape,
    read_metric,
    write_diagram,
    write_landscape,
)
from persistence_erosion.persistence_helpers.landscape import (EMPTY_LANDSCAPE, LandscapeCurve,
                                                               TentFunction, build_landscape,
                                                               invert_by_degree)
from persistence_erosion.persistence_helpers.metrics import FiniteMetric
from persistence_erosion.persistence_helpers.util import DiagramFormatError, InvalidMetricError

FIG1 = PersistenceDiagram.from_points([(1, 7), (3, 8), (2, 5), (2, 5), (9, 10)])


class TestDiagramFiles(unittest.TestCase):
    def test_canonical_text(self):
        self.assertEqual(format_diagram(FIG1), "1 7\n2 5 2\n3 8\n9 10\n")
        self.assertEqual(format_diagram(EMPTY_DIAGRAM), "")

    def test_fractions_and_rounding(self):
        diagram = PersistenceDiagram.from_points([(Fraction(1, 2), Fraction(3, 4))])
        self.assertEqual(format_diagram(diagram), "1/2 3/4\n")
        self.assertEqual(format_diagram(diagram, decimal_places=2), "0.50 0.75\n")

    def test_parse(self):
        text = "# five pairs\n9 10\n2 5 2   # repeated\n\n1 7\n3 8\n"
        self.assertEqual(parse_diagram(text), FIG1)
        self.assertEqual(parse_diagram("0.5 3/4\n"), PersistenceDiagram.from_points([("1/2", "3/4")]))
        self.assertEqual(parse_diagram(""), EMPTY_DIAGRAM)

    def test_parse_errors(self):
        cases = {
            "0 1\n1\n": 2,
            "0 1\n2 1\n": 2,
            "0 1 0\n": 1,
            "0 1 x\n": 1,
            "# header\na 1\n": 2,
            "1 1\n": 1,
        }
        for text, line_number in cases.items():
            with self.assertRaises(DiagramFormatError) as context:
                parse_diagram(text)
            self.assertEqual(context.exception.line_number, line_number)
            self.assertTrue(str(context.exception).startswith(f"line {line_number}:"))

    def test_files(self):
        with TemporaryDirectory() as tmp:
            path = join(tmp, "fig1.dgm")
            write_diagram(path, FIG1)
            self.assertEqual(read_diagram(path), FIG1)


class TestLandscapeFiles(unittest.TestCase):
    def test_format(self):
        self.assertEqual(format_landscape(TentFunction(0, 2).sequence()), "1 0:0 1:1 2:0\n")
        self.assertEqual(format_landscape(EMPTY_LANDSCAPE), "")
        self.assertEqual(format_landscape(TentFunction(0, 1).sequence(), decimal_places=1),
                         "1 0.0:0.0 0.5:0.5 1.0:0.0\n")

    def test_parse(self):
        landscape = parse_landscape("# tents\n1: 0:0 1:1 2:0\n3 0:0 1/2:1/2 1:0\n")
        self.assertEqual(landscape.depth, 3)
        self.assertTrue(landscape.curve(2).is_zero)
        self.assertEqual(landscape.curve(3), LandscapeCurve(((0, 0), (Fraction(1, 2), Fraction(1, 2)), (1, 0))))

    def test_parse_keeps_invalid_sequences(self):
        landscape = parse_landscape("1 0:0 1:1 2:0\n2 0:0 2:2 4:0\n")
        self.assertEqual(landscape.depth, 2)

    def test_parse_errors(self):
        cases = {
            "0 0:0 1:1 2:0\n": 1,
            "1 0:0 1:1 2:0\n1 0:0 1:1 2:0\n": 2,
            "1 0:0 1\n": 1,
            "1 1:0 0:1\n": 1,
            "x 0:0\n": 1,
            "1 0:0 a:1\n": 1,
        }
        for text, line_number in cases.items():
            with self.assertRaises(DiagramFormatError) as context:
                parse_landscape(text)
            self.assertEqual(context.exception.line_number, line_number)

    def test_round_trip_through_files(self):
        landscape = build_landscape(FIG1)
        with TemporaryDirectory() as tmp:
            path = join(tmp, "fig1.lsc")
            write_landscape(path, landscape)
            restored = read_landscape(path)
        self.assertEqual(restored, landscape)
        self.assertEqual(format_diagram(invert_by_degree(restored)), format_diagram(FIG1))


class TestMetricFiles(unittest.TestCase):
    def test_parse(self):
        metric = parse_metric("# two points\n2\n0 3\n3 0\n")
        self.assertEqual(metric, FiniteMetric(((0, 3), (3, 0))))
        self.assertEqual(format_metric(metric), "2\n0 3\n3 0\n")

    def test_parse_errors(self):
        cases = {
            "": None,
            "x\n": 1,
            "2\n0 3\n": 2,
            "2\n0 3\n3\n": 3,
            "1\nz\n": 2,
        }
        for text, line_number in cases.items():
            with self.assertRaises(DiagramFormatError) as context:
                parse_metric(text)
            self.assertEqual(context.exception.line_number, line_number)

    def test_axioms_checked(self):
        with self.assertRaises(InvalidMetricError):
            parse_metric("2\n0 3\n4 0\n")

    def test_read(self):
        with TemporaryDirectory() as tmp:
            path = join(tmp, "points.metric")
            with open(path, "w") as f:
                f.write("1\n0\n")
            self.assertEqual(read_metric(path).n, 1)
