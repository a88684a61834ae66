import json
import unittest
from io import StringIO
from os.path import exists, join
from tempfile import TemporaryDirectory
from unittest.mock import patch

from persistence_erosion import ErosionCLI
from persistence_erosion.persistence_helpers import verify
from persistence_erosion.persistence_helpers.diagram import PersistenceDiagram
from persistence_erosion.persistence_helpers.fileio import read_diagram
from persistence_erosion.persistence_helpers.metrics import birthzero_distance

FILES = {
    "fig1.dgm": "1 7\n3 8\n2 5 2\n9 10\n",
    "empty.dgm": "# nothing here\n",
    "crossing.dgm": "0 10\n1 11\n",
    "crossed.dgm": "0 11\n1 10\n",
    "single.dgm": "0 8\n",
    "split.dgm": "0 6\n2 8\n",
    "bad.dgm": "0 1\n3 2\n",
    "unordered.lsc": "1 0:0 1:1 2:0\n2 0:0 2:2 4:0\n",
    "two.metric": "2\n0 3\n3 0\n",
}


class TestErosionCLI(unittest.TestCase):
    def setUp(self):
        self.tmp = TemporaryDirectory()
        for name, text in FILES.items():
            with open(self.path(name), "w") as f:
                f.write(text)

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name: str) -> str:
        return join(self.tmp.name, name)

    def run_cli(self, *argv: str):
        out, err = StringIO(), StringIO()
        code = ErosionCLI(core_config={}, out=out, err=err).run(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_dist(self):
        self.assertEqual(self.run_cli("dist", self.path("fig1.dgm"), self.path("empty.dgm")), (0, "3\n", ""))
        code, out, _ = self.run_cli("dist", "--metric", "landscape", self.path("single.dgm"),
                                    self.path("split.dgm"))
        self.assertEqual(out, "2\n")
        code, out, _ = self.run_cli("--decimal", "2", "dist", "--metric", "bottleneck",
                                    self.path("crossing.dgm"), self.path("crossed.dgm"))
        self.assertEqual(out, "1.00\n")

    def test_dist_witness(self):
        code, out, _ = self.run_cli("dist", "--metric", "bottleneck", "--witness",
                                    self.path("single.dgm"), self.path("split.dgm"))
        lines = out.splitlines()
        self.assertEqual(code, 0)
        self.assertEqual(lines[0], "3")
        self.assertEqual(len(lines), 3)
        self.assertTrue(all(line.startswith("match ") for line in lines[1:]))
        # (0, 8) is too long to vanish, so one pair of the split diagram goes to the diagonal
        self.assertTrue(any(line.startswith("match diagonal -> ") for line in lines[1:]))

    def test_dist_birth_zero(self):
        code, out, _ = self.run_cli("dist", "--metric", "birthzero", self.path("single.dgm"),
                                    self.path("empty.dgm"))
        self.assertEqual((code, out), (0, "4\n"))
        code, out, _ = self.run_cli("dist", "--metric", "dv", self.path("single.dgm"),
                                    self.path("empty.dgm"))
        self.assertEqual((code, out), (0, "8\n"))
        code, _, err = self.run_cli("dist", "--metric", "birthzero", self.path("fig1.dgm"),
                                    self.path("empty.dgm"))
        self.assertEqual(code, 1)
        self.assertTrue(err.startswith("error:"))

    def test_input_errors(self):
        code, _, err = self.run_cli("dist", self.path("bad.dgm"), self.path("empty.dgm"))
        self.assertEqual(code, 1)
        self.assertIn("line 2:", err)
        code, _, err = self.run_cli("dist", self.path("missing.dgm"), self.path("empty.dgm"))
        self.assertEqual(code, 1)
        self.assertEqual(self.run_cli("dist")[0], 1)
        self.assertEqual(self.run_cli("no-such-command")[0], 1)

    def test_landscape_round_trip(self):
        output = self.path("fig1.lsc")
        self.assertEqual(self.run_cli("landscape-build", self.path("fig1.dgm"), "-o", output)[0], 0)
        for method in ("degree", "peeling"):
            code, out, _ = self.run_cli("landscape-invert", "--method", method, output)
            self.assertEqual((code, out), (0, "1 7\n2 5 2\n3 8\n9 10\n"))
        self.assertEqual(self.run_cli("landscape-validate", output), (0, "ok\n", ""))

    def test_landscape_build_stdout(self):
        code, out, _ = self.run_cli("landscape-build", self.path("single.dgm"))
        self.assertEqual((code, out), (0, "1 0:0 4:4 8:0\n"))

    def test_landscape_validate_rejects(self):
        code, out, _ = self.run_cli("landscape-validate", self.path("unordered.lsc"))
        self.assertEqual(code, 1)
        self.assertIn("out of order", out)
        code, _, err = self.run_cli("landscape-invert", self.path("unordered.lsc"))
        self.assertEqual(code, 1)
        self.assertIn("not a landscape sequence", err)

    def test_radius(self):
        self.assertEqual(self.run_cli("radius", self.path("fig1.dgm")), (0, "1/4\n", ""))
        self.assertEqual(self.run_cli("radius", self.path("empty.dgm"))[0], 1)

    def test_config_file(self):
        settings = self.path("settings.json")
        with open(settings, "w") as f:
            json.dump({"decimal_places": 1}, f)
        self.assertEqual(self.run_cli("--config", settings, "radius", self.path("fig1.dgm"))[1], "0.2\n")

    def test_embed(self):
        output = self.path("embedded")
        self.assertEqual(self.run_cli("embed", self.path("two.metric"), "-o", output)[0], 0)
        first, second = (read_diagram(join(output, f"point_{i}.dgm")) for i in (1, 2))
        self.assertEqual(birthzero_distance(first, second), 3)
        self.assertEqual(first, PersistenceDiagram.from_points([(0, 24), (0, 19)]))
        self.assertFalse(exists(join(output, "point_3.dgm")))

    def test_path_length(self):
        args = ("path-length", self.path("single.dgm"), self.path("split.dgm"))
        self.assertEqual(self.run_cli(*args, "--segments", "1")[1], "2\n")
        self.assertEqual(self.run_cli(*args, "--segments", "4")[1], "3\n")
        self.assertEqual(self.run_cli(*args, "--segments", "0")[0], 1)

    def test_gap_demo(self):
        expected = "# diagram\n0 8\n# other\n0 6\n2 8\nbottleneck 3\nerosion 2\n"
        self.assertEqual(self.run_cli("gap-demo"), (0, expected, ""))

    def test_verify(self):
        code, out, _ = self.run_cli("verify", "--cases", "3", "--suite", "birth_zero",
                                    "--suite", "embedding")
        self.assertEqual(code, 0)
        self.assertEqual(out, "PASS birth_zero (4 cases)\nPASS embedding (3 cases)\n")
        code, _, err = self.run_cli("verify", "--suite", "no_such_suite")
        self.assertEqual(code, 1)
        self.assertIn("unknown suite no_such_suite", err)

    def test_verify_failure(self):
        def failing(sampler, cases, config):
            verify.expect("empty diagram has positive length", lambda y: len(y) > 0,
                          PersistenceDiagram.from_points([]), shrink=False)
            return cases

        with patch.dict(verify.SUITES, {"failing": failing}):
            code, out, _ = self.run_cli("verify", "--cases", "1", "--suite", "failing")
        self.assertEqual(code, 2)
        self.assertTrue(out.startswith("FAIL failing: empty diagram has positive length\n"))
        self.assertIn("# diagram 1", out)

    def test_plot(self):
        landscape = self.path("fig1.lsc")
        self.run_cli("landscape-build", self.path("fig1.dgm"), "-o", landscape)
        svgs = []
        for name in ("a.svg", "b.svg"):
            self.assertEqual(self.run_cli("plot", landscape, "-o", self.path(name))[0], 0)
            with open(self.path(name)) as f:
                svgs.append(f.read())
        self.assertIn("<svg", svgs[0])
        self.assertEqual(svgs[0], svgs[1])
