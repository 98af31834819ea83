import json
import os
from fractions import Fraction

import pytest

from matchcover.cli import dispatch
from matchcover import serialize as ser
from matchcover.cover import Covering, GroundSet
from matchcover.folner import Coloring, build_certificate
from matchcover.groups import FreeGroup, IntegerLattice, cyclic_group
from matchcover.means import uniform
from matchcover.ramsey import FinMetric


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def covering_file(tmp_path):
    return write(
        tmp_path / "cover.json",
        {"ground": ["a", "b", "c", "d"], "blocks": [["a", "b"], ["b", "c"], ["c", "d"]]},
    )


class TestRoundTrips:
    def test_covering(self):
        cov = Covering(GroundSet(["a", "b"]), [["a"], ["a", "b"]])
        assert ser.covering_from_json(ser.covering_to_json(cov)) == cov

    def test_covering_with_group_atoms(self):
        z = IntegerLattice(1)
        cov = Covering(GroundSet([(0,), (1,)]), [[(0,), (1,)]])
        doc = ser.covering_to_json(cov, z)
        assert ser.covering_from_json(doc, z) == cov

    def test_graph_and_witness(self):
        from matchcover.bipartite import BipartiteGraph, MatchingWitness

        g = BipartiteGraph(("x", "y"), ("u",), frozenset({(0, 0)}))
        assert ser.graph_from_json(ser.graph_to_json(g)) == g
        w = MatchingWitness(((0, 0),))
        assert ser.witness_from_json(ser.witness_to_json(w)) == w

    def test_mean(self):
        f2 = FreeGroup(2)
        nu = uniform(f2, [(), (1,), (2, -1)])
        assert ser.mean_from_json(ser.mean_to_json(nu), f2) == nu

    def test_finmetric(self):
        m = FinMetric.build(["p", "q"], [["0", "1/2"], ["1/2", "0"]])
        assert ser.finmetric_from_json(ser.finmetric_to_json(m)) == m

    def test_coloring(self):
        z = IntegerLattice(1)
        col = Coloring(GroundSet([(0,), (1,), (2,)]), (0, 2, 1), 2)
        doc = ser.coloring_to_json(col, z)
        assert ser.coloring_from_json(doc, z) == col

    def test_action(self):
        from matchcover.groups import action_from_json, rotation_action

        act = rotation_action(4)
        again = action_from_json(act.describe())
        assert again.describe() == act.describe()

    def test_certificate(self):
        z = IntegerLattice(1)
        ground = GroundSet([(i,) for i in range(-1, 11)])
        cover = Covering(
            ground,
            [[(i,) for i in range(-1, 11) if i % 2 == 0],
             [(i,) for i in range(-1, 11) if i % 2 == 1]],
        )
        cert = build_certificate(
            z, [(i,) for i in range(10)], [(1,)], cover, Fraction(9, 10)
        )
        doc = ser.certificate_to_json(cert)
        again = ser.certificate_from_json(doc)
        assert ser.certificate_to_json(again) == doc

    def test_rational_strings_never_floats(self):
        with pytest.raises(ValueError):
            ser.frac_parse(0.5)


class TestCoverCommands:
    def test_refines(self, tmp_path, covering_file, capsys):
        fine = write(
            tmp_path / "fine.json",
            {"ground": ["a", "b", "c", "d"], "blocks": [["a"], ["b"], ["c"], ["d"]]},
        )
        assert dispatch(["cover", "refines", "--coarse", covering_file, "--fine", fine]) == 0
        assert "refines" in capsys.readouterr().out

    def test_join_writes_file(self, tmp_path, covering_file):
        out = tmp_path / "joined.json"
        code = dispatch(
            ["cover", "join", "--u", covering_file, "--v", covering_file, "--out", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["ground"] == ["a", "b", "c", "d"]

    def test_star(self, tmp_path, covering_file, capsys):
        assert dispatch(["cover", "star", "--u", covering_file, "-n", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert ["a", "b", "c"] in doc["blocks"]

    def test_missing_file_is_usage_error(self, tmp_path):
        assert dispatch(["cover", "star", "--u", str(tmp_path / "nope.json")]) == 2


class TestMuAndMatch:
    def test_mu_command(self, tmp_path, covering_file, capsys):
        left = write(tmp_path / "left.json", ["a", "b"])
        right = write(tmp_path / "right.json", ["b", "c"])
        code = dispatch(
            ["mu", "--cover", covering_file, "--left", left, "--right", right, "--json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["mu"] == 2

    def test_match_with_deficiency(self, tmp_path, capsys):
        graph = write(
            tmp_path / "graph.json",
            {"left": ["a", "b", "c"], "right": ["1", "2"], "edges": [[0, 0], [1, 0], [2, 1]]},
        )
        code = dispatch(["match", "--graph", graph, "--deficiency", "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["size"] == 2
        assert doc["deficiency"] == 1
        assert doc["deficiency_witness"] == ["a", "b"]


class TestFolnerCommands:
    def run_search(self, tmp_path, theta="9/10", radius="10"):
        out = tmp_path / "cert.json"
        code = dispatch(
            [
                "folner", "search",
                "--group", "zd1",
                "--coloring", "parity",
                "--e", "1;-1",
                "--theta", theta,
                "--max-radius", radius,
                "--out", str(out),
            ]
        )
        return code, out

    def test_search_pass_and_check(self, tmp_path):
        code, out = self.run_search(tmp_path)
        assert code == 0
        assert dispatch(["folner", "check", str(out)]) == 0
        assert dispatch(["verify", str(out)]) == 0

    def test_tampered_certificate_fails_verify(self, tmp_path):
        code, out = self.run_search(tmp_path)
        doc = json.loads(out.read_text())
        doc["pairs"][0]["witness"]["pairs"][0][1] = (
            doc["pairs"][0]["witness"]["pairs"][1][1]
        )
        out.write_text(json.dumps(doc))
        assert dispatch(["verify", str(out)]) == 1

    def test_window_escape_is_exit_two(self, tmp_path):
        code, out = self.run_search(tmp_path)
        doc = json.loads(out.read_text())
        # drop a window element referenced by a translate
        doc["cover"]["ground"] = doc["cover"]["ground"][1:]
        doc["cover"]["blocks"] = [
            [a for a in b if a in doc["cover"]["ground"]] for b in doc["cover"]["blocks"]
        ]
        out.write_text(json.dumps(doc))
        assert dispatch(["verify", str(out)]) == 2

    def test_search_exhausted_exit_one(self, tmp_path):
        out = tmp_path / "report.json"
        code = dispatch(
            [
                "folner", "search",
                "--group", "free2",
                "--coloring", "first-letter",
                "--e", "a;A;b;B",
                "--theta", "9/10",
                "--max-radius", "3",
                "--out", str(out),
            ]
        )
        assert code == 1
        doc = json.loads(out.read_text())
        assert doc["schema"] == "folner-exhausted/1"
        assert dispatch(["verify", str(out)]) == 0
        doc["best_ratio"] = "1/1"
        out.write_text(json.dumps(doc))
        assert dispatch(["verify", str(out)]) == 1

    def test_adversary(self, tmp_path, capsys):
        code = dispatch(
            [
                "folner", "adversary",
                "--group", "free2",
                "--f", "1;a;A;b;B",
                "--e", "a",
                "--colors", "1",
                "--strategy", "local",
                "--budget", "400",
                "--json",
            ]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert Fraction(doc["min_ratio"]) <= 1

    def test_net(self, tmp_path, capsys):
        group = write(tmp_path / "z6.json", cyclic_group(6).describe())
        code = dispatch(
            ["folner", "net", "--group", group, "--u", "0;1", "--json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["v"] == ["0", "1"]
        assert doc["f"] == ["0", "2", "4"]
        assert doc["minimal"] is True

    def test_mono_found_and_not_found(self, tmp_path):
        window = write(tmp_path / "win.json", [str(i) for i in range(-5, 6)])
        blocks = [[str(i), str(i + 1)] for i in range(-5, 5)]
        cover = write(
            tmp_path / "cover.json",
            {"ground": [str(i) for i in range(-5, 6)], "blocks": blocks},
        )
        assert (
            dispatch(
                ["folner", "mono", "--group", "zd1", "--window", window,
                 "--cover", cover, "--e", "0;1"]
            )
            == 0
        )
        singletons = write(
            tmp_path / "singles.json",
            {"ground": [str(i) for i in range(-5, 6)],
             "blocks": [[str(i)] for i in range(-5, 6)]},
        )
        assert (
            dispatch(
                ["folner", "mono", "--group", "zd1", "--window", window,
                 "--cover", singletons, "--e", "0;1"]
            )
            == 1
        )


class TestMeansCommands:
    def test_convolve(self, tmp_path, capsys):
        a = write(tmp_path / "a.json", {"weights": {"-1": "1/2", "1": "1/2"}})
        code = dispatch(
            ["means", "convolve", "--group", "zd1", "--a", a, "--b", a, "--json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["weights"] == {"-2": "1/4", "0": "1/2", "2": "1/4"}

    def test_rationalize(self, tmp_path, capsys):
        alpha = write(tmp_path / "alpha.json", {"weights": {"x": "1/3", "y": "2/3"}})
        code = dispatch(
            ["means", "rationalize", "--alpha", alpha, "--theta", "1/100", "--json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert sum(doc["gamma"].values()) == doc["n"]


class TestRamseyCommand:
    def metrics(self, tmp_path):
        a = write(tmp_path / "a.json", {"points": ["p"], "dist": [["0"]]})
        b = write(
            tmp_path / "b.json",
            {"points": ["x", "y"], "dist": [["0", "1"], ["1", "0"]]},
        )
        c = write(
            tmp_path / "c.json",
            {
                "points": ["c0", "c1", "c2", "c3"],
                "dist": [
                    ["0", "1", "2", "3"],
                    ["1", "0", "1", "2"],
                    ["2", "1", "0", "1"],
                    ["3", "2", "1", "0"],
                ],
            },
        )
        return a, b, c

    def test_check_and_verify(self, tmp_path):
        a, b, c = self.metrics(tmp_path)
        out = tmp_path / "ramsey.json"
        code = dispatch(
            [
                "ramsey", "check", "--a", a, "--b", b, "--c", c,
                "--colors", "1", "--eps", "1/2", "--out", str(out),
            ]
        )
        assert code == 0
        assert dispatch(["verify", str(out)]) == 0

    def test_tampered_family_fails(self, tmp_path):
        a, b, c = self.metrics(tmp_path)
        out = tmp_path / "ramsey.json"
        dispatch(
            [
                "ramsey", "check", "--a", a, "--b", b, "--c", c,
                "--colors", "1", "--eps", "1/2", "--out", str(out),
            ]
        )
        doc = json.loads(out.read_text())
        # replace one witness family by a mismatched pair of directions
        doc["witnesses"][5]["family"] = [0]
        doc["witnesses"][5]["coloring"] = [0, 1, 0, 1]
        out.write_text(json.dumps(doc))
        assert dispatch(["verify", str(out)]) == 1


class TestSweep:
    def test_csv_written(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = dispatch(
            [
                "sweep", "--group", "zd2", "--theta-grid", "1/2:3/4:1/8",
                "--max-radius", "3", "--out", str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().strip().splitlines()
        header = lines[0].split(",")
        assert "min_ratio" in header and "min_ratio_decimal_lossy" in header
        assert len(lines) == 1 + 3 * 4  # three thetas, radii 0..3

    def test_decimal_grid(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = dispatch(
            [
                "sweep", "--group", "zd1", "--theta-grid", "0.5:0.95:0.05",
                "--max-radius", "2", "--out", str(out),
            ]
        )
        assert code == 0
        rows = out.read_text().strip().splitlines()[1:]
        assert rows[0].split(",")[0] == "1/2"


class TestExitCodes:
    def test_unknown_schema(self, tmp_path):
        bad = write(tmp_path / "bad.json", {"schema": "mystery/9"})
        assert dispatch(["verify", bad]) == 2

    def test_usage_error(self):
        assert dispatch(["folner", "search", "--group", "zd1"]) == 2

    def test_bad_theta(self, tmp_path):
        assert (
            dispatch(
                ["folner", "search", "--group", "zd1", "--coloring", "parity",
                 "--e", "1", "--theta", "nonsense"]
            )
            == 2
        )


class TestRealProcess:
    def test_module_entrypoint_replays_bit_identically(self, tmp_path):
        import subprocess
        import sys

        env = dict(os.environ, SOURCE_DATE_EPOCH="1690000000")
        argv = [
            sys.executable, "-m", "matchcover",
            "folner", "search", "--group", "zd1", "--coloring", "parity",
            "--e", "1", "--theta", "4/5", "--max-radius", "6",
            "--out", "cert.json",
        ]
        blobs = []
        for name in ("one", "two"):
            run_dir = tmp_path / name
            run_dir.mkdir()
            proc = subprocess.run(argv, cwd=run_dir, env=env, capture_output=True)
            assert proc.returncode == 0, proc.stderr
            check = subprocess.run(
                [sys.executable, "-m", "matchcover", "verify", "cert.json"],
                cwd=run_dir, env=env, capture_output=True,
            )
            assert check.returncode == 0, check.stderr
            blobs.append((run_dir / "cert.json").read_bytes())
        assert blobs[0] == blobs[1]
