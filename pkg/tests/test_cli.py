import json

import pytest

from prym6 import cli
from prym6.cli import main, run_checks


class TestVerify:
    def test_all_suites_pass(self, capsys):
        assert main(["verify", "--suite", "all"]) == 0
        out = capsys.readouterr().out
        report = json.loads(out)
        assert report["pass"] is True
        assert all(c["pass"] for c in report["checks"])

    def test_report_schema_and_ordering(self):
        report = run_checks("all")
        ids = [c["identifier"] for c in report["checks"]]
        assert ids == sorted(ids)
        assert len(ids) == len(set(ids))
        for c in report["checks"]:
            assert set(c) == {"identifier", "anchor", "expected", "computed",
                              "pass", "millis"}
            assert isinstance(c["expected"], list) and len(c["expected"]) == 2
            assert c["expected"][1] > 0  # denominators normalized positive
            assert c["pass"] == (c["expected"] == c["computed"])

    def test_single_suites(self):
        for suite in ("chow", "counts", "slope"):
            report = run_checks(suite)
            assert report["pass"], [c for c in report["checks"] if not c["pass"]]

    def test_key_values_present(self):
        report = run_checks("all")
        by_id = {c["identifier"]: c for c in report["checks"]}
        assert by_id["counts.singular_members"]["computed"] == [77, 1]
        assert by_id["counts.double_lines"]["computed"] == [32, 1]
        assert by_id["slope.full.bound"]["computed"] == [53, 10]
        assert by_id["slope.u4.bound"]["computed"] == [13, 2]
        assert by_id["chow.blowup.N4"]["computed"] == [-4, 1]

    def test_json_output_and_stability(self, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "--suite", "slope", "--json", str(p1)]) == 0
        assert main(["verify", "--suite", "slope", "--json", str(p2)]) == 0
        a = json.loads(p1.read_text())
        b = json.loads(p2.read_text())
        for ca, cb_ in zip(a["checks"], b["checks"]):
            ca.pop("millis")
            cb_.pop("millis")
        assert a == b

    def test_failure_exit_code(self, monkeypatch):
        from fractions import Fraction
        broken = cli.Check("broken.check", "injected failure",
                           Fraction(1), lambda: Fraction(2))
        monkeypatch.setitem(cli.SUITES, "chow", lambda: [broken])
        assert main(["verify", "--suite", "chow"]) == 1


class TestConstruct:
    def test_deterministic_json(self, tmp_path, capsys):
        p1, p2 = tmp_path / "i1.json", tmp_path / "i2.json"
        assert main(["construct", "--seed", "3", "--json", str(p1)]) == 0
        assert main(["construct", "--seed", "3", "--json", str(p2)]) == 0
        assert p1.read_bytes() == p2.read_bytes()
        data = json.loads(p1.read_text())
        assert data["format"] == "conic-bundle-instance-v1"
        assert len(data["certificates"]) == 4
        assert len(data["marked_lines"]) == 5

    def test_stdout_mode(self, capsys):
        assert main(["construct", "--seed", "4"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["seed"] == 4

    def test_seed_required(self):
        with pytest.raises(SystemExit):
            main(["construct"])


class TestSweep:
    def test_sweep_report(self, capsys):
        assert main(["sweep", "--seed", "7", "--samples", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["net_dimension"] == 3
        assert len(data["samples"]) == 2
        for s in data["samples"]:
            assert s["certified_nodes"] == 4
            assert len(s["sections"]) == 4

    def test_sweep_deterministic(self, capsys):
        assert main(["sweep", "--seed", "11", "--samples", "1"]) == 0
        first = capsys.readouterr().out
        assert main(["sweep", "--seed", "11", "--samples", "1"]) == 0
        assert capsys.readouterr().out == first
