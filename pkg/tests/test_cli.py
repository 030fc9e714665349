"""Command-line interface: frozen output lines, exit codes, JSON shapes."""

import json

import pytest

from cuntzlab.cli import run

from conftest import fr, q

CUNTZ35 = {"family": "cuntz", "z": [["3/5", 0], ["4/5", 0]]}
WORD12 = {"family": "prefix_code", "n": 2, "code": [[1, 2]], "z": [1]}
WORD21 = {"family": "prefix_code", "n": 2, "code": [[2, 1]], "z": [1]}
SHIFT112 = {"family": "shift", "n": 2, "word": {"pre": [1], "per": [1, 2]}}
SANDWICH = {
    "family": "sandwich",
    "base": {"family": "cuntz", "z": [1, 0]},
    "terms": [[1, {"n": 2, "terms": [{"J": [2], "K": [], "re": 1, "im": 0}]}]],
}
GRID_STATE = {"family": "vector", "rep": {"kind": "grid", "n": 2}, "key": [1, 0]}
GRID_REP = {"kind": "grid", "n": 2}
SERIES = {"family": "sandwich_series"}


class TestCdim:
    def test_cuntz_line(self, spec_file, capsys):
        assert run(["cdim", spec_file(CUNTZ35)]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "cdim=1 (stabilized); levels 1, 1"
        assert out[1] == "pivot words: ()"

    def test_shift_line(self, spec_file, capsys):
        assert run(["cdim", spec_file(SHIFT112)]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "cdim=3 (stabilized); levels 1, 2, 3, 3"
        assert out[1] == "pivot words: (), 1, 11"

    def test_growing_state_reports_bound(self, spec_file, capsys):
        assert run(["cdim", spec_file(SERIES), "--max-level", "4"]) == 0
        out = capsys.readouterr().out
        assert "cdim>=13 (lower bound at level 4)" in out
        assert "levels 1, 3, 6, 9, 13" in out

    def test_json_shape(self, spec_file, capsys):
        assert run(["cdim", spec_file(CUNTZ35), "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["cdim"] == {
            "value": 1,
            "status": "stabilized",
            "levels": [1, 1],
            "pivot_words": [[]],
        }


class TestKappa:
    def test_minimal_certificate_line(self, spec_file, capsys):
        assert run(["kappa", spec_file(WORD12)]) == 0
        out = capsys.readouterr().out.splitlines()[0]
        assert out == "κ=2 (Minimal; u = s[12]); cdim 2 (stabilized)"

    def test_shift_period_line(self, spec_file, capsys):
        assert run(["kappa", spec_file(SHIFT112)]) == 0
        out = capsys.readouterr().out.splitlines()[0]
        assert out == "κ=2 (ShiftPeriod d=2); cdim 3 (stabilized)"

    def test_properly_infinite_line(self, spec_file, capsys):
        assert run(["kappa", spec_file(GRID_STATE)]) == 0
        out = capsys.readouterr().out.splitlines()[0]
        assert out == "κ=infinite (ProperlyInfinite, proved); cdim lower bound 9 at level 8"

    def test_unresolved_sandwich(self, spec_file, capsys):
        assert run(["kappa", spec_file(SANDWICH)]) == 0
        out = capsys.readouterr().out.splitlines()[0]
        assert out.startswith("κ=unresolved (LowerBoundOnly in [1, 2] at level 2")

    def test_strict_mode_fails_unresolved(self, spec_file, capsys):
        assert run(["kappa", spec_file(SANDWICH), "--strict"]) == 3

    def test_strict_mode_passes_resolved(self, spec_file):
        assert run(["kappa", spec_file(WORD12), "--strict"]) == 0

    def test_series_state_line(self, spec_file, capsys):
        assert run(["kappa", spec_file(SERIES)]) == 0
        out = capsys.readouterr().out.splitlines()[0]
        assert out.startswith("κ=1 (EquivalentToCuntz; z = (1, 0); provenance family)")
        assert "cdim lower bound" in out

    def test_json_certificate(self, spec_file, capsys):
        assert run(["kappa", spec_file(SHIFT112), "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kappa"] == {"value": 2, "certificate": "shift_period", "d": 2}
        assert doc["cdim"]["value"] == 3


class TestEquiv:
    def test_equivalent_pair(self, spec_file, capsys):
        assert run(["equiv", spec_file(WORD12), spec_file(WORD21)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("Equivalent (")
        assert "tail equivalent" in out

    def test_inequivalent_pair(self, spec_file, capsys):
        assert run(["equiv", spec_file(WORD12), spec_file(CUNTZ35)]) == 0
        assert capsys.readouterr().out.startswith("Inequivalent")

    def test_strict_unknown_fails(self, spec_file, capsys):
        mixture = {
            "family": "mixture",
            "components": [
                {"family": "cuntz", "z": [1, 0]},
                {"family": "cuntz", "z": [0, 1]},
            ],
            "weights": ["1/2", "1/2"],
        }
        code = run(["equiv", spec_file(WORD12), spec_file(mixture), "--strict"])
        assert code == 3


class TestPure:
    def test_pure_line(self, spec_file, capsys):
        assert run(["pure", spec_file(CUNTZ35)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("Pure (")

    def test_unknown_purity(self, spec_file, capsys):
        assert run(["pure", spec_file(WORD12)]) == 0
        assert capsys.readouterr().out.startswith("Unknown (")


class TestMoments:
    def test_table_header_and_values(self, spec_file, capsys):
        assert run(["moments", spec_file(CUNTZ35), "--level", "1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "moments omega(s_J s_K*) up to level 1 (n=2)"
        assert "| J | K | value |" in lines
        assert "| 1 | 2 | 12/25 |" in lines
        assert "| () | 1 | 3/5 |" in lines

    def test_json_moments(self, spec_file, capsys):
        assert run(["moments", spec_file(CUNTZ35), "--level", "1", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["n"] == 2
        assert doc["level"] == 1
        by_jk = {(tuple(m["J"]), tuple(m["K"])): m["value"] for m in doc["moments"]}
        assert by_jk[((1,), (2,))] == ["12/25", 0]
        assert by_jk[((), ())] == [1, 0]


class TestFcs:
    def test_json_presentation(self, spec_file, capsys):
        assert run(["fcs", spec_file(CUNTZ35), "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["d"] == 1
        assert doc["A"][0] == [[["3/5", 0]]]
        assert doc["A"][1] == [[["4/5", 0]]]
        assert doc["omega"] == [[1, 0]]
        assert doc["metric"] == [[[1, 0]]]


class TestRep:
    def test_grid_rep_summary(self, spec_file, capsys):
        assert run(["rep", spec_file(GRID_REP)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "κ=infinite (ProperlyInfinite, proved)"
        assert lines[1] == "endomorphism invariants: powers index 2, κ infinite"
        assert lines[2] == "spectrum bucket: infinite"


class TestReport:
    def test_single_state_json(self, spec_file, capsys):
        assert run(["report", spec_file(WORD12), "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["cdim"] == {"value": 2, "status": "stabilized", "levels": [1, 2, 2]}
        assert doc["kappa"]["value"] == 2
        assert doc["kappa"]["certificate"] == "minimal"
        assert doc["kappa"]["u"]["terms"][0]["J"] == [1, 2]
        assert doc["pure"] is None
        assert doc["bucket"] == 2

    def test_multi_state_pairwise(self, spec_file, capsys):
        assert run(["report", spec_file(WORD12), spec_file(WORD21)]) == 0
        out = capsys.readouterr().out
        assert "## pairwise equivalence" in out
        assert "Equivalent (" in out

    def test_multi_state_json(self, spec_file, capsys):
        assert (
            run(["report", spec_file(WORD12), spec_file(WORD21), "--format", "json"]) == 0
        )
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["states"]) == 2
        assert doc["pairwise"][0]["verdict"] == "Equivalent"


class TestErrors:
    def test_bad_norm_exit_one(self, spec_file, capsys):
        code = run(["cdim", spec_file({"family": "cuntz", "z": [1, 1]})])
        assert code == 1
        err = capsys.readouterr().err
        assert err.startswith("error: ")
        assert "squared norm 2" in err

    def test_missing_file_exit_one(self, capsys):
        assert run(["cdim", "/nonexistent.json"]) == 1
        assert "cannot read" in capsys.readouterr().err

    def test_inexact_float_gated(self, spec_file, capsys):
        path = spec_file({"family": "cuntz", "z": [0.6, 0.8]})
        assert run(["cdim", path]) == 1
        assert "--mode float" in capsys.readouterr().err
        assert run(["cdim", path, "--mode", "float"]) == 0


class TestSeedPlumbing:
    def test_seed_flag_accepted(self, spec_file, capsys):
        assert run(["cdim", spec_file(CUNTZ35), "--seed", "7"]) == 0
