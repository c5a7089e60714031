import io
import json
import subprocess
import sys

import pytest

from polc.automata import Dfa
from polc.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def machine_block(text):
    return json.loads(text.split("--- machine ---\n", 1)[1])


class TestDecide:
    def test_pol_st_yes(self):
        code, out, _ = call("decide", "--class", "st", "--level", "pol", "--regex", "(a|b)*a(a|b)*")
        assert code == 0 and out.startswith("pol(ST): yes")

    def test_expect_mismatch(self):
        code, out, _ = call("decide", "--class", "st", "--level", "upol", "--regex", "(a|b)*a(a|b)*", "--expect", "yes")
        assert code == 3 and "upol(ST): no" in out

    def test_expect_match(self):
        code, _, _ = call("decide", "--class", "at", "--level", "upol", "--regex", "(a|b)*a(a|b)*", "--expect", "yes")
        assert code == 0

    def test_violation_is_reported(self):
        code, out, _ = call("decide", "--class", "st", "--regex", "(ab)*", "--machine")
        assert code == 0 and "pol(ST): no" in out and "violation" in out
        assert machine_block(out)["violation"] == {"s": "", "t": "a"}

    def test_machine_is_deterministic(self):
        argv = ("decide", "--class", "at", "--level", "copol", "--regex", "a*b*", "--machine")
        assert call(*argv)[1] == call(*argv)[1]

    def test_dfa_input(self, tmp_path):
        f = tmp_path / "l.dfa"
        f.write_text(Dfa.from_regex("b*", "ab").to_text())
        code, out, _ = call("decide", "--class", "st", "--level", "copol", "--dfa", str(f))
        assert code == 0 and "copol(ST): yes" in out

    def test_lattice_class(self, tmp_path):
        (tmp_path / "g.dfa").write_text(Dfa.from_regex("b*", "ab").to_text())
        code, out, _ = call("decide", "--class", f"lattice:{tmp_path}", "--regex", "b*", "--alphabet", "ab")
        assert code == 0 and out.startswith(f"pol(lattice:{tmp_path}): yes")


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ("decide", "--class", "st", "--regex", "(a|b"),
            ("decide", "--class", "xx", "--regex", "a"),
            ("decide", "--class", "st", "--regex", "c", "--alphabet", "ab"),
            ("decide", "--class", "st", "--dfa", "/nonexistent.dfa"),
            ("decide", "--class", "st"),
            ("decide", "--class", "lattice:/nonexistent", "--regex", "a"),
            ("monoid", "--regex", "(ab)*", "--monoid-cap", "2"),
            ("forest", "--regex", "(ab)*", "--word", "abc"),
        ],
    )
    def test_exit_2(self, argv):
        code, _, err = call(*argv)
        assert code == 2

    def test_one_line_diagnostic(self):
        _, _, err = call("decide", "--class", "st", "--regex", "(a|b")
        assert err.startswith("error:") and err.count("\n") == 1


def test_monoid_golden():
    code, out, _ = call("monoid", "--regex", "(ab)*", "--machine")
    data = machine_block(out)
    assert code == 0
    assert len(data["elements"]) == 6 and data["omega"] == 2
    assert len(data["accepting"]) == 2 and len(data["idempotents"]) == 4
    data = machine_block(call("monoid", "--regex", "(a|b)*a(a|b)*", "--machine")[1])
    assert len(data["elements"]) == 2 and data["omega"] == 1


def test_pairs():
    code, out, _ = call("pairs", "--class", "at", "--regex", "(a|b)*a(a|b)*", "--machine")
    assert code == 0 and "FAILED" not in out
    assert out.rstrip().endswith("ε -> ε\na -> a")


def test_witness():
    code, out, _ = call("witness", "--class", "at", "--regex", "(a|b)*ab(a|b)*")
    assert code == 0 and "verified: yes" in out and "legend:" in out


def test_witness_negative():
    code, out, _ = call("witness", "--class", "st", "--regex", "(ab)*")
    assert code == 0 and "no witness" in out


def test_forest():
    code, out, _ = call("forest", "--regex", "(ab)*", "--word", "abababab", "--dump", "--class-independent")
    assert code == 0 and "valid: yes" in out and "idempotent" in out


def test_laws_pairs_seed_7():
    code, out, _ = call("laws", "--suite", "pairs", "--seed", "7")
    assert code == 0
    assert "reflexive" in out and "multiplicative" in out


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "polc.cli", "decide", "--class", "st", "--regex", "(a|b)*a(a|b)*"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("pol(ST): yes")
