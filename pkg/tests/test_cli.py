import io
import json
import subprocess
import sys

import pytest

from nccr.cli import SCHEMA, jsonable, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_mu_tau_example():
    doc = call_json("mu-tau", "--vars", "x,y,z,t", "--poly", "x*y-(z-t^2)*(z-t^3)*(z-t^4)")
    assert doc["schema"] == SCHEMA and doc["command"] == "mu-tau"
    assert doc["result"] == {"milnor": 12, "tyurina": 11, "quasi_homogeneous": False}
    assert doc["certificates"]["standard_basis"]["milnor"]["method"] == "truncated"


def test_non_isolated_germ_reports_infinite():
    doc = call_json("mu-tau", "--vars", "x,y", "--poly", "x^2")
    assert doc["result"]["milnor"] == "infinite"
    assert doc["result"]["quasi_homogeneous"] == "undetermined"


def test_conifold_quiver_example():
    doc = call_json("quiver", "--weights", "1,1,-1,-1")
    r = doc["result"]
    assert r["vertices"] == 2 and r["arrow_count"] == 4
    assert r["toric_relations"] == ["Y11*Y22-Y12*Y21"]
    assert sorted((a["from"], a["to"]) for a in r["arrows"]) == [(0, 1), (0, 1), (1, 0), (1, 0)]
    assert doc["certificates"]["truncation"] == 8
    assert call_json("invariants", "quiver", "--weights", "1,1,-1,-1")["result"] == r


def test_dp5_cone_check_example():
    doc = call_json("delpezzo", "cone-check", "--surface", "dP5", "--L", "anticanonical",
                    "--collection", "naive")
    t = doc["result"]["tilting"]
    assert t["verdict"] is False
    assert any(w["i"] == 1 and w["j"] == 1 and w["class"] == "H-E2-E3-E4-E5" for w in t["witnesses"])
    assert doc["result"]["crepancy"]["verdict"] is True
    assert doc["certificates"]["tilting_sweep_bound"] >= 1


@pytest.mark.parametrize("argv", [
    ["mu-tau", "--vars", "x,y,z,t", "--poly", "x*y-(z-t^2)*(z-t^3)*(z-t^4)"],
    ["invariants", "covariant", "--weights", "2,1,-1,-2", "--a", "1"],
    ["delpezzo", "tilting-check", "--surface", "dP6"],
    ["groebner", "resolve", "--vars", "x,y,z", "--gens", "x*y;y*z;x*z"],
])
def test_byte_stable_output(argv):
    first, second = call(*argv), call(*argv)
    assert first[0] == 0 and first == second


def test_timing_only_on_request():
    assert "timing_ms" not in call_json("delpezzo", "surface", "--surface", "P2")
    doc = call_json("--timing", "delpezzo", "surface", "--surface", "P2")
    assert doc["timing_ms"] >= 0


def test_format_before_and_after_subcommand():
    a = call("--format", "text", "delpezzo", "cohomology", "--surface", "P2", "--D", "1")
    b = call("delpezzo", "cohomology", "--surface", "P2", "--D", "1", "--format", "text")
    assert a == b and a[0] == 0
    assert "h0: 3" in a[1].replace("  ", "")


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["invariants", "hilbert-basis"],
    ["invariants", "hilbert-basis", "--weights", "2,2,-2,-2"],
    ["invariants", "gorenstein", "--weights", "2,1,-1,-1"],
    ["invariants", "hilbert-basis", "--weights", "1,x,-1"],
    ["mu-tau", "--vars", "x,y", "--poly", "x^2+y^2+1"],
    ["mu-tau", "--vars", "x,y", "--poly", "x^2+w"],
    ["delpezzo", "surface", "--surface", "dP9"],
    ["delpezzo", "cone-props", "--surface", "dP2", "--L", "1,0,0"],
    ["delpezzo", "euler", "--surface", "P2", "--E", "O(1)", "--F", "O(1,2)"],
])
def test_usage_and_input_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert "usage: nccr" in err


def test_cap_exceeded_exits_3():
    code, out, err = call("invariants", "hilbert-basis", "--weights", "1,1,1,1,-1,-1,-1,-1")
    assert code == 3 and out == "" and "cap" in err


def test_false_verdict_still_exits_0():
    doc = call_json("invariants", "cm-sweep", "--weights", "1,1,-1,-1", "--extra", "1")
    verdicts = {row["a"]: row["cm"] for row in doc["result"]["sweep"]}
    assert verdicts[0] and verdicts[1] and verdicts[-1]
    assert not verdicts[2] and not verdicts[-2]
    assert doc["result"]["all_cm_in_open_range"] is True


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nccr", "delpezzo", "surface", "--surface", "P1xP1"],
                          capture_output=True, text=True, check=True)
    doc = json.loads(proc.stdout)
    assert doc["result"]["minus_one_class_count"] == 0


def test_jsonable_conventions():
    from fractions import Fraction
    import math
    assert jsonable([Fraction(3, 1), Fraction(-1, 2), math.inf, (1, 2)]) == [3, "-1/2", "infinite", [1, 2]]
