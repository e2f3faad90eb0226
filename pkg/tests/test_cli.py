import csv
import io
import json
from fractions import Fraction

import pytest

from cbiharmonic import cli


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


def test_classify_hypersphere():
    doc = run_json("classify", "hypersphere", "--m-max", "4")
    assert list(doc)[:2] == ["command", "parameters"]
    rows = doc["results"]["solutions"]
    non_geo = {(r["m"], r["root"]["exact"]) for r in rows if not r["geodesic"]}
    assert non_geo == {(1, "1/2"), (2, "1/3"), (3, "1/2"), (4, "3/4")}
    assert sum(r["geodesic"] for r in rows) == 4


def test_classify_clifford_pair():
    doc = run_json("classify", "clifford", "--m1", "1", "--m2", "2")
    (row,) = doc["results"]["solutions"]
    lo, hi = Fraction(row["root"]["lo"]), Fraction(row["root"]["hi"])
    assert hi - lo < Fraction(1, 10**10)
    assert float(row["residual_bound"]) < 1e-10
    assert doc["results"]["certificates"][0]["polynomial"] == [-3, 20, -63, 54]


def test_classify_product_empty():
    doc = run_json("classify", "hyperbolic", "--family", "product", "--m", "7")
    assert doc["results"]["solutions"] == []
    assert all(c["roots"] == 0 for c in doc["results"]["certificates"])


@pytest.mark.parametrize("m,index,nullity", [(6, 8, 28), (1, 0, 3)])
def test_stability_equator(m, index, nullity):
    doc = run_json("stability", "equator", "--m", str(m))
    assert (doc["results"]["index"], doc["results"]["nullity"]) == (index, nullity)
    assert "J*" in doc["results"]["truncation"]


def test_stability_hypersphere():
    doc = run_json("stability", "hypersphere", "--m", "4", "--r2", "3/4")
    res = doc["results"]
    assert (res["index"], res["nullity"]) == (1, 20)
    s0 = res["breakdown"][0]["s0"]
    assert s0 == {"exact": "-64/3", "decimal": "-21.3333333333333"}
    j1 = res["breakdown"][1]
    assert j1["a"]["exact"] == j1["b"]["exact"] == j1["d_sq"]["exact"] == "0"


def test_stability_exploratory_warning(capsys):
    code, text = run("stability", "hypersphere", "--m", "3", "--r2", "1/3")
    assert code == 0
    assert json.loads(text)["results"]["variational"] is False
    assert "not c-biharmonic" in capsys.readouterr().err


def test_energy_curve_csv():
    code, text = run("energy-curve", "--m", "4", "--samples", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["t"] for r in rows] == ["-1", "-0.5", "0", "0.5", "1"]
    assert [r["critical"] for r in rows] == ["0", "1", "1", "1", "0"]


def test_residual_hypersphere_nonzero():
    doc = run_json("residual", "hypersphere", "--m", "3", "--r2", "1/3")
    assert doc["results"]["is_c_biharmonic"] is False
    assert doc["results"]["c_bitension_coeff"]["exact"] != "0"
    assert doc["results"]["cmc_residual"] == doc["results"]["c_bitension_coeff"]


def test_residual_float_mode_tolerance(monkeypatch):
    monkeypatch.setenv("CBIHARMONIC_TOL", "1e-6")
    doc = run_json("residual", "hypersphere", "--m", "2", "--r", "0.57735")
    assert doc["mode"] == "float"
    assert float(doc["tolerances"]["zero_test"]) == 1e-6


def test_bad_tolerance_env(monkeypatch):
    monkeypatch.setenv("CBIHARMONIC_TOL", "-1")
    assert run("residual", "hypersphere", "--m", "2", "--r2", "1/3")[0] == 2


def test_verify_conformal():
    doc = run_json("verify", "conformal", "--m", "4")
    assert doc["results"]["passed"] is True and len(doc["results"]["configs"]) >= 6


@pytest.mark.parametrize("suite", ["ode", "crosscheck"])
def test_verify_other_suites(suite):
    assert run_json("verify", suite)["results"]["passed"] is True


def test_numeric_failure_exit(monkeypatch):
    monkeypatch.setattr(cli, "verify_ode", lambda: {"checks": [], "passed": False})
    assert run("verify", "ode")[0] == cli.EXIT_NUMERIC == 3


@pytest.mark.parametrize("argv", [
    ["stability", "hypersphere", "--m", "2", "--r2", "2"],
    ["frobnicate"],
    ["classify", "hypersphere"],
    ["residual", "hypersphere", "--r2", "1/3"],
    ["residual", "hypersphere", "--m", "2", "--r2", "1/3", "--r", "1"],
    ["classify", "hyperbolic", "--family", "product", "--m", "4", "--k", "9"],
    ["residual", "product", "--m", "4", "--k", "4", "--r2", "1"],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_determinism():
    for argv in (["classify", "clifford", "--m-max", "5"], ["stability", "hypersphere", "--m", "2", "--r2", "1/3"],
                 ["verify", "conformal", "--m", "3"]):
        assert run(*argv) == run(*argv)


def _residual_args(family, row):
    root = row["root"]
    value = root["exact"] if root["kind"] == "exact" else root["midpoint"]
    if family == "clifford":
        return ["residual", "clifford", "--m1", str(row["m1"]), "--m2", str(row["m2"]), "--t", value]
    if family == "hypersphere":
        return ["residual", "hypersphere", "--m", str(row["m"]), "--r2", value]
    if family == "product":
        return ["residual", "product", "--m", str(row["m"]), "--k", str(row["k"]), "--r2", value]
    return ["residual", family, "--m", str(row["m"]), "--r2", value]


@pytest.mark.parametrize("argv", [
    ["classify", "hypersphere", "--m-max", "6"],
    ["classify", "clifford", "--m-max", "6"],
    ["classify", "hyperbolic", "--family", "equidistant", "--m-max", "9"],
    ["classify", "hyperbolic", "--family", "product", "--m-max", "10"],
])
def test_round_trip(argv):
    doc = run_json(*argv)
    family = doc["results"]["family"]
    rows = doc["results"]["solutions"]
    assert rows
    for row in rows:
        if row["geodesic"] and family == "equidistant":
            continue
        res = run_json(*_residual_args(family, row))["results"]
        coeff = abs(float(res["c_bitension_coeff"]["decimal"]))
        bound = float(row.get("residual_bound", 0))
        if row["root"]["kind"] == "exact":
            assert res["is_c_biharmonic"] is True
        else:
            assert coeff <= bound
