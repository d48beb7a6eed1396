import json
from fractions import Fraction

import pytest

from coloredtl.cell import CellElement
from coloredtl.cli import UsageError, main, parse_polynomial
from coloredtl.ring import RationalFn
from coloredtl.twist import TwistFamily


@pytest.fixture
def run(capsys, tmp_path):
    def _run(*argv):
        code = main([*argv, "--cache-dir", str(tmp_path / "cache")])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def test_polynomial_parsing():
    p = parse_polynomial("1 + A + z")
    assert p.coeffs == {(0, 0): 1, (1, 0): 1, (0, 1): 1}
    q = parse_polynomial("A^2 - A - 1")
    assert q.coeffs == {(2, 0): 1, (1, 0): -1, (0, 0): -1}
    r = parse_polynomial("3/2 A^-1 z^2 - 2*A*z")
    assert r.coeffs == {(-1, 2): Fraction(3, 2), (1, 1): -2}
    for bad in ["", "1 + ", "A z + q", "2 3"]:
        with pytest.raises(UsageError):
            parse_polynomial(bad)


def test_basis(run):
    code, out, _ = run("basis", "--k", "3", "--i", "2")
    assert code == 0
    assert "weights of TL_(3,2): 0 2 4 6" in out
    assert "6: (2,4,6)" in out
    assert "dimension: 15" in out


def test_basis_json_round_trip(run):
    code, out, _ = run("basis", "--k", "3", "--i", "2", "--format", "json")
    data = json.loads(out)
    assert data["weights"] == [0, 2, 4, 6]
    assert data["sequences"]["6"] == [[2, 4, 6]]


def test_gram_json(run):
    code, out, _ = run("gram", "--k", "2", "--i", "1", "--format", "json")
    data = json.loads(out)
    norms = [RationalFn.from_json(e["norm"]) for e in data["diagonal"]]
    assert len(norms) == 2


def test_verify_cell(run):
    code, out, _ = run("verify-cell", "--k", "2", "--i", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(" PASS " in ln for ln in lines)


def test_jm(run):
    code, out, _ = run("jm", "--k", "3", "--i", "1")
    assert code == 0
    assert "(3,1) separating PASS" in out


def test_idempotents_round_trip(run):
    code, out, _ = run("idempotents", "--k", "2", "--i", "2", "--format", "json")
    data = json.loads(out)
    total = CellElement.zero(2, 2)
    for rec in data["central"].values():
        total = total + CellElement.from_records(2, 2, rec)
    assert total == CellElement.identity(2, 2)


def test_pair_power(run):
    code, out, _ = run("pair-power", "--k", "2", "--i", "1", "--m", "2", "--tangle", "s1", "--format", "json")
    assert code == 0
    assert RationalFn.from_json(json.loads(out)["value"])


def test_jones_twist_trefoil(run):
    code, out, _ = run("jones-twist", "--k", "2", "--i", "1", "--m", "1", "--format", "json")
    data = json.loads(out)
    assert data["writhe"] == 3
    fam = TwistFamily.from_json(data["family"])
    assert fam.jones(1).to_triples() == data["jones"]


def test_jones_needs_writhe_for_non_braid(run):
    code, _, err = run("jones-twist", "--tangle", "e(1)")
    assert code == 2
    assert "base-writhe" in err
    code, out, _ = run("jones-twist", "--tangle", "e(1)", "--base-writhe", "0")
    assert code == 0


def test_mahler(run):
    code, out, _ = run("mahler", "--poly", "A^2 - A - 1")
    assert abs(float(out) - 1.6180339887) < 1e-9
    code, out, _ = run("mahler", "--poly", "1 + A + z", "--grid", "256", "--format", "json")
    data = json.loads(out)
    assert data["method"] == "jensen" and abs(data["value"] - 1.3813564) < 1e-4


def test_lawton_csv(run):
    code, out, _ = run("lawton", "--poly", "1 + A + z", "--dmax", "6", "--grid", "64")
    lines = out.strip().splitlines()
    assert lines[0] == "d,value" and len(lines) == 7


def test_twist_converge_csv(run):
    code, out, _ = run("twist-converge", "--k", "2", "--i", "1", "--mmax", "20", "--grid", "128")
    lines = out.strip().splitlines()
    assert lines[0] == "m,value,delta_prev"
    assert len(lines) == 21


def test_errors_exit_nonzero(run):
    code, _, err = run("basis", "--k", "0")
    assert code == 2 and "error" in err
    code, _, err = run("pair-power", "--tangle", "s1 ^-1")
    assert code == 2 and "column 4" in err
    code, _, err = run("jones-twist", "--tangle", "s2")
    assert code == 2


def test_deterministic(run):
    a = run("twist-converge", "--k", "2", "--i", "2", "--mmax", "12", "--grid", "64", "--format", "json")
    b = run("twist-converge", "--k", "2", "--i", "2", "--mmax", "12", "--grid", "64", "--format", "json")
    assert a == b


def test_no_cache_flag(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("COLOREDTL_CACHE_DIR", str(tmp_path / "env"))
    assert main(["basis", "--k", "2", "--no-cache"]) == 0
    assert not (tmp_path / "env").exists()
