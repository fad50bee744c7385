import io
import json

import pytest

from tridle.catalog import catalog
from tridle.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out=out, err=err)
    return status, out.getvalue(), err.getvalue()


def test_delta_trefoil_text():
    status, out, _ = call("delta", "--catalog", "trefoil-left")
    assert status == 0
    assert "Delta = x^2*y^2 - x*y + 1" in out
    assert "xy-form: t^2 - t + 1" in out


def test_delta_trefoil_reports_one_plus_xy_cubed():
    # expects 1+(xy)^3; the gcd of the ten minors is smaller (see notes)
    status, out, _ = call("delta", "--catalog", "trefoil-left")
    assert "x^3*y^3 + 1" in out


def test_regions_kink():
    status, out, _ = call("regions", "--catalog", "unknot-1")
    assert status == 0
    assert out.startswith("3 regions")


def test_missing_file_is_usage_error():
    status, _, err = call("delta", "nosuchfile")
    assert status == 2
    assert "nosuchfile" in err


def test_unknown_verb_and_option():
    assert call("bogus")[0] == 2
    assert call("delta", "--catalog", "hopf", "--nope")[0] == 2


def test_domain_error_names_class():
    status, _, err = call("alexander", "--catalog", "hopf")
    assert status == 1
    assert "MultiComponent" in err
    status, _, err = call("delta", "--catalog", "no-such-knot")
    assert (status, "UnknownCatalogEntry" in err) == (1, True)


def test_input_file(tmp_path):
    path = tmp_path / "fig8.json"
    path.write_text(json.dumps(catalog("figure-eight").to_document()))
    status, out, _ = call("--format", "json", "delta", str(path))
    assert status == 0
    assert json.loads(out)["delta"] == "x^2*y^2 - 3*x*y + 1"
    pd = tmp_path / "trefoil.pd"
    pd.write_text("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n")
    assert call("validate", str(pd))[0] == 0
    bad = tmp_path / "bad.pd"
    bad.write_text("X(1,2,3)")
    status, _, err = call("validate", str(bad))
    assert status == 1 and "ArityError" in err


def test_structured_output_is_deterministic(monkeypatch):
    args = ("--format", "json", "fuzz", "--catalog", "trefoil-left", "--length", "6", "--seed", "4")
    first = call(*args)[1]
    monkeypatch.setenv("TRIDLE_WORKERS", "2")
    assert call(*args)[1] == first
    doc = json.loads(first)
    assert len(doc["steps"]) == 7 and doc["invariant"] is True
    assert set(doc["steps"][1]) == {"diagram", "move", "delta"}


def test_seed_environment_fallback(monkeypatch):
    base = call("fuzz", "--catalog", "hopf", "--length", "5", "--seed", "9")[1]
    monkeypatch.setenv("TRIDLE_SEED", "9")
    assert call("fuzz", "--catalog", "hopf", "--length", "5")[1] == base


def test_workers_flag_does_not_change_output():
    a = call("--format", "json", "delta", "--catalog", "6_1", "--workers", "1")[1]
    b = call("--format", "json", "delta", "--catalog", "6_1", "--workers", "2")[1]
    assert a == b


@pytest.mark.parametrize("fmt", ["text", "json", "structured", "latex"])
def test_matrix_formats(fmt):
    status, out, _ = call("--format", fmt, "matrix", "--catalog", "trefoil-left")
    assert status == 0 and out.strip()
    if fmt == "latex":
        assert out.startswith(r"\begin{array}")


def test_colorings_and_moves():
    assert call("colorings", "--catalog", "trefoil-left", "--prime", "3",
                "--x", "1", "--y", "2")[1].strip() == "27"
    status, out, _ = call("moves", "--catalog", "unknot-1")
    assert "R1_remove [0]" in out
    status, out, _ = call("--format", "json", "moves", "--catalog", "unknot-1", "--apply", "0")
    assert json.loads(out)["diagram"]["name"] == "unknot-0"
    assert call("moves", "--catalog", "unknot-1", "--apply", "99")[0] == 2


def test_tridle_verbs(tmp_path):
    assert "hold" in call("tridle-check", "--linear", "5,2,3")[1]
    status, out, _ = call("--format", "json", "tridle-check", "--affine", "3,1,1,1,2")
    assert json.loads(out)["report"]["r3_ok"] is False
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"k": 2, "f4": [0, 0, 0, 0, 0, 0, 0, 1]}))
    status, _, err = call("tridle-check", str(path))
    assert status == 1 and "NotSolvable" in err
    assert call("tridle-check")[0] == 2
    status, out, _ = call("tridle-enum", "--family", "general", "--k", "2")
    assert out.startswith("2 compliant")
    status, _, err = call("tridle-enum", "--family", "general", "--k", "3")
    assert status == 1 and "BudgetExceeded" in err


def test_catalog_verb():
    status, out, _ = call("catalog")
    assert out.split()[:2] == ["unknot-0", "unknot-1"]
    assert call("catalog", "--self-test")[0] == 0
    assert "2 component" in call("catalog", "hopf")[1]


def test_report_table():
    status, out, _ = call("--format", "json", "report", "--max-crossings", "5")
    rows = {r["name"]: r for r in json.loads(out)["rows"]}
    assert rows["trefoil-left"]["in_Z_xy"] is True
    assert rows["5_2"]["xy_form"] == "2*t^2 - 3*t + 2"
