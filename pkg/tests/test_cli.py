from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from solvco.cli import main

N3 = {"kind": "generalized_nakamura", "name": "N3", "weights": [["1"], ["-1"]]}
N22 = {"kind": "product", "name": "N22", "n": 1, "m": 1}


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def go(args, desc=None):
        if desc is not None:
            p = tmp_path / "model.json"
            p.write_text(json.dumps(desc) if not isinstance(desc, str) else desc)
            args = [args[0], str(p), *args[1:]]
        return runner.invoke(main, args)

    return go


def test_betti_json(run):
    res = run(["betti", "--format", "json"], N3)
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["betti"] == [1, 2, 5, 8, 5, 2, 1]
    assert doc["reports"]["routes_agree"]
    assert [r["b"] for r in doc["rows"]] == doc["betti"]


def test_betti_markdown(run):
    res = run(["betti", "--format", "md"], N3)
    assert res.exit_code == 0
    assert "| 3 |" in res.output and "| 8 |" in res.output


def test_betti_product_includes_hodge_and_lattice(run):
    desc = dict(N22, lattice={"M": [[1, 1], [1, 2]]})
    res = run(["betti", "--format", "json"], desc)
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["hodge"][3][1] == 16
    assert doc["reports"]["lattice"] == {"char_poly": "x^2-3x+1", "det": 1}


def test_betti_writes_files(run, tmp_path):
    out = tmp_path / "out"
    res = run(["betti", "--out", str(out)], N3)
    assert res.exit_code == 0
    assert (out / "betti.json").exists() and (out / "betti.md").exists()


@pytest.mark.parametrize("desc,needle", [
    ({"kind": "generalized_nakamura", "weights": [["1/0"], ["-1"]]}, "weights/0/0"),
    ({"kind": "generalized_nakamura", "weights": [["1"], ["-1"]], "n": 1}, "not allowed"),
    ({"kind": "product", "n": 1}, "descriptor field"),
    ({"kind": "torus"}, "descriptor field"),
    ({"kind": "generalized_nakamura", "weights": [["1"], ["1"]]}, "invalid model"),
    ("{not json", "not valid JSON"),
])
def test_bad_descriptor_exit_2(run, desc, needle):
    res = run(["betti"], desc)
    assert res.exit_code == 2
    assert needle in res.output


def test_missing_file_exit_2():
    res = CliRunner().invoke(main, ["betti", "/nonexistent/model.json"])
    assert res.exit_code == 2


def test_bad_degree_exit_2(run):
    assert run(["betti", "--degree", "9"], N3).exit_code == 2
    assert run(["hlc", "--degree", "9"], N3).exit_code == 2


def test_hlc_default(run):
    res = run(["hlc", "--format", "json"], N22)
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["hlc"]["holds"]
    assert doc["omega"]["preset"] == "default"


def test_hlc_nakamura_reports_partition(run):
    res = run(["hlc", "--format", "json"], N3)
    assert res.exit_code == 0
    assert json.loads(res.output)["partition"]["pairs"] == [[1, 2]]


def test_hlc_twisted_preset(run):
    res = run(["hlc", "--omega", "example-5.3", "--format", "json"], N22)
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["omega"]["preset"] == "example-5.3"
    assert run(["hlc", "--omega", "example-5.3"], N3).exit_code == 2


def test_hlc_single_degree(run):
    res = run(["hlc", "--degree", "4", "--format", "json"], N22)
    assert res.exit_code == 0
    assert json.loads(res.output)["hlc"]["per_k"]["4"]["det"] == "-3/2"


@pytest.mark.parametrize("desc,omega", [
    (N3, '{"C": 0}'),
    (N22, '{"C": 0}'),
    (N3, '{"A": 1, "B": 1}'),
])
def test_degenerate_form_exit_3(run, desc, omega):
    res = run(["hlc", "--omega", omega], desc)
    assert res.exit_code == 3
    assert "check failed" in res.output


def test_bad_omega_exit_2(run):
    assert run(["hlc", "--omega", "bogus"], N22).exit_code == 2
    assert run(["hlc", "--omega", "[1]"], N22).exit_code == 2
    assert run(["hlc", "--omega", '{"Q": 1}'], N22).exit_code == 2


def test_examples_deterministic(tmp_path):
    runner = CliRunner()
    a, b = tmp_path / "a", tmp_path / "b"
    assert runner.invoke(main, ["examples", str(a)]).exit_code == 0
    assert runner.invoke(main, ["examples", str(b), "--parallel", "2"]).exit_code == 0
    da = json.loads((a / "digests.json").read_text())
    db = json.loads((b / "digests.json").read_text())
    assert da == db
    assert set(da) == {"table1", "table2", "table3", "figure1", "example51", "example52",
                       "example53", "example54", "kodaira"}
    assert "g1_prime" in json.loads((a / "example52.json").read_text())
    fig = json.loads((a / "figure1.json").read_text())
    assert fig["any_discrepancy"]
    assert (a / "table1.md").exists() and (a / "figure1.md").exists()


def test_version():
    res = CliRunner().invoke(main, ["--version"])
    assert res.exit_code == 0 and "solvco" in res.output
