import json
import subprocess
import sys

import pytest

from narhoop.cli import load_models, main
from narhoop.core import FiniteMagma
from narhoop.enumeration import read_corpus
from narhoop.suite import builtin_fixtures


@pytest.fixture()
def fixture_dir(tmp_path):
    assert main(["fixtures", "--output", str(tmp_path)]) == 0
    return tmp_path


def test_fixtures_round_trip(fixture_dir):
    for name, m in builtin_fixtures().items():
        [(_, again)] = load_models(fixture_dir / f"{name.lower()}.json")
        assert again == m


def test_check_a2(fixture_dir, capsys):
    assert main(["check", str(fixture_dir / "a2.json")]) == 0
    out = capsys.readouterr().out
    assert "N2: FAIL (witness x=0, y=0)" in out
    for ok in ("N1: holds", "N3: holds", "N4: holds"):
        assert ok in out


def test_check_json(fixture_dir, capsys):
    assert main(["check", str(fixture_dir / "a3.json"), "--format", "json", "--axioms", "N1,N2,N3,N4"]) == 0
    [record] = json.loads(capsys.readouterr().out)
    assert [k for k, v in record["report"].items() if not v["holds"]] == ["N3"]


def test_enumerate_both_modes(tmp_path, capsys):
    path = tmp_path / "rq2.jsonl"
    argv = ["enumerate", "--class", "right_quasigroup", "--size", "2", "--mode", "both", "-o", str(path)]
    assert main(argv) == 0
    header, models = read_corpus(path)
    assert header["count"] == 3 and len(models) == 3
    # every emitted model re-parses to the same magma
    assert [FiniteMagma.from_json(m.to_json()) for m in models] == models
    assert [m for _, m in load_models(path)] == models


def test_verify_size1(capsys):
    assert main(["verify", "--size", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["totals"]["FAIL"] == 0 and data["failures"] == []


def test_verify_exit_status_on_failure(capsys):
    assert main(["verify", "--size", "3"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert {f["case"] for f in data["failures"]} == {"THM_FINITE_UNIQUE"}


@pytest.mark.parametrize("argv", [
    ["verify", "--size", "0"],
    ["verify", "--size", "6"],
    ["enumerate", "--size", "2", "--class", "groups"],
    ["enumerate"],
    ["frobnicate"],
    ["check", "/nonexistent/model.json"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_malformed_model(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"size": 2, "mul": [[0, 5], [0, 0]], "div": [[0, 0], [0, 0]]}')
    assert main(["check", str(bad)]) == 2


def test_classify_keys_by_canonical_form(tmp_path, capsys):
    m = builtin_fixtures()["G2"]
    path = tmp_path / "two.json"
    path.write_text(json.dumps([m.to_dict(), m.relabel([1, 0]).to_dict()]))
    assert main(["classify", str(path)]) == 0
    records = json.loads(capsys.readouterr().out)
    [(key, rec)] = records.items()
    assert rec["inputs"] == ["0", "1"]
    assert rec["classes"] == ["rres", "narhoop", "right_hoop", "unital_narhoop"]


def test_congruences_and_normal_subs(fixture_dir, capsys):
    assert main(["congruences", str(fixture_dir / "z2_xor.json")]) == 0
    [rec] = json.loads(capsys.readouterr().out)
    assert [c["blocks"] for c in rec["congruences"]] == [[[0], [1]], [[0, 1]]]
    assert main(["normal-subs", str(fixture_dir / "g2.json")]) == 0
    [rec] = json.loads(capsys.readouterr().out)
    assert rec["bijection"] and [p["subset"] for p in rec["normal_subsets"]] == [[1], [0, 1]]
    # non-narhoop input is reported and flagged with status 2
    assert main(["normal-subs", str(fixture_dir / "a1.json")]) == 2


def test_module_entry_point(fixture_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "narhoop", "check", str(fixture_dir / "g2.json"), "--axioms", "N1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "N1: holds" in proc.stdout
