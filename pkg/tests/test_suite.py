import json

import pytest

from narhoop.core import FiniteMagma
from narhoop.suite import CASE_IDS, FAIL, PASS, SKIP, builtin_fixtures, run_suite

TWO_LEFT_IDENTITIES = FiniteMagma(3, [[0, 0, 0], [0, 1, 2], [0, 1, 2]], [[1, 0, 0], [1, 1, 1], [1, 0, 1]])


@pytest.fixture(scope="module")
def report3(corpus3):
    return run_suite(corpus3)


def test_fixtures_pass_everything():
    r = run_suite(builtin_fixtures())
    assert r.ok
    assert r.totals()[PASS] > 0


def test_independence_cases_apply_only_to_their_fixture():
    r = run_suite(builtin_fixtures())
    counts = r.counts()
    for i in range(1, 5):
        assert counts[f"INDEP_A{i}"] == {PASS: 1, FAIL: 0, SKIP: 6}


def test_every_case_reported(report3):
    assert set(report3.counts()) == set(CASE_IDS)


def test_size3_failures_are_the_left_identity_counterexample(report3):
    fails = report3.failures
    assert [e.case for e in fails] == ["THM_FINITE_UNIQUE"]
    assert report3.models[fails[0].model] == TWO_LEFT_IDENTITIES
    assert fails[0].witness == {"check": "FINITE_UNIQUE_LEFT_IDENTITY", "witness": [1, 2]}
    assert report3.counts()["THM_FINITE_UNIQUE_NARHOOP"][FAIL] == 0


def test_failures_replay(report3):
    assert report3.failures and all(report3.replay(e) for e in report3.failures)


def test_report_json_is_deterministic(corpus3, report3):
    again = run_suite(corpus3)
    assert again.to_json() == report3.to_json()
    data = json.loads(report3.to_json())
    assert data["failures"][0]["tables"] == TWO_LEFT_IDENTITIES.to_dict()


def test_parallel_width_gives_same_report(corpus3, report3):
    assert run_suite(corpus3, parallel_width=2).to_json() == report3.to_json()


def test_unknown_case():
    with pytest.raises(KeyError):
        run_suite(builtin_fixtures(), cases=["NOPE"])


def test_text_report_lists_failures(report3):
    text = report3.to_text()
    assert "FAIL THM_FINITE_UNIQUE on" in text
