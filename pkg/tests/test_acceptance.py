"""Acceptance criteria 1-8, one PASS/FAIL line each.

The size-4 criteria enumerate every class on four points and take several
minutes in total.  Run this file alone with::

    python3 -m pytest tests/test_acceptance.py -v
"""

import json
import time

import numpy as np
import pytest

from narhoop import congruence as cg
from narhoop.cli import main
from narhoop.core import CLASSES, NARHOOP_BASIS, check_axioms
from narhoop.enumeration import EnumerationTask, clear_cache, enumerate_keys
from narhoop.enumeration.canonical import CanonicalForm
from narhoop.enumeration.tasks import backtracking_keys
from narhoop.suite import FAIL, PASS, builtin_fixtures, run_suite, verification_corpus

RESULTS = []
MAX_SIZE = 4


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _models(keys, n, prefix):
    return [(f"{prefix}{n}_{i:05d}", CanonicalForm.from_key(n, k).magma()) for i, k in enumerate(keys)]


@pytest.fixture(scope="module")
def both_routes():
    """Per (class, size): backtracking keys, oracle keys, seconds each."""
    out = {}
    for cls in CLASSES:
        for n in range(1, MAX_SIZE + 1):
            t = time.perf_counter()
            bt = enumerate_keys(EnumerationTask(n, cls, "backtracking"))
            t_bt = time.perf_counter() - t
            t = time.perf_counter()
            gf = enumerate_keys(EnumerationTask(n, cls, "generate_and_filter"))
            out[cls, n] = (bt, gf, t_bt, time.perf_counter() - t)
    return out


@pytest.fixture(scope="module")
def corpus(both_routes):
    return verification_corpus(MAX_SIZE)


@pytest.fixture(scope="module")
def rres_models(both_routes):
    return [item for n in range(1, MAX_SIZE + 1) for item in _models(both_routes["rres", n][0], n, "rr")]


def _failures(r):
    return [f"{e.case} on {e.model}: {json.dumps(e.witness, sort_keys=True)}" for e in r.failures]


def test_criterion_1_independence_fixtures():
    t = time.perf_counter()
    fx = builtin_fixtures()
    wrong = {}
    for i in (1, 2, 3, 4):
        failing = check_axioms(fx[f"A{i}"], NARHOOP_BASIS).failing()
        if failing != [f"N{i}"]:
            wrong[f"A{i}"] = failing
    dt = time.perf_counter() - t
    ok = not wrong and dt < 1.0
    assert report(1, ok, f"A1-A4 each fail exactly their own axiom ({dt:.3f} s){'; ' + str(wrong) if wrong else ''}")


@pytest.mark.slow
def test_criterion_2_variety_converse():
    # timed from scratch: backtracking enumeration plus the checks
    t = time.perf_counter()
    models = []
    for n in range(1, MAX_SIZE + 1):
        models += _models(backtracking_keys("narhoop", n), n, "nh")
    r = run_suite(models, cases=["THM_VARIETY_CONV"])
    dt = time.perf_counter() - t
    fails = _failures(r)
    ok = not fails and r.totals()[PASS] == len(models) and dt < 300
    assert report(2, ok, f"{len(models)} narhoops up to size {MAX_SIZE}, {len(fails)} exceptions, {dt:.0f} s"), fails[:5]


@pytest.mark.slow
def test_criterion_3_lnb_and_comm_meet(rres_models):
    r = run_suite(rres_models, cases=["THM_LNB", "THM_COMM_MEET"])
    fails = _failures(r)
    ok = not fails and r.totals()[PASS] == 2 * len(rres_models)
    assert report(3, ok, f"{len(rres_models)} right-residuated models, {len(fails)} exceptions"), fails[:5]


@pytest.mark.slow
def test_criterion_4_principal_ideals(corpus):
    r = run_suite(corpus, cases=["THM_PRINCIPAL"])
    fails = _failures(r)
    ok = not fails and r.totals()[PASS] > 0
    assert report(4, ok, f"{r.totals()[PASS]} right-residuated models checked, {len(fails)} exceptions"), fails[:5]


SECTION3 = ["LEM_PREUNITAL", "LEM_UNITAL", "THM_FINITE_UNIQUE", "THM_TOP_COMM", "THM_BOTTOM_TOP"]


@pytest.mark.slow
def test_criterion_5_unital_statements(corpus):
    r = run_suite(corpus, cases=SECTION3)
    fails = _failures(r)
    by_case = {c: k[FAIL] for c, k in r.counts().items() if k[FAIL]}
    detail = f"{len(corpus)} models, {len(fails)} exceptions" + (f" {by_case}" if by_case else "")
    # see the ledger: the unique-left-identity statement has size-3
    # counterexamples among right-residuated magmas that are not narhoops
    assert report(5, not fails, detail), fails[:5]


@pytest.mark.slow
def test_criterion_6_congruence_bijection():
    t = time.perf_counter()
    models = []
    for n in range(1, MAX_SIZE + 1):
        models += _models(backtracking_keys("narhoop", n), n, "nh")
    r = run_suite(models, cases=["LEM_CONG", "THM_CONG", "THM_NORMAL"])
    fails = _failures(r)
    bad = [name for name, m in models if not cg.correspondence(m).is_bijection]
    dt = time.perf_counter() - t
    ok = not fails and not bad and dt < 600
    assert report(6, ok, f"{len(models)} narhoops, {len(fails) + len(bad)} exceptions, {dt:.0f} s"), (fails + bad)[:5]


@pytest.mark.slow
def test_criterion_7_oracle_equivalence(both_routes):
    mismatches = []
    lines = []
    for cls in CLASSES:
        counts = []
        for n in range(1, MAX_SIZE + 1):
            bt, gf, _, _ = both_routes[cls, n]
            if bt.shape != gf.shape or not np.array_equal(bt, gf):
                mismatches.append((cls, n, len(bt), len(gf)))
            counts.append(len(bt))
        lines.append(f"{cls}={counts}")
    rq2 = len(both_routes["right_quasigroup", 2][0])
    secs = [sum(v[2] for k, v in both_routes.items() if k[1] == MAX_SIZE),
            sum(v[3] for k, v in both_routes.items() if k[1] == MAX_SIZE)]
    lines.append(f"size {MAX_SIZE} seconds: backtracking {secs[0]:.0f}, oracle {secs[1]:.0f}")
    ok = not mismatches and rq2 == 3
    assert report(7, ok, f"{'; '.join(lines)}; right_quasigroup size 2 = {rq2}"), mismatches


def test_criterion_8_determinism(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    statuses = []
    for p in paths:
        clear_cache()  # the second run enumerates again instead of reusing keys
        statuses.append(main(["verify", "--size", "3", "--output", str(p)]))
    same = paths[0].read_bytes() == paths[1].read_bytes()
    assert report(8, same, f"two verify --size 3 reports byte-identical (exit status {statuses})")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
