import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from narhoop.core import CLASSES, classify
from narhoop.enumeration import (
    EnumerationTask,
    canonicalize,
    count,
    enumerate_keys,
    enumerate_models,
    read_corpus,
    scan_classes,
    write_corpus,
)
from narhoop.enumeration.canonical import canonical_keys
from narhoop.enumeration.kernel import run_search
from narhoop.enumeration.posets import posets_up_to_isomorphism
from narhoop.enumeration.tasks import SEARCH_AXIOMS
from narhoop.errors import ConsistencyError, MagmaError, UsageError

from conftest import magmas

# isomorphism classes per size; produced by this repository with two
# independent routes (clause search and table-space scan) and frozen here
COUNTS = {
    "rres": [1, 4, 56, 14867],
    "narhoop": [1, 4, 52, 14607],
    "right_quasigroup": [1, 3, 44, 14022],
    "right_hoop": [1, 1, 2, 8],
    "unital_narhoop": [1, 2, 9, 285],
}


@pytest.mark.parametrize("cls", CLASSES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_counts_small(cls, n):
    assert count(EnumerationTask(n, cls, "both")) == COUNTS[cls][n - 1]


@pytest.mark.slow
@pytest.mark.parametrize("cls", ["narhoop", "right_hoop", "unital_narhoop"])
def test_counts_size4_backtracking(cls):
    assert count(EnumerationTask(4, cls)) == COUNTS[cls][3]


def test_right_quasigroups_of_size_two():
    models = enumerate_models(EnumerationTask(2, "right_quasigroup", "both"))
    assert len(models) == 3
    assert all(classify(m).is_right_quasigroup for m in models)


@pytest.mark.parametrize("cls", CLASSES)
def test_enumerated_models_are_members_and_canonical(cls):
    models = enumerate_models(EnumerationTask(3, cls))
    assert all(cls in classify(m).classes() for m in models)
    assert all(canonicalize(m).magma() == m for m in models)
    assert len({canonicalize(m) for m in models}) == len(models)


def test_keys_sorted():
    keys = enumerate_keys(EnumerationTask(3, "narhoop"))
    as_tuples = [tuple(k) for k in keys.tolist()]
    assert as_tuples == sorted(as_tuples)


def test_parallel_width_does_not_change_result():
    from narhoop.enumeration.tasks import backtracking_keys

    assert np.array_equal(backtracking_keys("narhoop", 3, 1), backtracking_keys("narhoop", 3, 2))


def test_search_models_satisfy_axioms():
    models, nodes = run_search(SEARCH_AXIOMS["narhoop"], 3)
    assert nodes > 0 and len(models) > 0
    from narhoop.core import FiniteMagma

    for row in models:
        m = FiniteMagma(3, row[:9].reshape(3, 3), row[9:].reshape(3, 3))
        assert classify(m).is_narhoop


def test_poset_counts():
    # unlabeled posets on 1..4 points
    assert [len(posets_up_to_isomorphism(n)) for n in (1, 2, 3, 4)] == [1, 2, 5, 16]


@given(magmas(), st.data())
@settings(max_examples=60, deadline=None)
def test_canonical_form_invariant_under_relabeling(m, data):
    c = canonicalize(m)
    for _ in range(20):
        perm = data.draw(st.permutations(range(m.size)))
        assert canonicalize(m.relabel(perm)) == c


@given(magmas())
@settings(max_examples=100, deadline=None)
def test_canonical_form_is_isomorphic_copy(m):
    c = canonicalize(m).magma()
    assert classify(c) == classify(m)
    keys = canonical_keys(m.mul[None].astype(np.int64), m.div[None].astype(np.int64))
    assert tuple(keys[0].tolist()) == canonicalize(m).key()


@given(magmas())
@settings(max_examples=300, deadline=None)
def test_scan_predicates_match_classify(m):
    assert scan_classes(m) == classify(m).classes()


def test_corpus_round_trip(tmp_path):
    models = enumerate_models(EnumerationTask(3, "unital_narhoop"))
    path = tmp_path / "c.jsonl"
    write_corpus(path, "unital_narhoop", 3, models)
    header, again = read_corpus(path)
    assert header == {"class": "unital_narhoop", "size": 3, "count": 9}
    assert again == models


def test_corpus_count_mismatch(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"class": "narhoop", "size": 1, "count": 2}\n{"size":1,"mul":[[0]],"div":[[0]]}\n')
    with pytest.raises(MagmaError):
        read_corpus(path)


@pytest.mark.parametrize("kwargs", [
    {"size": 0},
    {"size": 2, "cls": "group"},
    {"size": 2, "mode": "fast"},
    {"size": 2, "parallel_width": 0},
])
def test_task_validation(kwargs):
    with pytest.raises(UsageError):
        EnumerationTask(**kwargs)


def test_both_mode_raises_on_mismatch(monkeypatch):
    from narhoop.enumeration import tasks

    tasks.clear_cache()
    real = tasks.oracle_keys
    monkeypatch.setattr(tasks, "oracle_keys", lambda cls, n: real(cls, n)[1:])
    try:
        with pytest.raises(ConsistencyError):
            enumerate_keys(EnumerationTask(2, "narhoop", "both"))
    finally:
        tasks.clear_cache()
