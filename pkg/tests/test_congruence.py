import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from narhoop import congruence as cg
from narhoop.core import FiniteMagma, classify
from narhoop.enumeration import canonicalize
from narhoop.errors import PreconditionError

from conftest import magmas


def _ref_respects(m, block_of):
    # plain loop over all related pairs
    n = m.size
    for a, b in itertools.product(range(n), repeat=2):
        if block_of[a] != block_of[b]:
            continue
        for c in range(n):
            for t in (m.mul, m.div):
                if block_of[t[a][c]] != block_of[t[b][c]] or block_of[t[c][a]] != block_of[t[c][b]]:
                    return False
    return True


def test_partition_normalizes_labels():
    p = cg.Partition((3, 3, 1))
    assert p.block_of == (0, 0, 1)
    assert p == cg.Partition.from_blocks([[0, 1], [2]], 3)
    assert p.join(cg.Partition((0, 1, 1))) == cg.Partition.total(3)


def test_from_blocks_rejects_overlap():
    with pytest.raises(PreconditionError):
        cg.Partition.from_blocks([[0, 1], [1]], 2)
    with pytest.raises(PreconditionError):
        cg.Partition.from_blocks([[0]], 2)


def test_set_partition_counts():
    assert [sum(1 for _ in cg.set_partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


@pytest.mark.parametrize("name,expected", [("trivial", 1), ("Z2_xor", 2), ("G2", 2)])
def test_congruence_counts(fixtures, name, expected):
    cons = cg.all_congruences(fixtures[name])
    assert len(cons) == expected


def test_g2_congruences_are_unital(fixtures):
    assert all(c.is_unital for c in cg.all_congruences(fixtures["G2"]))


@pytest.mark.parametrize("name", ["G2", "Z2_xor"])
def test_principal_congruences(fixtures, name):
    m = fixtures[name]
    assert cg.principal_congruence(m, 0, 0).partition == cg.Partition.identity(2)
    assert cg.principal_congruence(m, 0, 1).partition == cg.Partition.total(2)


@given(magmas(max_size=4))
@settings(max_examples=150, deadline=None)
def test_closure_matches_filter(m):
    a = [c.partition for c in cg.all_congruences(m)]
    b = [c.partition for c in cg.congruences_by_filter(m)]
    assert a == b
    for p in cg.set_partitions(m.size):
        assert cg.respects(m, p) == _ref_respects(m, p.block_of)


def test_closure_matches_filter_on_corpus(corpus3):
    for _, m in corpus3:
        assert cg.all_congruences(m) == cg.congruences_by_filter(m)


def test_quotients(fixtures):
    g2 = fixtures["G2"]
    ident, total = cg.all_congruences(g2)
    assert canonicalize(cg.quotient(g2, ident)) == canonicalize(g2)
    q = cg.quotient(g2, total)
    assert q.size == 1 and q.div[0, 0] == 0


def test_quotient_rejects_non_congruence(fixtures):
    # addition mod 3: 0 ~ 1 would force 1 = 0+1 ~ 1+1 = 2
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    m = FiniteMagma(3, add, add)
    bad = cg.Partition((0, 0, 1))
    assert not cg.respects(m, bad)
    with pytest.raises(PreconditionError):
        cg.quotient(m, cg.CongruenceInfo.of(m, bad))


def test_inn_examples(fixtures):
    t = cg.inn_generators(fixtures["trivial"])
    assert len(t) == 6 and all(g.mapping == (0,) for g in t)
    g2 = cg.inn_generators(fixtures["G2"])
    phi1 = next(g for g in g2 if (g.index, g.x, g.y) == (1, 1, 1))
    assert phi1.mapping == (0, 1)
    z = cg.inn_generators(fixtures["Z2_xor"])
    phi1 = next(g for g in z if (g.index, g.x, g.y) == (1, 0, 0))
    assert phi1.mapping == (0, 1)


@given(magmas())
@settings(max_examples=100, deadline=None)
def test_inn_maps_match_terms(m):
    assert len(cg.inn_generators(m)) == 6 * m.size ** 2  # raises on disagreement


def test_normality_examples(fixtures):
    g2 = fixtures["G2"]
    assert cg.check_normal(g2, [0, 1]).is_normal
    assert cg.check_normal(g2, [1]).is_normal
    bad = cg.check_normal(g2, [0])
    assert not bad.is_normal and not bad.is_upward_closed
    with pytest.raises(PreconditionError):
        cg.check_normal(g2, [])
    with pytest.raises(PreconditionError):
        cg.check_normal(fixtures["A1"], [0])


def test_preorder_examples(fixtures):
    g2 = fixtures["G2"]
    assert cg.n_preorder(g2, [0, 1]).relation.all()
    from narhoop.core import derive

    assert np.array_equal(cg.n_preorder(g2, [1]).relation, derive(g2).leq)
    assert cg.n_preorder(fixtures["trivial"], [0]).relation.tolist() == [[True]]
    with pytest.raises(PreconditionError):
        cg.n_preorder(g2, [0])


def test_theta_examples(fixtures):
    g2, z = fixtures["G2"], fixtures["Z2_xor"]
    assert cg.theta_from_N(g2, [0, 1]).partition == cg.Partition.total(2)
    assert cg.theta_from_N(g2, [1]).partition == cg.Partition.identity(2)
    info = cg.theta_from_N(z, [0])
    assert info.partition == cg.Partition.identity(2) and info.n_theta == (0,)


def test_n_theta_examples(fixtures):
    g2, z = fixtures["G2"], fixtures["Z2_xor"]
    ident = cg.CongruenceInfo.of(g2, cg.Partition.identity(2))
    assert cg.n_from_theta(g2, ident) == (1,)
    assert cg.n_from_theta(z, cg.CongruenceInfo.of(z, cg.Partition.identity(2))) == (0,)
    for name in ("G2", "Z2_xor", "trivial"):
        m = fixtures[name]
        assert cg.n_from_theta(m, cg.CongruenceInfo.of(m, cg.Partition.total(m.size))) == tuple(m.carrier)


def test_correspondence_on_corpus(corpus3):
    for _, m in corpus3:
        if classify(m).is_narhoop:
            assert cg.correspondence(m).is_bijection


# the only narhoop on at most four points with an Inn-invariant subnarhoop
# that is not upward-closed (found by scanning the corpus, checked by hand)
GAP_MODEL = FiniteMagma(
    4,
    [[0, 0, 2, 2], [0, 1, 2, 2], [2, 2, 3, 3], [3, 3, 2, 2]],
    [[1, 0, 2, 2], [1, 1, 2, 2], [2, 2, 1, 1], [3, 3, 2, 2]],
)


def test_upward_closure_is_not_implied():
    [a] = cg.upward_closure_gaps(GAP_MODEL)
    assert a.subset == (1, 2, 3)
    assert a.witnesses == {"upward_closed": (3, 0)}
    assert not classify(GAP_MODEL).is_unital


def test_no_upward_closure_gap_below_four(corpus3):
    for _, m in corpus3:
        if classify(m).is_narhoop:
            assert cg.upward_closure_gaps(m) == []


@pytest.mark.slow
def test_upward_closure_gap_unique_at_four():
    from narhoop.enumeration import EnumerationTask, enumerate_models

    found = [m for m in enumerate_models(EnumerationTask(4, "narhoop")) if cg.upward_closure_gaps(m)]
    assert [canonicalize(m) for m in found] == [canonicalize(GAP_MODEL)]
