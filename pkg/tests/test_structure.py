import pytest

from narhoop import structure as st
from narhoop.core import FiniteMagma, classify
from narhoop.errors import PreconditionError, TheoremViolation

# the size-3 right-residuated magma with two left identities (see README)
TWO_LEFT_IDENTITIES = FiniteMagma(3, [[0, 0, 0], [0, 1, 2], [0, 1, 2]], [[1, 0, 0], [1, 1, 1], [1, 0, 1]])


@pytest.mark.parametrize("name,a,expected", [("G2", 1, (0, 1)), ("G2", 0, (0,)), ("Z2_xor", 0, (0,))])
def test_principal_ideals(fixtures, name, a, expected):
    assert st.principal_ideal(fixtures[name], a).members == expected


def test_principal_ideal_needs_rres(fixtures):
    with pytest.raises(PreconditionError):
        st.principal_ideal(fixtures["A1"], 0)


def test_reduct_of_chain_has_every_flag(fixtures):
    g2 = fixtures["G2"]
    r = st.classify_reduct(st.SubsetView(g2, g2.carrier))
    assert all(v for k, v in r.__dict__.items() if k != "members")


def test_left_zero_band(fixtures):
    z = fixtures["Z2_xor"]
    r = st.classify_reduct(st.SubsetView(z, z.carrier))
    assert r.is_lnb and r.is_semigroup and not r.is_semilattice and not r.is_commutative


@pytest.mark.parametrize("name", ["G2", "Z2_xor", "trivial"])
def test_singletons(fixtures, name):
    m = fixtures[name]
    for a in m.carrier:
        r = st.classify_reduct(st.SubsetView(m, [a]))
        assert r.is_lnb and r.is_semilattice and r.satisfies_N1_and_lower_bound


def test_reduct_rejects_open_subset():
    b = st.SubsetView(TWO_LEFT_IDENTITIES, [1, 2])
    assert b.sqcap_witness() == (2, 1)  # 2 ⊓ 1 = 0
    with pytest.raises(PreconditionError):
        st.classify_reduct(b)


def test_closed_subsets_are_closed(corpus3):
    for _, m in corpus3:
        if not classify(m).is_right_residuated:
            continue
        subsets = st.sqcap_closed_subsets(m)
        assert all(b.is_sqcap_closed for b in subsets)
        assert all(len(b) > 0 for b in subsets)
        # closures of singletons are themselves
        assert {b.members for b in subsets} >= {(a,) for a in m.carrier}


def test_unitality_examples(fixtures):
    g2 = st.unitality(fixtures["G2"])
    assert (g2.is_unital, g2.unit, g2.top, g2.bottom, g2.left_identities) == (True, 1, 1, 0, (1,))
    z = st.unitality(fixtures["Z2_xor"])
    assert (z.is_unital, z.unit, z.top, z.left_identities) == (True, 0, None, (0,))
    t = st.unitality(fixtures["trivial"])
    assert (t.unit, t.top, t.bottom) == (0, 0, 0)


def test_unitality_strict_raises_on_counterexample():
    with pytest.raises(TheoremViolation) as info:
        st.unitality(TWO_LEFT_IDENTITIES)
    assert "FINITE_UNIQUE_LEFT_IDENTITY" in str(info.value)
    rec = st.unitality(TWO_LEFT_IDENTITIES, strict=False)
    assert rec.left_identities == (1, 2)
    assert [name for name, _ in rec.violations] == ["FINITE_UNIQUE_LEFT_IDENTITY"]


def test_counterexample_is_rres_but_not_narhoop():
    c = classify(TWO_LEFT_IDENTITIES)
    assert c.is_right_residuated and c.is_unital and not c.is_narhoop


@pytest.mark.parametrize("name,top,comm", [("G2", True, True), ("Z2_xor", False, False), ("trivial", True, True)])
def test_top_iff_commutative(fixtures, name, top, comm):
    v = st.check_top_iff_commutative(fixtures[name])
    assert v.holds and v.unit_is_top == top and v.sqcap_commutative == comm


def test_top_iff_commutative_preconditions(fixtures):
    with pytest.raises(PreconditionError):
        st.check_top_iff_commutative(fixtures["A1"])
    with pytest.raises(PreconditionError):
        st.check_top_iff_commutative(TWO_LEFT_IDENTITIES)
