"""Named axioms, identities and quasi-identities."""

from __future__ import annotations

from .terms import And, Eq, Iff, Implies, Leq, meet, x, y, z

AXIOMS = {
    # right residuation, componentwise
    "RRES1": And(Leq(meet(x, y), x), Leq(x, (x * y) / y)),
    "RRES2": Implies(Leq(x, y), Leq(x * z, y * z)),
    "RRES3": Implies(Leq(x, y), Leq(x / z, y / z)),
    # right residuation as a single bi-implication: xy <= z iff x <= z/y
    "RRES": Iff(Leq(x * y, z), Leq(x, z / y)),
    # the pointwise relation is a partial order
    "REFLEXIVE": Leq(x, x),
    "ANTISYMMETRIC": Implies(And(Leq(x, y), Leq(y, x)), Eq(x, y)),
    "TRANSITIVE": Implies(And(Leq(x, y), Leq(y, z)), Leq(x, z)),
    # one-sided and two-sided order conditions define the same relation
    "N_PRIME": Iff(Eq(x, meet(y, x)), And(Eq(meet(x, y), x), Eq(meet(y, x), x))),
    "N1": Eq(meet(meet(x, y), x), meet(x, y)),
    "N2": Leq(x, (x * y) / y),
    "N3": Leq(meet(x, y) * z, x * z),
    "N4": Leq(meet(x, y) / z, x / z),
    "N5": Eq(meet(x, (x * y) / y), x),
    "N6": Eq(meet(x, y) / y, x / y),
    "N7": Eq(meet(meet(x, y), y), meet(x, y)),
    "LN": Eq(meet(meet(x, y), z), meet(meet(x, z), y)),
    "N8": Eq(meet(x, meet(y, x)), meet(x, y)),
    "N9": Eq(meet(meet(x, meet(y, z)), z), meet(x, meet(y, z))),
    "RQ": And(Eq(meet(x, y), x), Eq((x * y) / y, x)),
    "RH1": Eq(meet(x, y), meet(y, x)),
    "RH2": Eq((x / x) * y, y),
    "RH3": Eq(x / (y * z), (x / z) / y),
    "COMM_SQCAP": Eq(meet(x, y), meet(y, x)),
    "ASSOC_SQCAP": Eq(meet(meet(x, y), z), meet(x, meet(y, z))),
    "UNITAL": Eq(x / x, y / y),
    # in a unital algebra z/z is the unit, so this reads x <= y iff y/x = 1
    "U": Iff(Leq(x, y), Eq(y / x, z / z)),
    # right-hoop quasi-equation used by the narhoop characterization
    "RH_QUASI": Implies(Eq(meet(x, y), x), Leq(x, y)),
}

#: Axioms whose meaning presupposes a unital algebra.
REQUIRES_UNITAL = frozenset({"U"})

#: The names reported by default, in report order.
REPORT_ORDER = (
    "RRES1", "RRES2", "RRES3", "N",
    "N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9",
    "LN", "U", "RQ", "RH1", "RH2", "RH3", "COMM_SQCAP",
)

#: "N" is the statement that the pointwise relation is a partial order.
AXIOMS["N"] = And(AXIOMS["REFLEXIVE"], AXIOMS["ANTISYMMETRIC"], AXIOMS["TRANSITIVE"])

NARHOOP_BASIS = ("N1", "N2", "N3", "N4")

#: Defining formulas of each enumerable class (conjunction of the listed axioms).
CLASS_AXIOMS = {
    "rres": ("REFLEXIVE", "ANTISYMMETRIC", "TRANSITIVE", "RRES"),
    "narhoop": NARHOOP_BASIS,
    "right_quasigroup": ("RQ",),
    "right_hoop": ("RH1", "RH2", "RH3"),
    "unital_narhoop": NARHOOP_BASIS + ("UNITAL",),
}

CLASSES = tuple(CLASS_AXIOMS)
