"""Derived structure, axiom verdicts and classification of a single model."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from ..errors import ConsistencyError, MagmaError, PreconditionError
from .axioms import AXIOMS, CLASS_AXIOMS, NARHOOP_BASIS, REPORT_ORDER, REQUIRES_UNITAL
from .magma import FiniteMagma
from .terms import evaluate_batch, evaluate_instance


@dataclass(frozen=True)
class DerivedStructure:
    sqcap: np.ndarray
    leq: np.ndarray
    leq_prime: np.ndarray
    is_reflexive: bool
    is_antisymmetric: bool
    is_transitive: bool
    violation_witness: tuple[int, int, int] | None

    @property
    def is_partial_order(self) -> bool:
        return self.is_reflexive and self.is_antisymmetric and self.is_transitive

    @property
    def is_equality(self) -> bool:
        return bool((self.leq == np.eye(len(self.leq), dtype=bool)).all())


def sqcap_table(mul: np.ndarray, div: np.ndarray) -> np.ndarray:
    """``x ⊓ y = (x/y)*y`` for every pair, as an ``n x n`` table."""
    n = len(mul)
    return mul[div, np.arange(n)[None, :]]


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


@lru_cache(maxsize=4096)
def derive(m: FiniteMagma) -> DerivedStructure:
    """⊓ table, the relation ``x <= y iff x = y ⊓ x`` and order diagnostics.

    The witness is the first failure found checking reflexivity
    ``(x, x, x)``, then antisymmetry ``(x, y, x)``, then transitivity
    ``(x, y, z)``.
    """
    if not isinstance(m, FiniteMagma):
        raise MagmaError(f"expected a FiniteMagma, got {type(m).__name__}")
    n = m.size
    sq = sqcap_table(m.mul, m.div)
    # leq[x, y] iff x == sq[y, x]
    leq = sq.T == np.arange(n)[:, None]
    leq_prime = leq & (sq == np.arange(n)[:, None])
    eye = np.eye(n, dtype=bool)

    refl = _first(~np.diag(leq))
    anti = _first(leq & leq.T & ~eye)
    trans = _first(leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :])
    witness = None
    if refl is not None:
        witness = (refl[0],) * 3
    elif anti is not None:
        witness = (anti[0], anti[1], anti[0])
    elif trans is not None:
        witness = trans
    for arr in (sq, leq, leq_prime):
        arr.setflags(write=False)
    return DerivedStructure(sq, leq, leq_prime, refl is None, anti is None, trans is None, witness)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    variables: tuple[str, ...] = ()
    witness: tuple[int, ...] | None = None

    def describe(self) -> str:
        if self.holds:
            return "holds"
        pairs = ", ".join(f"{v}={a}" for v, a in zip(self.variables, self.witness))
        return f"FAIL (witness {pairs})"

    def to_dict(self) -> dict:
        out = {"holds": self.holds}
        if not self.holds:
            out["witness"] = dict(zip(self.variables, self.witness))
        return out


@dataclass(frozen=True)
class AxiomReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def holds(self, *names: str) -> bool:
        return all(self.verdicts[n].holds for n in names)

    def failing(self) -> list[str]:
        return [n for n, v in self.verdicts.items() if not v.holds]

    def merged(self, other: AxiomReport) -> AxiomReport:
        return AxiomReport({**self.verdicts, **other.verdicts})

    def lines(self) -> list[str]:
        return [f"{name}: {v.describe()}" for name, v in self.verdicts.items()]

    def __str__(self):
        return "\n".join(self.lines())

    def to_dict(self) -> dict:
        return {name: v.to_dict() for name, v in self.verdicts.items()}


def is_unital(m: FiniteMagma) -> bool:
    d = np.diag(m.div)
    return bool((d == d[0]).all())


def _verdict(m: FiniteMagma, name: str) -> Verdict:
    f = AXIOMS[name]
    names = f.variables()
    values = evaluate_batch(f, m.mul[None], m.div[None])[0]
    bad = _first(values == 0)
    return Verdict(bad is None, names, bad)


def check_axioms(m: FiniteMagma, axioms: Iterable[str] | None = None) -> AxiomReport:
    """Exhaustive verdict for each requested axiom.

    Failing verdicts carry the lexicographically first falsifying
    ``(x, y, z)`` instance.  ``U`` may only be requested on unital models.
    """
    names = list(REPORT_ORDER if axioms is None else axioms)
    unknown = [a for a in names if a not in AXIOMS]
    if unknown:
        raise PreconditionError(f"unknown axiom name(s): {', '.join(unknown)}")
    if any(a in REQUIRES_UNITAL for a in names) and not is_unital(m):
        if axioms is None:
            names = [a for a in names if a not in REQUIRES_UNITAL]
        else:
            raise PreconditionError("axiom U requires a unital model (x/x constant)")
    return AxiomReport({a: _verdict(m, a) for a in names})


def replay(m: FiniteMagma, name: str, witness: tuple[int, ...]) -> bool:
    """True when ``witness`` still falsifies axiom ``name`` on ``m``."""
    f = AXIOMS[name]
    env = dict(zip(f.variables(), witness))
    return not evaluate_instance(f, m.mul, m.div, env)


def check_residuation(m: FiniteMagma, d: DerivedStructure | None = None) -> AxiomReport:
    """RRES1-3 verdicts plus the direct bi-implication RRES.

    Given a partial order the conjunction of the three componentwise
    conditions is equivalent to RRES; disagreement raises
    ``ConsistencyError``.
    """
    d = derive(m) if d is None else d
    if not d.is_partial_order:
        raise PreconditionError(
            f"the derived relation is not a partial order (witness {d.violation_witness})"
        )
    report = check_axioms(m, ("RRES1", "RRES2", "RRES3", "RRES"))
    if report.holds("RRES1", "RRES2", "RRES3") != report.holds("RRES"):
        raise ConsistencyError("componentwise and direct residuation checks disagree")
    return report


def is_right_residuated_wrt(m: FiniteMagma, leq: np.ndarray) -> bool:
    """Partial order ``leq`` plus ``xy <= z iff x <= z/y`` for all triples."""
    leq = np.asarray(leq, dtype=bool)
    n = m.size
    eye = np.eye(n, dtype=bool)
    if not np.diag(leq).all() or (leq & leq.T & ~eye).any():
        return False
    if (leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]).any():
        return False
    # lhs[x, y, z] = mul[x, y] <= z ; rhs[x, y, z] = x <= div[z, y]
    lhs = leq[m.mul]
    rhs = leq[np.arange(n)[:, None, None], m.div.T[None, :, :]]
    return bool((lhs == rhs).all())


@dataclass(frozen=True)
class Classification:
    is_right_residuated: bool
    is_narhoop: bool
    is_right_quasigroup: bool
    is_right_hoop: bool
    is_right_hoop_characterized: bool
    is_unital: bool
    sqcap_commutative: bool
    sqcap_associative: bool
    leq_is_equality: bool

    def classes(self) -> list[str]:
        out = []
        if self.is_right_residuated:
            out.append("rres")
        if self.is_narhoop:
            out.append("narhoop")
        if self.is_right_quasigroup:
            out.append("right_quasigroup")
        if self.is_right_hoop:
            out.append("right_hoop")
        if self.is_narhoop and self.is_unital:
            out.append("unital_narhoop")
        return out

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@lru_cache(maxsize=4096)
def classify(m: FiniteMagma) -> Classification:
    d = derive(m)
    report = check_axioms(
        m, NARHOOP_BASIS + ("RRES", "RQ", "RH1", "RH2", "RH3", "RH_QUASI", "ASSOC_SQCAP")
    )
    rres = d.is_partial_order and report.holds("RRES")
    narhoop = report.holds(*NARHOOP_BASIS)
    hoop_identities = report.holds("RH1", "RH2", "RH3")
    hoop_char = narhoop and report.holds("RH3", "RH_QUASI")
    if narhoop and hoop_identities != hoop_char:
        raise ConsistencyError(
            "right-hoop identities and the narhoop characterization disagree on " + repr(m)
        )
    return Classification(
        is_right_residuated=rres,
        is_narhoop=narhoop,
        is_right_quasigroup=report.holds("RQ"),
        is_right_hoop=hoop_identities,
        is_right_hoop_characterized=hoop_char,
        is_unital=is_unital(m),
        sqcap_commutative=report.holds("RH1"),
        sqcap_associative=report.holds("ASSOC_SQCAP"),
        leq_is_equality=d.is_equality,
    )


def is_narhoop(m: FiniteMagma) -> bool:
    return classify(m).is_narhoop


def is_rres(m: FiniteMagma) -> bool:
    return classify(m).is_right_residuated


def class_mask(cls: str, mul: np.ndarray, div: np.ndarray, chunk: int = 20000) -> np.ndarray:
    """Membership of each stacked model in ``cls`` (vectorized, complete tables)."""
    from .terms import holds_batch

    axioms = CLASS_AXIOMS[cls]
    out = np.zeros(len(mul), dtype=bool)
    for start in range(0, len(mul), chunk):
        sl = slice(start, start + chunk)
        keep = np.ones(len(mul[sl]), dtype=bool)
        idx = np.arange(len(keep))
        for a in axioms:
            if not len(idx):
                break
            ok = holds_batch(AXIOMS[a], mul[sl][idx], div[sl][idx])
            keep[idx[~ok]] = False
            idx = idx[ok]
        out[sl] = keep
    return out
