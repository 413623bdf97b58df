"""Principal ideals, ⊓-closed subsets, unitality and extremal elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .core import FiniteMagma, classify, derive
from .errors import PreconditionError, TheoremViolation


@dataclass(frozen=True)
class SubsetView:
    """A subset of the carrier of ``parent``, members in ascending order."""

    parent: FiniteMagma
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(v) for v in self.members)))
        if any(v < 0 or v >= self.parent.size for v in members):
            raise PreconditionError(f"subset {members} is not inside the carrier")
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v):
        return v in self.members

    def sqcap_witness(self) -> tuple[int, int] | None:
        """First pair of members whose ⊓ leaves the subset, if any."""
        sq = derive(self.parent).sqcap
        inside = set(self.members)
        for x in self.members:
            for y in self.members:
                if int(sq[x, y]) not in inside:
                    return (x, y)
        return None

    @property
    def is_sqcap_closed(self) -> bool:
        return self.sqcap_witness() is None

    def to_list(self) -> list[int]:
        return list(self.members)


def _require_rres(m: FiniteMagma, what: str) -> None:
    if not classify(m).is_right_residuated:
        raise PreconditionError(f"{what} needs a right-residuated model whose (N) relation is the order")


def principal_ideal(m: FiniteMagma, a: int) -> SubsetView:
    """``(a]`` computed as ``{x : x <= a}`` and as ``{a ⊓ x : x}``.

    The two descriptions must agree and the result must be ⊓-closed;
    otherwise ``TheoremViolation`` is raised.
    """
    _require_rres(m, "principal_ideal")
    if not 0 <= a < m.size:
        raise PreconditionError(f"{a} is not in the carrier")
    d = derive(m)
    below = tuple(int(x) for x in np.flatnonzero(d.leq[:, a]))
    images = tuple(sorted(set(int(v) for v in d.sqcap[a])))
    if below != images:
        raise TheoremViolation(
            f"({a}] is {list(below)} by the order but {list(images)} as a ⊓ {a}-image",
            witness=(a,),
        )
    view = SubsetView(m, below)
    bad = view.sqcap_witness()
    if bad is not None:
        raise TheoremViolation(f"({a}] is not closed under ⊓", witness=(a,) + bad)
    return view


def sqcap_closure(m: FiniteMagma, seed) -> tuple[int, ...]:
    sq = derive(m).sqcap
    current = set(int(v) for v in seed)
    while True:
        new = {int(sq[x, y]) for x in current for y in current} - current
        if not new:
            return tuple(sorted(current))
        current |= new


def sqcap_closed_subsets(m: FiniteMagma) -> list[SubsetView]:
    """Every nonempty ⊓-closed subset, ordered by size then members.

    Each subset of the carrier is closed under ⊓ and the closures are
    deduplicated.
    """
    seen = set()
    for k in range(1, m.size + 1):
        for seed in combinations(range(m.size), k):
            seen.add(sqcap_closure(m, seed))
    return [SubsetView(m, s) for s in sorted(seen, key=lambda s: (len(s), s))]


@dataclass(frozen=True)
class ReductRecord:
    """Properties of ``(B, ⊓)`` for a ⊓-closed ``B``.

    ``satisfies_N1_and_lower_bound`` means (N1) holds inside ``B`` and
    ``x ⊓ y <= y`` for all members, with ``<=`` inherited from the parent.
    """

    members: tuple[int, ...]
    is_lnb: bool
    is_semigroup: bool
    satisfies_N8_N9: bool
    is_semilattice: bool
    is_commutative: bool
    satisfies_N1_and_lower_bound: bool

    def to_dict(self) -> dict:
        return {k: (list(v) if k == "members" else v) for k, v in self.__dict__.items()}


def classify_reduct(b: SubsetView) -> ReductRecord:
    """All six reduct flags, each by its own exhaustive evaluation on ``B``."""
    m = b.parent
    _require_rres(m, "classify_reduct")
    bad = b.sqcap_witness()
    if bad is not None:
        raise PreconditionError(f"subset {list(b.members)} is not closed under ⊓ (witness {bad})")
    d = derive(m)
    idx = np.array(b.members)
    # local table: s[i, j] is the local index of members[i] ⊓ members[j]
    local = np.full(m.size, -1)
    local[idx] = np.arange(len(idx))
    s = local[d.sqcap[np.ix_(idx, idx)]]
    le = d.leq[np.ix_(idx, idx)]
    k = len(idx)
    r = np.arange(k)
    X, Y, Z = r[:, None, None], r[None, :, None], r[None, None, :]

    xy = s[X, Y]
    idempotent = bool((s[r, r] == r).all())
    assoc = bool((s[xy, Z] == s[X, s[Y, Z]]).all())
    left_normal = bool((s[xy, Z] == s[s[X, Z], Y]).all())
    commutative = bool((s == s.T).all())
    n8 = bool((s[r[:, None], s.T] == s).all())  # x ⊓ (y ⊓ x) = x ⊓ y
    inner = s[X, s[Y, Z]]
    n9 = bool((s[inner, Z] == inner).all())
    n1 = bool((s[s, r[:, None]] == s).all())  # (x ⊓ y) ⊓ x = x ⊓ y
    lower = bool(le[s, r[None, :]].all())  # x ⊓ y <= y
    return ReductRecord(
        members=b.members,
        is_lnb=idempotent and assoc and left_normal,
        is_semigroup=assoc,
        satisfies_N8_N9=n8 and n9,
        is_semilattice=idempotent and assoc and commutative,
        is_commutative=commutative,
        satisfies_N1_and_lower_bound=n1 and lower,
    )


@dataclass(frozen=True)
class UnitalityRecord:
    """Unit, left identities and extremal elements of a model.

    ``const_unit``, ``acts_as_left_identity`` and ``has_left_identity`` are
    the three unitality conditions (``x/x`` constant; ``(x/x)y = y``; some
    ``e`` with ``ey = y``), each evaluated on its own.  ``violations`` lists
    ``(check, witness)`` for every expected property that failed.
    """

    is_unital: bool
    unit: int | None
    left_identities: tuple[int, ...]
    maximal_elements: tuple[int, ...]
    top: int | None
    bottom: int | None
    const_unit: bool
    acts_as_left_identity: bool
    has_left_identity: bool
    violations: tuple[tuple[str, tuple], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "is_unital": self.is_unital,
            "unit": self.unit,
            "left_identities": list(self.left_identities),
            "maximal_elements": list(self.maximal_elements),
            "top": self.top,
            "bottom": self.bottom,
            "conditions": [self.const_unit, self.acts_as_left_identity, self.has_left_identity],
            "violations": [[name, list(w)] for name, w in self.violations],
        }


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def unitality(m: FiniteMagma, strict: bool = True) -> UnitalityRecord:
    """Unitality record, checking on the way:

    * every ``x/x`` is maximal, ``(x/x)y/y = x/x``, and a top (if any) is ``x/x``;
    * the three unitality conditions agree, and the unit is the largest
      left identity;
    * a finite unital model has exactly one left identity;
    * a bottom ``0`` makes ``0/0`` the top;
    * a top makes the model unital, ``x ⊓ y`` a lower bound of ``x`` and
      ``y``, and a bottom exist.

    With ``strict`` the first failure raises ``TheoremViolation``;
    otherwise failures are listed in ``violations``.
    """
    _require_rres(m, "unitality")
    d = derive(m)
    n = m.size
    mul, div, leq = m.mul, m.div, d.leq
    r = np.arange(n)
    eye = np.eye(n, dtype=bool)
    units = np.diag(div)

    strictly_below = leq & ~eye
    maximal = tuple(int(x) for x in r if not strictly_below[x].any())
    tops = [int(t) for t in r if leq[:, t].all()]
    bottoms = [int(b) for b in r if leq[b, :].all()]
    top = tops[0] if tops else None
    bottom = bottoms[0] if bottoms else None
    left_ids = tuple(int(e) for e in r if (mul[e] == r).all())

    const_unit = bool((units == units[0]).all())
    acts = bool((mul[units] == r[None, :]).all())  # (x/x) y = y
    has_left = bool(left_ids)
    unital = const_unit
    unit = int(units[0]) if unital else None

    v: list[tuple[str, tuple]] = []
    for x in r:
        above = np.flatnonzero(strictly_below[units[x]])
        if len(above):
            v.append(("PREUNITAL_MAXIMAL", (int(x), int(above[0]))))
            break
    # (x/x) y / y = x/x
    w = _first(div[mul[units][:, r], r[None, :]] != units[:, None])
    if w is not None:
        v.append(("PREUNITAL_IDENTITY", w))
    if top is not None:
        w = _first(units != top)
        if w is not None:
            v.append(("PREUNITAL_TOP", w))
    if not (const_unit == acts == has_left):
        v.append(("UNITAL_EQUIVALENCE", (int(const_unit), int(acts), int(has_left))))
    if unital:
        if unit not in left_ids:
            v.append(("UNIT_IS_LEFT_IDENTITY", (unit,)))
        for e in left_ids:
            if not leq[e, unit]:
                v.append(("UNIT_IS_MAXIMUM", (e,)))
                break
        if len(left_ids) != 1:
            v.append(("FINITE_UNIQUE_LEFT_IDENTITY", left_ids))
    if bottom is not None and not leq[:, div[bottom, bottom]].all():
        v.append(("BOTTOM_GIVES_TOP", (bottom, int(np.flatnonzero(~leq[:, div[bottom, bottom]])[0]))))
    if top is not None:
        if not unital:
            v.append(("TOP_GIVES_UNITAL", (top,)))
        sq = d.sqcap
        w = _first(~(leq[sq, r[None, :]] & leq[sq, r[:, None]]))
        if w is not None:
            v.append(("TOP_GIVES_LOWER_BOUND", w))
        if bottom is None:
            v.append(("TOP_GIVES_BOTTOM", (top,)))
    record = UnitalityRecord(
        is_unital=unital,
        unit=unit,
        left_identities=left_ids,
        maximal_elements=maximal,
        top=top,
        bottom=bottom,
        const_unit=const_unit,
        acts_as_left_identity=acts,
        has_left_identity=has_left,
        violations=tuple(v),
    )
    if strict and v:
        name, witness = v[0]
        raise TheoremViolation(f"{name} fails on {m!r}", witness=witness)
    return record


@dataclass(frozen=True)
class TopCommVerdict:
    holds: bool
    unit_is_top: bool
    sqcap_commutative: bool
    ideal_is_subnarhoop: bool
    ideal_is_semilattice: bool
    witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["witness"] = None if self.witness is None else list(self.witness)
        return out


def check_top_iff_commutative(m: FiniteMagma) -> TopCommVerdict:
    """On a unital narhoop: ``1`` is the top iff ⊓ is commutative, and
    ``(1]`` is a subnarhoop whose ⊓-reduct is a semilattice."""
    c = classify(m)
    if not c.is_unital:
        raise PreconditionError("check_top_iff_commutative needs a unital model (x/x constant)")
    if not c.is_narhoop:
        raise PreconditionError("check_top_iff_commutative needs a narhoop")
    d = derive(m)
    one = int(m.div[0, 0])
    unit_is_top = bool(d.leq[:, one].all())
    sq = d.sqcap
    comm = bool((sq == sq.T).all())
    ideal = principal_ideal(m, one)
    idx = np.array(ideal.members)
    inside = np.zeros(m.size, dtype=bool)
    inside[idx] = True
    sub = bool(inside[m.mul[np.ix_(idx, idx)]].all() and inside[m.div[np.ix_(idx, idx)]].all())
    semilattice = classify_reduct(ideal).is_semilattice
    witness = None
    if unit_is_top != comm:
        witness = _first(sq != sq.T) if not comm else (int(np.flatnonzero(~d.leq[:, one])[0]),)
    elif not sub:
        pairs = np.argwhere(~inside[m.mul[np.ix_(idx, idx)]] | ~inside[m.div[np.ix_(idx, idx)]])
        witness = (int(idx[pairs[0][0]]), int(idx[pairs[0][1]]))
    return TopCommVerdict(
        holds=unit_is_top == comm and sub and semilattice,
        unit_is_top=unit_is_top,
        sqcap_commutative=comm,
        ideal_is_subnarhoop=sub,
        ideal_is_semilattice=semilattice,
        witness=witness,
    )
