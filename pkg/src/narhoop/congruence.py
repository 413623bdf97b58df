"""Congruences, unital congruences and normal subnarhoops.

A congruence is stored as a :class:`Partition` whose block ids are numbered
in order of first appearance, so equal relations compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import FiniteMagma, check_axioms, classify, derive
from .core.axioms import NARHOOP_BASIS
from .core.terms import eval_term, x, y, z
from .errors import PreconditionError, TheoremViolation
from .structure import unitality


@dataclass(frozen=True)
class Partition:
    block_of: tuple[int, ...]

    def __post_init__(self):
        relabel: dict[int, int] = {}
        normal = tuple(relabel.setdefault(b, len(relabel)) for b in self.block_of)
        object.__setattr__(self, "block_of", normal)

    @classmethod
    def from_blocks(cls, blocks, n: int) -> Partition:
        block_of = [-1] * n
        for i, block in enumerate(blocks):
            for v in block:
                if block_of[v] != -1:
                    raise PreconditionError(f"element {v} appears in two blocks")
                block_of[v] = i
        if -1 in block_of:
            raise PreconditionError(f"element {block_of.index(-1)} is in no block")
        return cls(tuple(block_of))

    @classmethod
    def identity(cls, n: int) -> Partition:
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> Partition:
        return cls((0,) * n)

    @property
    def size(self) -> int:
        return len(self.block_of)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(max(self.block_of) + 1)]
        for v, b in enumerate(self.block_of):
            out[b].append(v)
        return tuple(tuple(b) for b in out)

    def related(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def relation(self) -> np.ndarray:
        b = np.array(self.block_of)
        return b[:, None] == b[None, :]

    def join(self, other: Partition) -> Partition:
        uf = _UnionFind(self.size)
        for part in (self, other):
            for block in part.blocks:
                for v in block[1:]:
                    uf.union(block[0], v)
        return uf.partition()

    def to_list(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True

    def partition(self) -> Partition:
        return Partition(tuple(self.find(v) for v in range(len(self.parent))))


def respects(m: FiniteMagma, p: Partition) -> bool:
    """``x θ x'`` and ``y θ y'`` imply ``xy θ x'y'`` and ``x/y θ x'/y'``."""
    b = np.array(p.block_of)
    rel = b[:, None] == b[None, :]
    for t in (m.mul, m.div):
        img = b[t]  # block of t[x, y]
        # compatibility in each argument separately is enough for an equivalence
        left = (img[:, None, :] == img[None, :, :]).all(axis=2)
        right = (img.T[:, None, :] == img.T[None, :, :]).all(axis=2)
        if (rel & ~left).any() or (rel & ~right).any():
            return False
    return True


def _unit_blocks(m: FiniteMagma, p: Partition) -> set[int]:
    return {p.block_of[int(u)] for u in np.diag(m.div)}


@dataclass(frozen=True)
class CongruenceInfo:
    partition: Partition
    is_congruence: bool
    is_unital: bool
    n_theta: tuple[int, ...] | None = None

    @classmethod
    def of(cls, m: FiniteMagma, p: Partition) -> CongruenceInfo:
        units = _unit_blocks(m, p)
        unital = len(units) == 1
        n_theta = p.blocks[units.pop()] if unital else None
        return cls(p, respects(m, p), unital, n_theta)

    def to_dict(self) -> dict:
        return {
            "blocks": self.partition.to_list(),
            "is_congruence": self.is_congruence,
            "is_unital": self.is_unital,
            "n_theta": None if self.n_theta is None else list(self.n_theta),
        }


def _close(m: FiniteMagma, pairs) -> Partition:
    """Smallest congruence containing ``pairs``."""
    n = m.size
    uf = _UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    tables = (m.mul.tolist(), m.div.tolist())
    changed = True
    while changed:
        changed = False
        for v in range(n):
            r = uf.find(v)
            if r == v:
                continue
            for t in tables:
                for w in range(n):
                    changed |= uf.union(t[v][w], t[r][w])
                    changed |= uf.union(t[w][v], t[w][r])
    return uf.partition()


def principal_congruence(m: FiniteMagma, a: int, b: int) -> CongruenceInfo:
    """``Cg(a, b)``, the least congruence identifying ``a`` and ``b``."""
    for v in (a, b):
        if not 0 <= v < m.size:
            raise PreconditionError(f"{v} is not in the carrier")
    return CongruenceInfo.of(m, _close(m, [(a, b)]))


@lru_cache(maxsize=4096)
def _congruence_partitions(m: FiniteMagma) -> tuple[Partition, ...]:
    found = {Partition.identity(m.size)}
    principal = {_close(m, [(a, b)]) for a, b in combinations(range(m.size), 2)}
    found |= principal
    frontier = set(found)
    while frontier:
        # the equivalence join of two congruences is again a congruence
        new = {p.join(q) for p in frontier for q in principal} - found
        found |= new
        frontier = new
    return tuple(sorted(found, key=lambda p: (-len(p.blocks), p.block_of)))


def all_congruences(m: FiniteMagma) -> list[CongruenceInfo]:
    """Every congruence, from principal congruences closed under joins.

    Ordered from the finest (identity) towards the coarsest.
    """
    return [CongruenceInfo.of(m, p) for p in _congruence_partitions(m)]


def set_partitions(n: int):
    """All partitions of ``{0..n-1}`` as restricted growth strings."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield Partition(tuple(prefix))
            return
        for b in range(top + 2):
            yield from grow(prefix + [b], max(top, b))
    yield from grow([0], 0)


def congruences_by_filter(m: FiniteMagma) -> list[CongruenceInfo]:
    """Independent route: test every set partition of the carrier."""
    found = [p for p in set_partitions(m.size) if respects(m, p)]
    found.sort(key=lambda p: (-len(p.blocks), p.block_of))
    return [CongruenceInfo.of(m, p) for p in found]


def quotient(m: FiniteMagma, c: CongruenceInfo) -> FiniteMagma:
    """``A/θ`` on block ids; checks that narhoops and unital congruences
    give narhoop and unital quotients."""
    p = c.partition
    if not respects(m, p):
        raise PreconditionError(f"partition {p.to_list()} is not a congruence")
    reps = [blk[0] for blk in p.blocks]
    b = np.array(p.block_of)
    q = FiniteMagma(len(reps), b[m.mul[np.ix_(reps, reps)]], b[m.div[np.ix_(reps, reps)]])
    if classify(m).is_narhoop:
        report = check_axioms(q, NARHOOP_BASIS)
        if report.failing():
            name = report.failing()[0]
            raise TheoremViolation(f"quotient fails {name}", witness=report[name].witness)
        units = _unit_blocks(m, p)
        if len(units) == 1:
            unit = units.pop()
            rec = unitality(q, strict=False)
            if not rec.is_unital or rec.unit != unit:
                raise TheoremViolation("quotient by a unital congruence is not unital", witness=(unit,))
    return q


# (index, defining term in x, y with argument z)
PHI_TERMS = {
    1: ((z * x) * y) / (x * y),
    2: ((z * x) / y) / (x / y),
    3: (x * (z * y)) / (x * y),
    4: (x / (z * y)) / (x / y),
    5: (x * y) / (x * (z * y)),
    6: (x / y) / (x / (z * y)),
}


def inn_maps(m: FiniteMagma) -> np.ndarray:
    """All generator maps at once: ``out[i-1, x, y, z] = φ_{i,x,y}(z)``."""
    mul, div = m.mul, m.div
    n = m.size
    X = np.arange(n)[:, None, None]
    Y = np.arange(n)[None, :, None]
    Z = np.arange(n)[None, None, :]
    zx = mul[Z, X]
    zy = mul[Z, Y]
    xy = mul[X, Y]
    x_y = div[X, Y]
    out = np.empty((6, n, n, n), dtype=np.int64)
    out[0] = div[mul[zx, Y], xy]
    out[1] = div[div[zx, Y], x_y]
    out[2] = div[mul[X, zy], xy]
    out[3] = div[div[X, zy], x_y]
    out[4] = div[xy, mul[X, zy]]
    out[5] = div[x_y, div[X, zy]]
    return out


@dataclass(frozen=True)
class InnGenerator:
    index: int
    x: int
    y: int
    mapping: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.mapping[v]


def inn_generators(m: FiniteMagma) -> list[InnGenerator]:
    """The ``6 n^2`` maps ``φ_{i,x,y}``, each checked against its term."""
    maps = inn_maps(m)
    out = []
    for i, term in PHI_TERMS.items():
        for a in m.carrier:
            for b in m.carrier:
                mapping = tuple(int(v) for v in maps[i - 1, a, b])
                for c in m.carrier:
                    direct = eval_term(term, m.mul, m.div, {"x": a, "y": b, "z": c})
                    if direct != mapping[c]:
                        raise TheoremViolation(
                            f"table evaluation of phi_{i} disagrees with its term", witness=(i, a, b, c)
                        )
                out.append(InnGenerator(i, a, b, mapping))
    return out


def _subset_tuple(m: FiniteMagma, subset) -> tuple[int, ...]:
    members = tuple(sorted(set(int(v) for v in subset)))
    if not members:
        raise PreconditionError("the subset must be nonempty")
    if members[0] < 0 or members[-1] >= m.size:
        raise PreconditionError(f"subset {list(members)} is not inside the carrier")
    return members


@dataclass(frozen=True)
class SubsetAnalysis:
    """Normality diagnostics; ``witnesses`` maps each failed condition to
    the data that falsifies it."""

    subset: tuple[int, ...]
    is_subnarhoop: bool
    is_upward_closed: bool
    is_inn_invariant: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_normal(self) -> bool:
        return self.is_subnarhoop and self.is_upward_closed and self.is_inn_invariant

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "is_subnarhoop": self.is_subnarhoop,
            "is_upward_closed": self.is_upward_closed,
            "is_inn_invariant": self.is_inn_invariant,
            "is_normal": self.is_normal,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def _analyse(m: FiniteMagma, members: tuple[int, ...], maps: np.ndarray) -> SubsetAnalysis:
    inside = np.zeros(m.size, dtype=bool)
    idx = np.array(members)
    inside[idx] = True
    witnesses = {}

    sub = True
    for op, t in (("mul", m.mul), ("div", m.div)):
        w = _first(~inside[t[np.ix_(idx, idx)]])
        if w is not None:
            witnesses["subnarhoop"] = (op, int(idx[w[0]]), int(idx[w[1]]))
            sub = False
            break
    up = derive(m).leq[idx] & ~inside[None, :]
    w = _first(up)
    if w is not None:
        witnesses["upward_closed"] = (int(idx[w[0]]), w[1])
    # generator closure: every φ maps N into N
    w = _first(~inside[maps[..., idx]])
    if w is not None:
        witnesses["inn_invariant"] = (w[0] + 1, w[1], w[2], int(idx[w[3]]))
    return SubsetAnalysis(
        members, sub, "upward_closed" not in witnesses, "inn_invariant" not in witnesses, witnesses
    )


def _require_narhoop(m: FiniteMagma, what: str) -> None:
    if not classify(m).is_narhoop:
        raise PreconditionError(f"{what} needs a narhoop (N1-N4)")


def check_normal(m: FiniteMagma, subset) -> SubsetAnalysis:
    """Subnarhoop, upward closure and invariance under the generator maps.

    Closure under every ``φ_{i,x,y}`` is the same as invariance under the
    semigroup they generate.
    """
    _require_narhoop(m, "check_normal")
    return _analyse(m, _subset_tuple(m, subset), inn_maps(m))


def normal_subsets(m: FiniteMagma) -> list[tuple[int, ...]]:
    """Every nonempty normal subnarhoop, by size then members."""
    _require_narhoop(m, "normal_subsets")
    maps = inn_maps(m)
    out = []
    for k in range(1, m.size + 1):
        for members in combinations(range(m.size), k):
            if _analyse(m, members, maps).is_normal:
                out.append(members)
    return out


def upward_closure_gaps(m: FiniteMagma) -> list[SubsetAnalysis]:
    """Nonempty subsets that are Inn-invariant subnarhoops but not
    upward-closed, i.e. examples where condition (2) is not implied by
    the other two."""
    _require_narhoop(m, "upward_closure_gaps")
    maps = inn_maps(m)
    out = []
    for k in range(1, m.size + 1):
        for members in combinations(range(m.size), k):
            a = _analyse(m, members, maps)
            if a.is_subnarhoop and a.is_inn_invariant and not a.is_upward_closed:
                out.append(a)
    return out


@dataclass(frozen=True)
class PreorderRecord:
    relation: np.ndarray  # relation[x, y]: x ⪯ y, i.e. y/x in N
    is_reflexive: bool
    is_transitive: bool
    compatible_mul: bool
    compatible_div: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.is_reflexive and self.is_transitive and self.compatible_mul and self.compatible_div


def preorder_of(m: FiniteMagma, members) -> PreorderRecord:
    """``x ⪯ y`` iff ``y/x`` lies in the subset, with its diagnostics."""
    n = m.size
    inside = np.zeros(n, dtype=bool)
    inside[list(members)] = True
    rel = inside[m.div.T]  # rel[x, y] = y/x in N
    witnesses = {}
    w = _first(~np.diag(rel))
    if w is not None:
        witnesses["reflexive"] = (w[0],)
    w = _first(rel[:, :, None] & rel[None, :, :] & ~rel[:, None, :])
    if w is not None:
        witnesses["transitive"] = w
    # x ⪯ y implies xz ⪯ yz and x/z ⪯ y/z
    for name, t in (("compatible_mul", m.mul), ("compatible_div", m.div)):
        w = _first(rel[:, :, None] & ~rel[t[:, None, :], t[None, :, :]])
        if w is not None:
            witnesses[name] = w
    return PreorderRecord(
        rel, "reflexive" not in witnesses, "transitive" not in witnesses,
        "compatible_mul" not in witnesses, "compatible_div" not in witnesses, witnesses,
    )


def n_preorder(m: FiniteMagma, subset) -> PreorderRecord:
    """The relation ``x ⪯_N y`` iff ``y/x ∈ N`` for a normal ``N``; raises
    ``TheoremViolation`` unless it is a preorder compatible with ``*z`` and
    ``/z``."""
    analysis = check_normal(m, subset)
    if not analysis.is_normal:
        raise PreconditionError(f"subset {list(analysis.subset)} is not normal: {analysis.witnesses}")
    rec = preorder_of(m, analysis.subset)
    if not rec.holds:
        name, w = next(iter(rec.witnesses.items()))
        raise TheoremViolation(f"preorder property {name} fails", witness=w)
    return rec


def theta_of(m: FiniteMagma, members) -> Partition | None:
    """``x θ y`` iff ``x/y`` and ``y/x`` lie in the subset, or ``None`` when
    that relation is not an equivalence."""
    inside = np.zeros(m.size, dtype=bool)
    inside[list(members)] = True
    both = inside[m.div] & inside[m.div.T]
    if not np.diag(both).all() or (both[:, :, None] & both[None, :, :] & ~both[:, None, :]).any():
        return None
    return Partition(tuple(int(np.argmax(row)) for row in both))


def theta_from_N(m: FiniteMagma, subset) -> CongruenceInfo:
    """``θ_N`` for a normal ``N``: must be a unital congruence with unit
    class ``N``."""
    analysis = check_normal(m, subset)
    if not analysis.is_normal:
        raise PreconditionError(f"subset {list(analysis.subset)} is not normal: {analysis.witnesses}")
    p = theta_of(m, analysis.subset)
    if p is None:
        raise TheoremViolation("θ_N is not an equivalence relation", witness=analysis.subset)
    info = CongruenceInfo.of(m, p)
    if not info.is_congruence:
        raise TheoremViolation("θ_N is not a congruence", witness=tuple(p.block_of))
    if not info.is_unital:
        raise TheoremViolation("θ_N is not unital", witness=tuple(p.block_of))
    if info.n_theta != analysis.subset:
        raise TheoremViolation("the unit class of θ_N differs from N", witness=info.n_theta)
    return info


def n_from_theta(m: FiniteMagma, c: CongruenceInfo) -> tuple[int, ...]:
    """Unit class ``N_θ`` of a unital congruence on a narhoop.

    Both descriptions (related to some / to every ``y/y``) are computed;
    the result must be normal and must reproduce ``θ`` through
    ``x θ y iff x/y, y/x ∈ N_θ``.
    """
    _require_narhoop(m, "n_from_theta")
    p = c.partition
    if not respects(m, p):
        raise PreconditionError(f"partition {p.to_list()} is not a congruence")
    rel = p.relation()
    units = np.diag(m.div)
    some = tuple(int(v) for v in np.flatnonzero(rel[:, units].any(axis=1)))
    every = tuple(int(v) for v in np.flatnonzero(rel[:, units].all(axis=1)))
    if len(_unit_blocks(m, p)) != 1:
        raise PreconditionError(f"partition {p.to_list()} is not unital")
    if some != every:
        raise TheoremViolation("the two descriptions of N_θ differ", witness=(some, every))
    analysis = check_normal(m, some)
    if not analysis.is_normal:
        raise TheoremViolation(f"N_θ = {list(some)} is not normal", witness=analysis.witnesses)
    back = theta_of(m, some)
    if back != p:
        raise TheoremViolation(
            "θ is not recovered from N_θ", witness=None if back is None else tuple(back.block_of)
        )
    return some


@dataclass(frozen=True)
class Correspondence:
    """Unital congruences against nonempty normal subnarhoops of a narhoop."""

    unital_congruences: tuple[Partition, ...]
    normal_subsets: tuple[tuple[int, ...], ...]
    n_of_theta: tuple[tuple[int, ...], ...]
    theta_of_n: tuple[Partition, ...]

    @property
    def is_bijection(self) -> bool:
        return (
            sorted(self.n_of_theta) == sorted(self.normal_subsets)
            and sorted(self.theta_of_n, key=lambda p: p.block_of)
            == sorted(self.unital_congruences, key=lambda p: p.block_of)
        )


def correspondence(m: FiniteMagma) -> Correspondence:
    """Both maps over the whole model; ``TheoremViolation`` on any failure."""
    unital = tuple(c.partition for c in all_congruences(m) if c.is_unital)
    normals = tuple(normal_subsets(m))
    n_of = tuple(n_from_theta(m, CongruenceInfo.of(m, p)) for p in unital)
    theta_of_n = tuple(theta_from_N(m, N).partition for N in normals)
    corr = Correspondence(unital, normals, n_of, theta_of_n)
    if not corr.is_bijection:
        raise TheoremViolation("N_θ and θ_N are not mutually inverse", witness=(n_of, normals))
    return corr
