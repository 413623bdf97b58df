"""Generate-and-filter enumeration: the independent route.

For ``n <= 3`` every pair of tables (``n^(2n^2)`` candidates) is generated
and tested.  The test runs in a compiled loop with class predicates written
out by hand, separately from the formula machinery in ``core``; every model
it accepts is then re-classified by ``core.class_mask`` and any
disagreement is an error.

Beyond ``n = 3`` the full space is out of reach and constrained candidate
spaces are used instead:

* right quasigroups: every column of ``*`` a permutation and the matching
  column of ``/`` its inverse.  ``(x/y)y = x`` and ``(xy)/y = x`` force
  exactly this shape, so the space is complete for the class.
* the remaining classes: a poset ``P`` from each isomorphism class and, per
  column, pairs that are residuated over ``P`` and reproduce ``P`` through
  the pointwise order condition.  This space is exactly the right-residuated
  models with that order, so it is complete for ``rres``; for the narhoop
  classes it is complete only if they sit inside ``rres``, which is what a
  cross-check against the unconstrained backtracking search then tests.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
from numba import njit

from ..core import CLASSES, class_mask
from ..errors import ConsistencyError, UsageError
from .posets import posets_up_to_isomorphism, residuated_columns

CLASS_BITS = {cls: 1 << i for i, cls in enumerate(CLASSES)}

#: Largest candidate space the constrained generators will materialize.
MAX_CANDIDATES = 5_000_000


@njit(cache=True)
def _leq(sq, a, b):
    return a == sq[b, a]


@njit(cache=True)
def _is_rres(mul, div, sq, n):
    for x in range(n):
        if not _leq(sq, x, x):
            return False
    for x in range(n):
        for y in range(n):
            if x != y and _leq(sq, x, y) and _leq(sq, y, x):
                return False
            for z in range(n):
                if _leq(sq, x, y) and _leq(sq, y, z) and not _leq(sq, x, z):
                    return False
                if _leq(sq, mul[x, y], z) != _leq(sq, x, div[z, y]):
                    return False
    return True


@njit(cache=True)
def _is_narhoop(mul, div, sq, n):
    for x in range(n):
        for y in range(n):
            m = sq[x, y]
            if sq[m, x] != m:
                return False
            if not _leq(sq, x, div[mul[x, y], y]):
                return False
            for z in range(n):
                if not _leq(sq, mul[m, z], mul[x, z]):
                    return False
                if not _leq(sq, div[m, z], div[x, z]):
                    return False
    return True


@njit(cache=True)
def _is_rq(mul, div, sq, n):
    for x in range(n):
        for y in range(n):
            if sq[x, y] != x or div[mul[x, y], y] != x:
                return False
    return True


@njit(cache=True)
def _is_rh(mul, div, sq, n):
    for x in range(n):
        for y in range(n):
            if sq[x, y] != sq[y, x] or mul[div[x, x], y] != y:
                return False
            for z in range(n):
                if div[x, mul[y, z]] != div[div[x, z], y]:
                    return False
    return True


@njit(cache=True)
def _bruteforce(n, tables):
    """Scan all (div, mul) pairs; return ``(div index, mul index, class bits)``."""
    T = tables.shape[0]
    cap = 1024
    out = np.empty((cap, 3), dtype=np.int64)
    count = 0
    sq = np.empty((n, n), dtype=np.int64)
    for di in range(T):
        div = tables[di]
        for mi in range(T):
            mul = tables[mi]
            refl = True
            for x in range(n):
                if mul[div[x, x], x] != x:
                    refl = False
                    break
            for x in range(n):
                for y in range(n):
                    sq[x, y] = mul[div[x, y], y]
            n1 = True
            for x in range(n):
                for y in range(n):
                    if sq[sq[x, y], x] != sq[x, y]:
                        n1 = False
                        break
                if not n1:
                    break
            # reflexivity is an instance of the rres, RQ and RH definitions,
            # N1 is part of the narhoop basis
            if not refl and not n1:
                continue
            bits = 0
            if refl and _is_rres(mul, div, sq, n):
                bits |= 1
            nar = n1 and _is_narhoop(mul, div, sq, n)
            if nar:
                bits |= 2
            if refl and _is_rq(mul, div, sq, n):
                bits |= 4
            if refl and _is_rh(mul, div, sq, n):
                bits |= 8
            if nar:
                unital = True
                for x in range(n):
                    if div[x, x] != div[0, 0]:
                        unital = False
                if unital:
                    bits |= 16
            if bits:
                if count == cap:
                    bigger = np.empty((2 * cap, 3), dtype=np.int64)
                    bigger[:cap] = out
                    out = bigger
                    cap *= 2
                out[count, 0] = di
                out[count, 1] = mi
                out[count, 2] = bits
                count += 1
    return out[:count]


@njit(cache=True)
def _class_bits(mul, div, n):
    sq = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            sq[x, y] = mul[div[x, y], y]
    bits = 0
    if _is_rres(mul, div, sq, n):
        bits |= 1
    if _is_narhoop(mul, div, sq, n):
        bits |= 2
        unital = True
        for x in range(n):
            if div[x, x] != div[0, 0]:
                unital = False
        if unital:
            bits |= 16
    if _is_rq(mul, div, sq, n):
        bits |= 4
    if _is_rh(mul, div, sq, n):
        bits |= 8
    return bits


@njit(cache=True)
def _class_bits_batch(mul, div, n):
    out = np.empty(mul.shape[0], dtype=np.int64)
    for i in range(mul.shape[0]):
        out[i] = _class_bits(mul[i], div[i], n)
    return out


def scan_classes(m) -> list[str]:
    """Classes of a single model according to the scan's own predicates."""
    bits = _class_bits(m.mul.astype(np.int64), m.div.astype(np.int64), m.size)
    return [cls for cls, bit in CLASS_BITS.items() if bits & bit]


def all_tables(n: int) -> np.ndarray:
    return np.array(list(itertools.product(range(n), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)


@lru_cache(maxsize=None)
def full_space(n: int) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Every labeled model of each class on ``n <= 3`` points."""
    if n > 3:
        raise UsageError(f"full table space on {n} points has {n ** (2 * n * n)} candidates")
    tables = all_tables(n)
    hits = _bruteforce(n, tables)
    mul = tables[hits[:, 1]]
    div = tables[hits[:, 0]]
    out = {}
    for cls, bit in CLASS_BITS.items():
        sel = (hits[:, 2] & bit) != 0
        confirmed = class_mask(cls, mul, div)
        if not (confirmed[sel]).all():
            raise ConsistencyError(f"core rejects a {cls} model accepted by the scan")
        out[cls] = (mul[sel], div[sel])
    # everything the scan accepted for some class was checked against core for
    # every class, so a model core places in a class the scan missed is caught
    for cls, bit in CLASS_BITS.items():
        extra = class_mask(cls, mul, div) & ((hits[:, 2] & bit) == 0)
        if extra.any():
            raise ConsistencyError(f"core accepts a {cls} model the scan rejected")
    return out


def _product_columns(columns: list[np.ndarray], n: int) -> tuple[np.ndarray, np.ndarray]:
    sizes = [len(c) for c in columns]
    total = int(np.prod(sizes))
    if total > MAX_CANDIDATES:
        raise UsageError(f"constrained candidate space too large ({total} > {MAX_CANDIDATES})")
    if total == 0:
        empty = np.empty((0, n, n), dtype=np.int64)
        return empty, empty
    idx = np.array(list(itertools.product(*(range(s) for s in sizes))), dtype=np.int64)
    mul = np.empty((total, n, n), dtype=np.int64)
    div = np.empty((total, n, n), dtype=np.int64)
    for x in range(n):
        chosen = columns[x][idx[:, x]]  # (total, 2, n)
        mul[:, :, x] = chosen[:, 0]
        div[:, :, x] = chosen[:, 1]
    return mul, div


def permutation_space(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tables whose ``*`` columns are permutations with ``/`` columns inverse."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    pairs = np.stack([perms, np.argsort(perms, axis=1)], axis=1)
    return _product_columns([pairs] * n, n)


def poset_space(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Right-residuated models whose derived order is a representative poset."""
    muls, divs = [], []
    for leq in posets_up_to_isomorphism(n):
        cols = [residuated_columns(leq, x) for x in range(n)]
        mul, div = _product_columns(cols, n)
        muls.append(mul)
        divs.append(div)
    return np.concatenate(muls), np.concatenate(divs)


def constrained_space(cls: str, n: int) -> tuple[np.ndarray, np.ndarray]:
    if cls == "right_quasigroup":
        return permutation_space(n)
    return poset_space(n)


def generate_and_filter(cls: str, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Labeled models of ``cls`` (one or more per isomorphism class)."""
    if cls not in CLASS_BITS:
        raise UsageError(f"unknown class {cls!r}; expected one of {', '.join(CLASSES)}")
    if n <= 3:
        return full_space(n)[cls]
    mul, div = constrained_space(cls, n)
    keep = (_class_bits_batch(mul, div, n) & CLASS_BITS[cls]) != 0
    mul, div = mul[keep], div[keep]
    if not class_mask(cls, mul, div).all():
        raise ConsistencyError(f"core rejects a {cls} model accepted by the scan")
    return mul, div
