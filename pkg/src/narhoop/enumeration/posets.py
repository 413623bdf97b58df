"""Finite posets up to isomorphism and residuated column pairs over them."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def _ideals(leq: np.ndarray) -> list[tuple[int, ...]]:
    # down-closed subsets of the current carrier
    k = len(leq)
    out = []
    for bits in range(1 << k):
        members = [i for i in range(k) if bits >> i & 1]
        if all(leq[j, i] <= (bits >> j & 1) for i in members for j in range(k)):
            out.append(tuple(members))
    return out


def _canonical_relation(leq: np.ndarray) -> bytes:
    n = len(leq)
    best = None
    for p in itertools.permutations(range(n)):
        q = np.argsort(p)
        key = leq[np.ix_(q, q)].tobytes()
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def posets_up_to_isomorphism(n: int) -> tuple[np.ndarray, ...]:
    """One ``leq`` matrix per isomorphism class of posets on ``n`` points.

    Built from naturally labeled posets: point ``k`` is added above an
    arbitrary order ideal of ``{0, ..., k-1}``.
    """
    layer = [np.ones((1, 1), dtype=bool)]
    for k in range(1, n):
        nxt = []
        for leq in layer:
            for ideal in _ideals(leq):
                new = np.zeros((k + 1, k + 1), dtype=bool)
                new[:k, :k] = leq
                new[k, k] = True
                new[list(ideal), k] = True
                nxt.append(new)
        layer = nxt
    seen = {}
    for leq in layer:
        seen.setdefault(_canonical_relation(leq), leq)
    return tuple(seen[k] for k in sorted(seen))


def residuated_columns(leq: np.ndarray, x: int) -> np.ndarray:
    """Admissible ``(column x of *, column x of /)`` pairs over a fixed poset.

    ``f[w] = w*x`` and ``g[y] = y/x`` must satisfy ``f(w) <= y iff
    w <= g(y)`` (right residuation in ``x``) and the pointwise order
    condition ``x <= y iff x = (y/x)*x = f(g(y))`` for every ``y``.

    Returns an array of shape ``(K, 2, n)``.
    """
    n = len(leq)
    maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64)
    # res[f, g] = all_{w,y} leq[f[w], y] == leq[w, g[y]]
    lhs = leq[maps[:, :, None], np.arange(n)[None, None, :]]  # (F, w, y)
    rhs = leq[np.arange(n)[None, :, None], maps[:, None, :]]  # (G, w, y)
    res = (lhs[:, None] == rhs[None, :]).all(axis=(2, 3))
    fi, gi = np.nonzero(res)
    f = maps[fi]
    g = maps[gi]
    fg = np.take_along_axis(f, g, axis=1)  # f(g(y))
    order_ok = ((fg == x) == leq[x][None, :]).all(axis=1)
    return np.stack([f[order_ok], g[order_ok]], axis=1)
