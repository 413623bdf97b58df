"""Isomorphism-invariant canonical forms by exhaustive relabeling."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..core import FiniteMagma


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically least ``(mul, div)`` over all carrier relabelings,
    compared on ``mul`` then ``div`` flattened row-major."""

    size: int
    canonical_mul: tuple[tuple[int, ...], ...]
    canonical_div: tuple[tuple[int, ...], ...]

    def key(self) -> tuple[int, ...]:
        return sum(self.canonical_mul, ()) + sum(self.canonical_div, ())

    def magma(self) -> FiniteMagma:
        return FiniteMagma(self.size, self.canonical_mul, self.canonical_div)

    @classmethod
    def from_key(cls, n: int, key) -> CanonicalForm:
        key = [int(v) for v in key]
        mul = tuple(tuple(key[i * n:(i + 1) * n]) for i in range(n))
        div = tuple(tuple(key[n * n + i * n:n * n + (i + 1) * n]) for i in range(n))
        return cls(n, mul, div)


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[np.ndarray, np.ndarray]:
    sig = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return sig, np.argsort(sig, axis=1)


def relabel_all(tables: np.ndarray) -> np.ndarray:
    """All relabelings of stacked tables.

    ``tables`` has shape ``(B, 2, n, n)`` (mul, div).  Returns
    ``(B, P, 2 n^2)`` flattened images, ``P = n!``, where permutation ``s``
    sends table ``T`` to ``T'[i][j] = s[T[s^-1 i][s^-1 j]]``.
    """
    B, _, n, _ = tables.shape
    sig, inv = _perms(n)
    P = len(sig)
    rows = inv[:, :, None]
    cols = inv[:, None, :]
    moved = tables[:, :, rows, cols]  # (B, 2, P, n, n)
    moved = np.moveaxis(moved, 2, 1)  # (B, P, 2, n, n)
    out = sig[np.arange(P)[None, :, None, None, None], moved]
    return out.reshape(B, P, 2 * n * n)


def _lex_argmin(keys: np.ndarray) -> np.ndarray:
    # keys: (B, P, L) -> index of the lexicographically least row per batch entry
    B, P, L = keys.shape
    alive = np.ones((B, P), dtype=bool)
    big = np.iinfo(keys.dtype).max
    for c in range(L):
        col = keys[:, :, c]
        best = np.where(alive, col, big).min(axis=1)
        alive &= col == best[:, None]
        if (alive.sum(axis=1) == 1).all():
            break
    return alive.argmax(axis=1)


def canonical_keys(mul: np.ndarray, div: np.ndarray, chunk: int | None = None) -> np.ndarray:
    """Canonical flattened ``(mul, div)`` rows for stacked models, shape ``(B, 2n^2)``."""
    mul = np.asarray(mul, dtype=np.int8)
    div = np.asarray(div, dtype=np.int8)
    B = len(mul)
    n = mul.shape[-1] if B else 0
    out = np.empty((B, 2 * n * n), dtype=np.int8)
    if B == 0:
        return out
    P = len(_perms(n)[0])
    if chunk is None:
        chunk = max(1, 2_000_000 // (P * 2 * n * n))
    for start in range(0, B, chunk):
        tables = np.stack([mul[start:start + chunk], div[start:start + chunk]], axis=1)
        images = relabel_all(tables)
        best = _lex_argmin(images)
        out[start:start + chunk] = images[np.arange(len(best)), best]
    return out


def canonicalize(m: FiniteMagma) -> CanonicalForm:
    key = canonical_keys(m.mul[None], m.div[None])[0]
    return CanonicalForm.from_key(m.size, key)


def unique_sorted(keys: np.ndarray) -> np.ndarray:
    """Distinct rows in ascending lexicographic order."""
    if len(keys) == 0:
        return keys
    return np.unique(keys, axis=0)
