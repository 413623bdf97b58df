"""Finite algebras with two binary operations given by Cayley tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import MagmaError


def _as_table(rows, n: int, name: str) -> np.ndarray:
    try:
        table = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MagmaError(f"{name} table is not a rectangular integer array") from exc
    if table.shape != (n, n):
        raise MagmaError(f"{name} table has shape {table.shape}, expected {(n, n)}")
    bad = np.argwhere((table < 0) | (table >= n))
    if len(bad):
        x, y = bad[0]
        raise MagmaError(
            f"{name}[{x}][{y}] = {table[x, y]} lies outside the carrier 0..{n - 1}"
        )
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class FiniteMagma:
    """Carrier ``{0, ..., size-1}`` with tables ``mul[x][y] = x*y`` and
    ``div[x][y] = x/y``.

    Instances are immutable and hashable; equality is equality of tables.
    """

    size: int
    mul: np.ndarray
    div: np.ndarray
    _key: bytes = field(init=False, repr=False)

    def __init__(self, size: int, mul, div):
        if not isinstance(size, (int, np.integer)) or size < 1:
            raise MagmaError(f"size must be a positive integer, got {size!r}")
        size = int(size)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "mul", _as_table(mul, size, "mul"))
        object.__setattr__(self, "div", _as_table(div, size, "div"))
        key = bytes([size]) + self.mul.astype(np.int8).tobytes() + self.div.astype(np.int8).tobytes()
        object.__setattr__(self, "_key", key)

    @classmethod
    def from_tables(cls, mul, div) -> FiniteMagma:
        return cls(len(mul), mul, div)

    def __eq__(self, other):
        if not isinstance(other, FiniteMagma):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FiniteMagma(size={self.size}, mul={self.mul.tolist()}, div={self.div.tolist()})"

    @property
    def carrier(self) -> range:
        return range(self.size)

    def relabel(self, perm: Sequence[int]) -> FiniteMagma:
        """Image of the algebra under the bijection ``x -> perm[x]``."""
        sigma = np.asarray(perm, dtype=np.int64)
        if sorted(sigma.tolist()) != list(range(self.size)):
            raise MagmaError(f"{list(perm)} is not a permutation of the carrier")
        inv = np.argsort(sigma)
        mul = sigma[self.mul[np.ix_(inv, inv)]]
        div = sigma[self.div[np.ix_(inv, inv)]]
        return FiniteMagma(self.size, mul, div)

    def to_dict(self) -> dict:
        return {"size": self.size, "mul": self.mul.tolist(), "div": self.div.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> FiniteMagma:
        try:
            return cls(data["size"], data["mul"], data["div"])
        except (KeyError, TypeError) as exc:
            raise MagmaError(f"model record needs size, mul and div: {data!r}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> FiniteMagma:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MagmaError(f"invalid model JSON: {exc}") from exc
        return cls.from_dict(data)


def stack_tables(models: Iterable[FiniteMagma]) -> tuple[np.ndarray, np.ndarray]:
    """Stack same-size models into ``(B, n, n)`` mul and div arrays."""
    models = list(models)
    if not models:
        raise MagmaError("cannot stack an empty list of models")
    n = models[0].size
    if any(m.size != n for m in models):
        raise MagmaError("all stacked models must have the same size")
    mul = np.stack([m.mul for m in models]).astype(np.int64)
    div = np.stack([m.div for m in models]).astype(np.int64)
    return mul, div
