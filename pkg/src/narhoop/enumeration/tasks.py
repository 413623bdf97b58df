"""Enumeration tasks: which class, what size, and how to search."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from ..core import CLASS_AXIOMS, CLASSES, FiniteMagma
from ..errors import ConsistencyError, MagmaError, UsageError
from .canonical import CanonicalForm, canonical_keys, unique_sorted
from .kernel import run_search
from .oracle import generate_and_filter

MODES = ("backtracking", "generate_and_filter", "both")

# Clauses handed to the search.  Each class is searched with its defining
# axioms; for ``rres`` the componentwise residuation laws are added as well.
# They follow from residuation over a partial order, so no model is lost,
# and they are shallow enough to prune early.
SEARCH_AXIOMS = {cls: tuple(axs) for cls, axs in CLASS_AXIOMS.items()}
SEARCH_AXIOMS["rres"] = SEARCH_AXIOMS["rres"] + ("RRES1", "RRES2", "RRES3")


def default_width() -> int:
    raw = os.environ.get("NARHOOP_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class EnumerationTask:
    size: int
    cls: str = "narhoop"
    mode: str = "backtracking"
    parallel_width: int = 1

    def __post_init__(self):
        if not isinstance(self.size, (int, np.integer)) or self.size < 1:
            raise UsageError(f"size must be a positive integer, got {self.size!r}")
        if self.cls not in CLASSES:
            raise UsageError(f"unknown class {self.cls!r}; expected one of {', '.join(CLASSES)}")
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.parallel_width < 1:
            raise UsageError("parallel_width must be at least 1")


def _keys_from_flat(flat: np.ndarray, n: int) -> np.ndarray:
    nn = n * n
    mul = flat[:, :nn].reshape(-1, n, n)
    div = flat[:, nn:].reshape(-1, n, n)
    return unique_sorted(canonical_keys(mul, div))


def _search_from(args):
    axioms, n, start = args
    models, nodes = run_search(axioms, n, start=start)
    return models, nodes


def backtracking_keys(cls: str, n: int, width: int = 1) -> np.ndarray:
    """Sorted canonical keys found by the clause search."""
    axioms = SEARCH_AXIOMS[cls]
    if width <= 1:
        models, _ = run_search(axioms, n)
        return _keys_from_flat(models, n)
    # split on the partial models reached after a few branching steps; the
    # subtrees below distinct frontier nodes are disjoint
    frontier, _ = run_search(axioms, n, max_depth=n)
    jobs = [(axioms, n, row.astype(np.int64)) for row in frontier]
    with ProcessPoolExecutor(max_workers=width) as pool:
        parts = [models for models, _ in pool.map(_search_from, jobs, chunksize=4)]
    flat = np.concatenate(parts) if parts else np.empty((0, 2 * n * n), dtype=np.int8)
    return _keys_from_flat(flat, n)


def oracle_keys(cls: str, n: int) -> np.ndarray:
    mul, div = generate_and_filter(cls, n)
    return unique_sorted(canonical_keys(mul, div))


# results do not depend on the worker count, so it is not part of the key
_CACHE: dict[tuple[str, int, str], np.ndarray] = {}


def enumerate_keys(task: EnumerationTask) -> np.ndarray:
    """Canonical keys ``(count, 2n^2)`` in ascending order.

    ``both`` runs the two routes and raises ``ConsistencyError`` if their
    class sets differ.
    """
    cls, n, mode = task.cls, int(task.size), task.mode
    hit = _CACHE.get((cls, n, mode))
    if hit is not None:
        return hit
    if mode == "backtracking":
        keys = _CACHE.get((cls, n, "both"))
        if keys is None:
            keys = backtracking_keys(cls, n, task.parallel_width)
    elif mode == "generate_and_filter":
        keys = _CACHE.get((cls, n, "both"))
        if keys is None:
            keys = oracle_keys(cls, n)
    else:
        keys = enumerate_keys(EnumerationTask(n, cls, "backtracking", task.parallel_width))
        other = enumerate_keys(EnumerationTask(n, cls, "generate_and_filter"))
        if keys.shape != other.shape or not np.array_equal(keys, other):
            raise ConsistencyError(
                f"{cls} on {n} points: backtracking found {len(keys)} classes, "
                f"generate_and_filter found {len(other)}"
            )
    keys.setflags(write=False)
    _CACHE[(cls, n, mode)] = keys
    return keys


def clear_cache() -> None:
    _CACHE.clear()


def enumerate_models(task: EnumerationTask) -> list[FiniteMagma]:
    """One canonical representative per isomorphism class, sorted."""
    n = int(task.size)
    return [CanonicalForm.from_key(n, k).magma() for k in enumerate_keys(task)]


def count(task: EnumerationTask) -> int:
    return len(enumerate_keys(task))


def count_table(
    sizes: Iterable[int], classes: Iterable[str] = CLASSES, mode: str = "backtracking",
    parallel_width: int = 1,
) -> dict[str, dict[int, int]]:
    """``table[cls][n]`` = number of isomorphism classes."""
    return {
        cls: {n: count(EnumerationTask(n, cls, mode, parallel_width)) for n in sizes}
        for cls in classes
    }


def write_corpus(path, cls: str, size: int, models: list[FiniteMagma]) -> None:
    """JSON lines: a header, then one model per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"class": cls, "size": size, "count": len(models)}) + "\n")
        for m in models:
            fh.write(m.to_json() + "\n")


def read_corpus(path) -> tuple[dict, list[FiniteMagma]]:
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        raise MagmaError(f"{path}: empty corpus file")
    header = json.loads(lines[0])
    if not {"class", "size", "count"} <= set(header):
        raise MagmaError(f"{path}: first line is not a corpus header")
    models = [FiniteMagma.from_json(ln) for ln in lines[1:]]
    if len(models) != header["count"]:
        raise MagmaError(f"{path}: header says {header['count']} models, found {len(models)}")
    return header, models
