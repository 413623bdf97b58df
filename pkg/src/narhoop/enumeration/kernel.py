"""Compiled cell-by-cell model search.

A class of models is given as ground-able clauses over the two tables.  Every
cell keeps a bitmask of values still allowed.  The search fixes one cell at a
time, always one with the smallest domain, and then visits clause instances:

* an instance whose literals are all decided and false is a conflict;
* an undecided instance whose other literals are false and whose remaining
  literal is blocked at a single outermost cell narrows that cell's domain to
  the values that make the literal true (forward checking);
* an instance that cannot be decided yet is parked on the cells blocking it
  and skipped until one of them is assigned.

An empty domain is a conflict, a singleton domain is assigned at once.

Symmetry is cut with the least-number heuristic: when branching on a cell,
only values already mentioned by the partial model plus the smallest
unmentioned element are tried.  Elements not yet mentioned are
interchangeable, so the pruned branches are isomorphic copies; results are
deduplicated by canonical form afterwards anyway.

Cell ``t*n*n + a*n + b`` holds ``a*b`` (``t = 0``) or ``a/b`` (``t = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

from ..core.axioms import AXIOMS, CLASS_AXIOMS
from ..core.terms import VARIABLES, Div, Mul, Var, to_cnf

MUL_OP = -1
DIV_OP = -2


@dataclass(frozen=True)
class CompiledClauses:
    code: np.ndarray  # postfix term tokens
    lits: np.ndarray  # (L, 5): lhs start, lhs end, rhs start, rhs end, positive
    clauses: np.ndarray  # (C, 3): first literal, end literal, arity


def _emit(term, out: list) -> None:
    if isinstance(term, Var):
        out.append(VARIABLES.index(term.name))
        return
    _emit(term.left, out)
    _emit(term.right, out)
    out.append(MUL_OP if isinstance(term, Mul) else DIV_OP)


@lru_cache(maxsize=None)
def compile_axioms(names: tuple[str, ...]) -> CompiledClauses:
    code, lits, clauses = [], [], []
    for name in names:
        f = AXIOMS[name]
        arity = len(f.variables())
        for clause in to_cnf(f):
            first = len(lits)
            for positive, eq in clause:
                ls = len(code)
                _emit(eq.lhs, code)
                rs = len(code)
                _emit(eq.rhs, code)
                lits.append((ls, rs, rs, len(code), int(positive)))
            clauses.append((first, len(lits), arity))
    return CompiledClauses(
        np.array(code, dtype=np.int64),
        np.array(lits, dtype=np.int64).reshape(-1, 5),
        np.array(clauses, dtype=np.int64).reshape(-1, 3),
    )


def compile_class(cls: str) -> CompiledClauses:
    return compile_axioms(CLASS_AXIOMS[cls])


def cell_order(n: int, order: str = "interleaved") -> np.ndarray:
    """Branching order over the ``2n^2`` cells.

    ``"div_then_mul"``: every ``/`` cell row-major, then every ``*`` cell.
    ``"interleaved"``: cells grouped by ``max(row, col)``, ``/`` before ``*``
    inside a group, so each new element's cells are filled together.
    """
    nn = n * n
    if order == "div_then_mul":
        return np.array([nn + i for i in range(nn)] + list(range(nn)), dtype=np.int64)
    if order == "interleaved":
        cells = []
        for k in range(n):
            group = [(a, b) for a in range(k + 1) for b in range(k + 1) if max(a, b) == k]
            for a, b in group:
                cells.append(nn + a * n + b)
                cells.append(a * n + b)
        return np.array(cells, dtype=np.int64)
    raise ValueError(f"unknown cell order {order!r}")


@njit(cache=True)
def _eval(code, s, e, env, val, n, stack):
    """Value of a postfix term on partial tables and the first cell that
    blocked evaluation (``-1`` if none)."""
    sp = 0
    block = -1
    for i in range(s, e):
        t = code[i]
        if t >= 0:
            stack[sp] = env[t]
            sp += 1
        else:
            b = stack[sp - 1]
            a = stack[sp - 2]
            sp -= 2
            r = -1
            if a >= 0 and b >= 0:
                cell = a * n + b
                if t == DIV_OP:
                    cell += n * n
                r = val[cell]
                if r < 0 and block < 0:
                    block = cell
            stack[sp] = r
            sp += 1
    return stack[0], block


@njit(cache=True)
def _clause_status(code, lits, first, last, env, val, n, stack):
    """1 satisfied, 0 falsified, -1 undecided (with a blocking cell)."""
    block = -1
    for li in range(first, last):
        lv, lb = _eval(code, lits[li, 0], lits[li, 1], env, val, n, stack)
        rv, rb = _eval(code, lits[li, 2], lits[li, 3], env, val, n, stack)
        if lv >= 0 and rv >= 0:
            if (lv == rv) == (lits[li, 4] == 1):
                return 1, -1
        elif block < 0:
            block = lb if lb >= 0 else rb
    if block < 0:
        return 0, -1
    return -1, block


@njit(cache=True)
def _single(mask):
    # index of the only set bit, or -1
    if mask == 0 or (mask & (mask - 1)) != 0:
        return -1
    v = 0
    while not (mask >> v) & 1:
        v += 1
    return v


@njit(cache=True)
def _propagate(val, dom, tcell, tdom, tlen, code, lits, clauses, n,
               offsets, wlevel, wstamp, wcells, stamp, level):
    """Forward checking to a fixpoint.

    For every undecided clause instance, each remaining value of its
    blocking cell is tried; values that falsify the instance are removed.
    Cells whose domain becomes a singleton are assigned.

    After an instance is examined it is parked with the cells that blocked
    its evaluation (none once it is satisfied), tagged with the current
    branching level and that level's stamp.  Below the same node it can
    only change once one of those cells is assigned, so until then it is
    skipped.
    """
    env = np.zeros(4, dtype=np.int64)
    stack = np.empty(64, dtype=np.int64)
    width = wcells.shape[1]
    changed = True
    while changed:
        changed = False
        for c in range(clauses.shape[0]):
            first = clauses[c, 0]
            last = clauses[c, 1]
            k = clauses[c, 2]
            total = 1
            for _ in range(k):
                total *= n
            for inst in range(total):
                gid = offsets[c] + inst
                wl = wlevel[gid]
                if wl <= level and stamp[wl] == wstamp[gid]:
                    parked = True
                    for j in range(width):
                        wc = wcells[gid, j]
                        if wc < 0:
                            break
                        if val[wc] >= 0:
                            parked = False
                            break
                    if parked:
                        continue
                rem = inst
                for j in range(k - 1, -1, -1):
                    env[j] = rem % n
                    rem //= n
                status, cell = _clause_status(code, lits, first, last, env, val, n, stack)
                wlevel[gid] = level
                wstamp[gid] = stamp[level]
                if status == 1:
                    wcells[gid, 0] = -1
                    continue
                if status == 0:
                    return False, tlen
                old = dom[cell]
                new = old
                nw = 1
                wcells[gid, 0] = cell
                for v in range(n):
                    if (old >> v) & 1:
                        val[cell] = v
                        st, blk = _clause_status(code, lits, first, last, env, val, n, stack)
                        if st == 0:
                            new &= ~(1 << v)
                        elif st < 0:
                            wcells[gid, nw] = blk
                            nw += 1
                val[cell] = -1
                if nw < width:
                    wcells[gid, nw] = -1
                if new != old:
                    tcell[tlen] = cell
                    tdom[tlen] = old
                    tlen += 1
                    dom[cell] = new
                    if new == 0:
                        return False, tlen
                    val[cell] = _single(new)
                    changed = True
    return True, tlen


@njit(cache=True)
def _mentioned(val, n, cell):
    nn = n * n
    mask = 0
    for i in range(val.shape[0]):
        if val[i] >= 0:
            r = i % nn
            mask |= (1 << (r // n)) | (1 << (r % n)) | (1 << val[i])
    r = cell % nn
    mask |= (1 << (r // n)) | (1 << (r % n))
    return mask


@njit(cache=True)
def _popcount(mask):
    c = 0
    while mask:
        mask &= mask - 1
        c += 1
    return c


@njit(cache=True)
def search_kernel(val0, order, code, lits, clauses, n, max_depth, use_lnh):
    """Depth-first search from the partial model ``val0``.

    Returns ``(models, nodes)``.  With ``max_depth >= 0`` the search stops
    at that branching depth and returns the partial models reached there
    instead of complete ones (used to split work between processes).
    """
    ncell = val0.shape[0]
    full = (1 << n) - 1
    val = val0.copy()
    dom = np.empty(ncell, dtype=np.int64)
    for i in range(ncell):
        dom[i] = full if val[i] < 0 else (1 << val[i])
    # each trail entry restores one domain; ncell * n bounds the total
    tcell = np.empty(ncell * (n + 1), dtype=np.int64)
    tdom = np.empty(ncell * (n + 1), dtype=np.int64)
    tlen = 0
    cap = 1024
    out = np.empty((cap, ncell), dtype=np.int8)
    count = 0
    nodes = 0

    offsets = np.empty(clauses.shape[0] + 1, dtype=np.int64)
    offsets[0] = 0
    for c in range(clauses.shape[0]):
        total = 1
        for _ in range(clauses[c, 2]):
            total *= n
        offsets[c + 1] = offsets[c] + total
    wlevel = np.full(offsets[-1], ncell + 2, dtype=np.int64)
    wstamp = np.zeros(offsets[-1], dtype=np.int64)
    wcells = np.full((offsets[-1], n + 1), -1, dtype=np.int64)
    stamp = np.zeros(ncell + 2, dtype=np.int64)

    ok, tlen = _propagate(val, dom, tcell, tdom, tlen, code, lits, clauses, n,
                          offsets, wlevel, wstamp, wcells, stamp, 0)
    if not ok:
        return out[:0], nodes

    fcell = np.empty(ncell + 1, dtype=np.int64)
    fmask = np.empty(ncell + 1, dtype=np.int64)
    fnext = np.empty(ncell + 1, dtype=np.int64)
    fmark = np.empty(ncell + 1, dtype=np.int64)
    depth = 0
    while True:
        # smallest domain first, ties by the static order
        c = -1
        best = n + 1
        for i in range(order.shape[0]):
            cell = order[i]
            if val[cell] < 0:
                size = _popcount(dom[cell])
                if size < best:
                    best = size
                    c = cell
        if c < 0 or depth == max_depth:
            if count == cap:
                bigger = np.empty((2 * cap, ncell), dtype=np.int8)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            for i in range(ncell):
                out[count, i] = val[i]
            count += 1
        else:
            cand = dom[c]
            if use_lnh:
                m = _mentioned(val, n, c)
                allowed = m
                for v in range(n):
                    if not (m >> v) & 1:
                        allowed |= 1 << v
                        break
                cand &= allowed
            fcell[depth] = c
            fmask[depth] = cand
            fnext[depth] = 0
            fmark[depth] = tlen
            depth += 1

        advanced = False
        while depth > 0:
            d = depth - 1
            while tlen > fmark[d]:
                tlen -= 1
                dom[tcell[tlen]] = tdom[tlen]
                val[tcell[tlen]] = _single(tdom[tlen])
            v = fnext[d]
            while v < n and not (fmask[d] >> v) & 1:
                v += 1
            if v >= n:
                depth -= 1
                continue
            fnext[d] = v + 1
            cell = fcell[d]
            tcell[tlen] = cell
            tdom[tlen] = dom[cell]
            tlen += 1
            dom[cell] = 1 << v
            val[cell] = v
            nodes += 1
            stamp[d + 1] = nodes
            ok, tlen = _propagate(val, dom, tcell, tdom, tlen, code, lits, clauses, n,
                                  offsets, wlevel, wstamp, wcells, stamp, d + 1)
            if ok:
                advanced = True
                break
        if not advanced:
            break
    return out[:count], nodes


def run_search(
    cls_or_axioms,
    n: int,
    *,
    start: np.ndarray | None = None,
    order: str = "interleaved",
    max_depth: int = -1,
    lnh: bool = True,
) -> tuple[np.ndarray, int]:
    """Search all models of the given class (or axiom tuple) on ``n`` elements.

    Returns ``(models, nodes)`` where ``models`` is ``(S, 2n^2)`` int8 with
    ``mul`` cells first.  Not every labeled model is returned when ``lnh``
    is on; every isomorphism class is.
    """
    if isinstance(cls_or_axioms, str):
        cc = compile_class(cls_or_axioms)
    else:
        cc = compile_axioms(tuple(cls_or_axioms))
    if start is None:
        start = np.full(2 * n * n, -1, dtype=np.int64)
    return search_kernel(
        np.asarray(start, dtype=np.int64), cell_order(n, order), cc.code, cc.lits,
        cc.clauses, n, max_depth, lnh,
    )
