"""Terms and first-order formulas over ``(*, /)`` and their evaluation.

Every axiom in the package is written once here, as a small formula tree.
The same tree is evaluated three ways:

* ``evaluate_batch`` -- vectorized over a stack of (possibly partial) tables,
  returning a tri-state array (1 holds, 0 fails, -1 undecided);
* ``evaluate_instance`` -- plain integer evaluation of a single instance,
  used to replay counterexample witnesses;
* ``to_cnf`` -- clause form consumed by the compiled search kernel.

``a <= b`` is always the pointwise condition ``a = b ⊓ a`` with
``b ⊓ a = (b/a)*a``; no order relation is ever supplied from outside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

VARIABLES = ("x", "y", "z", "w")

UNKNOWN = -1


class Term:
    def __mul__(self, other: Term) -> Term:
        return Mul(self, other)

    def __truediv__(self, other: Term) -> Term:
        return Div(self, other)

    def meet(self, other: Term) -> Term:
        return meet(self, other)


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term

    def __str__(self):
        return f"({self.left}*{self.right})"


@dataclass(frozen=True)
class Div(Term):
    left: Term
    right: Term

    def __str__(self):
        return f"({self.left}/{self.right})"


def meet(a: Term, b: Term) -> Term:
    """The derived term ``a ⊓ b = (a/b)*b``."""
    return Mul(Div(a, b), b)


x, y, z, w = (Var(v) for v in VARIABLES)


class Formula:
    def variables(self) -> tuple[str, ...]:
        found = set()
        _collect_vars(self, found)
        return tuple(v for v in VARIABLES if v in found)


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def __str__(self):
        return f"not ({self.arg})"


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]

    def __init__(self, *args: Formula):
        object.__setattr__(self, "args", tuple(args))

    def __str__(self):
        return " and ".join(f"({a})" for a in self.args)


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]

    def __init__(self, *args: Formula):
        object.__setattr__(self, "args", tuple(args))

    def __str__(self):
        return " or ".join(f"({a})" for a in self.args)


def Leq(a: Term, b: Term) -> Formula:
    """``a <= b`` read through the pointwise order condition ``a = b ⊓ a``."""
    return Eq(a, meet(b, a))


def Implies(premise: Formula, conclusion: Formula) -> Formula:
    return Or(Not(premise), conclusion)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def _collect_vars(node, found: set) -> None:
    if isinstance(node, Var):
        found.add(node.name)
    elif isinstance(node, (Mul, Div)):
        _collect_vars(node.left, found)
        _collect_vars(node.right, found)
    elif isinstance(node, Eq):
        _collect_vars(node.lhs, found)
        _collect_vars(node.rhs, found)
    elif isinstance(node, Not):
        _collect_vars(node.arg, found)
    elif isinstance(node, (And, Or)):
        for a in node.args:
            _collect_vars(a, found)


# -- batched tri-state evaluation -------------------------------------------------

def _grid(n: int, k: int, batch: int) -> dict[str, np.ndarray]:
    env = {}
    for i, name in enumerate(VARIABLES[:k]):
        shape = [1] * (k + 1)
        shape[i + 1] = n
        env[name] = np.broadcast_to(np.arange(n).reshape(shape), (batch,) + (n,) * k)
    return env


def _apply(table: np.ndarray, a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    # table: (B, n, n); a, b: (B, ...) with UNKNOWN marking undecided values
    shape = np.broadcast_shapes(a.shape, b.shape)
    a = np.broadcast_to(a, shape)
    b = np.broadcast_to(b, shape)
    unknown = (a < 0) | (b < 0)
    idx = np.where(unknown, 0, a * n + b).reshape(shape[0], -1)
    out = np.take_along_axis(table.reshape(table.shape[0], n * n), idx, axis=1).reshape(shape)
    return np.where(unknown, UNKNOWN, out)


def eval_term_batch(term: Term, mul: np.ndarray, div: np.ndarray, env) -> np.ndarray:
    n = mul.shape[-1]
    if isinstance(term, Var):
        return env[term.name]
    left = eval_term_batch(term.left, mul, div, env)
    right = eval_term_batch(term.right, mul, div, env)
    return _apply(mul if isinstance(term, Mul) else div, left, right, n)


def _eval_formula_batch(f: Formula, mul, div, env) -> np.ndarray:
    if isinstance(f, Eq):
        a = eval_term_batch(f.lhs, mul, div, env)
        b = eval_term_batch(f.rhs, mul, div, env)
        out = (a == b).astype(np.int8)
        out[(a < 0) | (b < 0)] = UNKNOWN
        return out
    if isinstance(f, Not):
        v = _eval_formula_batch(f.arg, mul, div, env)
        return np.where(v < 0, v, 1 - v).astype(np.int8)
    parts = [_eval_formula_batch(a, mul, div, env) for a in f.args]
    parts = np.broadcast_arrays(*parts)
    stacked = np.stack(parts)
    if isinstance(f, And):
        out = np.where((stacked == 0).any(0), 0, np.where((stacked < 0).any(0), UNKNOWN, 1))
    else:
        out = np.where((stacked == 1).any(0), 1, np.where((stacked < 0).any(0), UNKNOWN, 0))
    return out.astype(np.int8)


def evaluate_batch(f: Formula, mul: np.ndarray, div: np.ndarray, k: int | None = None) -> np.ndarray:
    """Tri-state truth value of every instance of ``f``.

    ``mul`` and ``div`` have shape ``(B, n, n)``; entries equal to ``-1`` are
    unassigned.  The result has shape ``(B,) + (n,) * k`` indexed by the
    formula's variables in ``x, y, z, w`` order (``k`` defaults to the number
    of variables the formula mentions).
    """
    mul = np.asarray(mul)
    div = np.asarray(div)
    if k is None:
        k = len(f.variables())
    n = mul.shape[-1]
    env = _grid(n, k, mul.shape[0])
    out = _eval_formula_batch(f, mul, div, env)
    return np.broadcast_to(out, (mul.shape[0],) + (n,) * k)


def holds_batch(f: Formula, mul: np.ndarray, div: np.ndarray) -> np.ndarray:
    """Boolean ``(B,)``: ``f`` holds for every instance (complete tables)."""
    v = evaluate_batch(f, mul, div)
    return (v == 1).reshape(v.shape[0], -1).all(axis=1)


def refuted_batch(f: Formula, mul: np.ndarray, div: np.ndarray) -> np.ndarray:
    """Boolean ``(B,)``: some fully decided instance of ``f`` fails."""
    v = evaluate_batch(f, mul, div)
    return (v == 0).reshape(v.shape[0], -1).any(axis=1)


# -- scalar evaluation ------------------------------------------------------------

def eval_term(term: Term, mul, div, env: Mapping[str, int]) -> int:
    if isinstance(term, Var):
        return env[term.name]
    a = eval_term(term.left, mul, div, env)
    b = eval_term(term.right, mul, div, env)
    return int(mul[a][b]) if isinstance(term, Mul) else int(div[a][b])


def evaluate_instance(f: Formula, mul, div, env: Mapping[str, int]) -> bool:
    if isinstance(f, Eq):
        return eval_term(f.lhs, mul, div, env) == eval_term(f.rhs, mul, div, env)
    if isinstance(f, Not):
        return not evaluate_instance(f.arg, mul, div, env)
    if isinstance(f, And):
        return all(evaluate_instance(a, mul, div, env) for a in f.args)
    return any(evaluate_instance(a, mul, div, env) for a in f.args)


# -- clause form ------------------------------------------------------------------

def to_cnf(f: Formula) -> list[list[tuple[bool, Eq]]]:
    """Clauses as lists of ``(positive, Eq)`` literals."""
    if isinstance(f, Eq):
        return [[(True, f)]]
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, Eq):
            return [[(False, g)]]
        if isinstance(g, Not):
            return to_cnf(g.arg)
        if isinstance(g, And):
            return to_cnf(Or(*(Not(a) for a in g.args)))
        return to_cnf(And(*(Not(a) for a in g.args)))
    if isinstance(f, And):
        return [c for a in f.args for c in to_cnf(a)]
    clauses = [[]]
    for a in f.args:
        clauses = [c + d for c in clauses for d in to_cnf(a)]
    return clauses
