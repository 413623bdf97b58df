"""Theorem replay: every statement as an executable check over a corpus.

Each :class:`TheoremCase` has a hypothesis and a conclusion.  On a model
where the hypothesis fails the verdict is SKIP; otherwise the conclusion
gives PASS or FAIL together with the data that falsifies it.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import congruence as cg
from . import structure as st
from .core import (
    NARHOOP_BASIS,
    FiniteMagma,
    check_axioms,
    check_residuation,
    classify,
    derive,
    is_right_residuated_wrt,
)
from .errors import NarhoopError, TheoremViolation

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


def builtin_fixtures() -> dict[str, FiniteMagma]:
    """The four independence algebras on ``{0, 1}``, a two-element right
    hoop, a two-element right quasigroup and the one-element algebra."""
    return {
        # ordinary multiplication, x/y = y
        "A1": FiniteMagma(2, [[0, 0], [0, 1]], [[0, 1], [0, 1]]),
        # x*y = x, x/y = 1
        "A2": FiniteMagma(2, [[0, 0], [1, 1]], [[1, 1], [1, 1]]),
        # addition mod 2, x/y = 0 except 1/0 = 1
        "A3": FiniteMagma(2, [[0, 1], [1, 0]], [[0, 0], [1, 0]]),
        # max, addition mod 2
        "A4": FiniteMagma(2, [[0, 1], [1, 1]], [[0, 1], [1, 0]]),
        # min with Goedel implication
        "G2": FiniteMagma(2, [[0, 0], [0, 1]], [[1, 0], [1, 1]]),
        "Z2_xor": FiniteMagma(2, [[0, 1], [1, 0]], [[0, 1], [1, 0]]),
        "trivial": FiniteMagma(1, [[0]], [[0]]),
    }


class ModelContext:
    """Per-model facts shared between cases, computed on first use."""

    def __init__(self, m: FiniteMagma):
        self.m = m

    @cached_property
    def cls(self):
        return classify(self.m)

    @cached_property
    def derived(self):
        return derive(self.m)

    @cached_property
    def reducts(self):
        return [st.classify_reduct(b) for b in st.sqcap_closed_subsets(self.m)]

    @cached_property
    def unitality(self):
        return st.unitality(self.m, strict=False)

    @cached_property
    def congruences(self):
        return cg.all_congruences(self.m)

    @cached_property
    def normal_subsets(self):
        return cg.normal_subsets(self.m)

    def violations(self, *names: str):
        return [(n, w) for n, w in self.unitality.violations if n in names]


Outcome = tuple  # (holds, witness)


@dataclass(frozen=True)
class TheoremCase:
    id: str
    statement: str
    hypothesis: Callable[[ModelContext], bool]
    conclusion: Callable[[ModelContext], Outcome]


def _ok():
    return True, None


def _axiom_failure(m: FiniteMagma, names: Sequence[str]):
    report = check_axioms(m, names)
    for name in names:
        if not report[name].holds:
            return False, {"axiom": name, "witness": list(report[name].witness)}
    return _ok()


# -- hypotheses --------------------------------------------------------------

def _rres(c: ModelContext) -> bool:
    return c.cls.is_right_residuated


def _narhoop(c: ModelContext) -> bool:
    return c.cls.is_narhoop


def _unital_narhoop(c: ModelContext) -> bool:
    return c.cls.is_narhoop and c.cls.is_unital


def _fixture(name: str):
    target = builtin_fixtures()[name]
    return lambda c: c.m == target


# -- conclusions -------------------------------------------------------------

def _variety_forward_hyp(c: ModelContext) -> bool:
    # right-residuated for the two-sided relation x ⊓ y = x = y ⊓ x
    return is_right_residuated_wrt(c.m, c.derived.leq_prime)


def _variety_forward(c: ModelContext) -> Outcome:
    return _axiom_failure(c.m, NARHOOP_BASIS)


def _variety_converse(c: ModelContext) -> Outcome:
    bad = _axiom_failure(c.m, ("N5", "N6", "N7"))
    if not bad[0]:
        return bad
    d = c.derived
    if not d.is_partial_order:
        return False, {"order": list(d.violation_witness)}
    bad = _axiom_failure(c.m, ("RRES1", "RRES2", "RRES3", "N_PRIME"))
    if not bad[0]:
        return bad
    if not is_right_residuated_wrt(c.m, d.leq_prime):
        return False, {"residuated_wrt_two_sided_order": False}
    return _ok()


def _independence(i: int):
    def conclusion(c: ModelContext) -> Outcome:
        report = check_axioms(c.m, NARHOOP_BASIS)
        failing = report.failing()
        expected = [f"N{i}"]
        if failing != expected:
            return False, {"failing": failing, "expected": expected}
        return _ok()
    return conclusion


def _lnb(c: ModelContext) -> Outcome:
    for r in c.reducts:
        if not (r.is_lnb == r.is_semigroup == r.satisfies_N8_N9):
            return False, {"subset": list(r.members),
                           "flags": [r.is_lnb, r.is_semigroup, r.satisfies_N8_N9]}
    return _ok()


def _comm_meet(c: ModelContext) -> Outcome:
    for r in c.reducts:
        if not (r.is_semilattice == r.is_commutative == r.satisfies_N1_and_lower_bound):
            return False, {"subset": list(r.members),
                           "flags": [r.is_semilattice, r.is_commutative, r.satisfies_N1_and_lower_bound]}
    return _ok()


def _principal(c: ModelContext) -> Outcome:
    comm = assoc = True
    for a in c.m.carrier:
        try:
            ideal = st.principal_ideal(c.m, a)
        except TheoremViolation as exc:
            return False, {"ideal": a, "detail": str(exc)}
        r = st.classify_reduct(ideal)
        comm &= r.is_commutative
        assoc &= r.is_semigroup
    if not (c.cls.is_narhoop == comm == assoc):
        return False, {"flags": [c.cls.is_narhoop, comm, assoc]}
    return _ok()


def _from_violations(*names: str):
    def conclusion(c: ModelContext) -> Outcome:
        found = c.violations(*names)
        if found:
            name, w = found[0]
            return False, {"check": name, "witness": list(w)}
        return _ok()
    return conclusion


def _top_comm(c: ModelContext) -> Outcome:
    v = st.check_top_iff_commutative(c.m)
    if not v.holds:
        return False, v.to_dict()
    return _ok()


def _unital_congruences(c: ModelContext):
    return [k for k in c.congruences if k.is_unital]


def _lem_cong(c: ModelContext) -> Outcome:
    for k in _unital_congruences(c):
        rel = k.partition.relation()
        units = np.diag(c.m.div)
        some = tuple(int(v) for v in np.flatnonzero(rel[:, units].any(axis=1)))
        every = tuple(int(v) for v in np.flatnonzero(rel[:, units].all(axis=1)))
        if some != every:
            return False, {"blocks": k.partition.to_list(), "some": list(some), "every": list(every)}
        if cg.theta_of(c.m, some) != k.partition:
            return False, {"blocks": k.partition.to_list(), "n_theta": list(some)}
    return _ok()


def _thm_cong(c: ModelContext) -> Outcome:
    for k in _unital_congruences(c):
        a = cg.check_normal(c.m, k.n_theta)
        if not a.is_normal:
            return False, {"blocks": k.partition.to_list(), "analysis": a.to_dict()}
    return _ok()


def _lem_preorder(c: ModelContext) -> Outcome:
    for N in c.normal_subsets:
        rec = cg.preorder_of(c.m, N)
        if not rec.holds:
            return False, {"subset": list(N), "failed": sorted(rec.witnesses),
                           "witness": [list(w) for w in rec.witnesses.values()]}
    return _ok()


def _thm_normal(c: ModelContext) -> Outcome:
    for N in c.normal_subsets:
        try:
            cg.theta_from_N(c.m, N)
        except TheoremViolation as exc:
            return False, {"subset": list(N), "detail": str(exc)}
    try:
        cg.correspondence(c.m)
    except TheoremViolation as exc:
        return False, {"detail": str(exc)}
    return _ok()


def _u_order(c: ModelContext) -> Outcome:
    return _axiom_failure(c.m, ("U",))


def _rq_char(c: ModelContext) -> Outcome:
    if c.cls.is_right_quasigroup != c.derived.is_equality:
        return False, {"right_quasigroup": c.cls.is_right_quasigroup, "order_is_equality": c.derived.is_equality}
    return _ok()


def _rh_char(c: ModelContext) -> Outcome:
    if c.cls.is_right_hoop != c.cls.is_right_hoop_characterized:
        return False, {"identities": c.cls.is_right_hoop, "characterization": c.cls.is_right_hoop_characterized}
    return _ok()


def _residuation_routes(c: ModelContext) -> Outcome:
    report = check_residuation(c.m, c.derived)
    if not report.holds("RRES1", "RRES2", "RRES3", "RRES"):
        return False, {"failing": report.failing()}
    return _ok()


def _quotients(c: ModelContext) -> Outcome:
    for k in c.congruences:
        try:
            cg.quotient(c.m, k)
        except TheoremViolation as exc:
            return False, {"blocks": k.partition.to_list(), "detail": str(exc)}
    return _ok()


def _n_vs_nprime(c: ModelContext) -> Outcome:
    d = c.derived
    w = np.argwhere(d.leq != d.leq_prime)
    if len(w):
        return False, {"pair": [int(v) for v in w[0]]}
    return _ok()


def _n1(c: ModelContext) -> bool:
    return check_axioms(c.m, ("N1",)).holds("N1")


CASES: tuple[TheoremCase, ...] = (
    TheoremCase("THM_VARIETY_FWD", "right-residuated for the two-sided order implies N1-N4",
                _variety_forward_hyp, _variety_forward),
    TheoremCase("THM_VARIETY_CONV", "N1-N4 imply N5-N7, a partial order, residuation",
                _narhoop, _variety_converse),
    TheoremCase("INDEP_A1", "A1 fails exactly N1", _fixture("A1"), _independence(1)),
    TheoremCase("INDEP_A2", "A2 fails exactly N2", _fixture("A2"), _independence(2)),
    TheoremCase("INDEP_A3", "A3 fails exactly N3", _fixture("A3"), _independence(3)),
    TheoremCase("INDEP_A4", "A4 fails exactly N4", _fixture("A4"), _independence(4)),
    TheoremCase("THM_LNB", "on ⊓-closed B: left normal band iff semigroup iff N8+N9",
                _rres, _lnb),
    TheoremCase("THM_COMM_MEET", "on ⊓-closed B: semilattice iff commutative iff N1 + lower bound",
                _rres, _comm_meet),
    TheoremCase("THM_PRINCIPAL", "(a] is ⊓-closed; narhoop iff all (a] commutative iff associative",
                _rres, _principal),
    TheoremCase("LEM_PREUNITAL", "x/x maximal, (x/x)y/y = x/x, top equals x/x",
                _rres, _from_violations("PREUNITAL_MAXIMAL", "PREUNITAL_IDENTITY", "PREUNITAL_TOP")),
    TheoremCase("LEM_UNITAL", "three unitality conditions agree; the unit is the largest left identity",
                _rres, _from_violations("UNITAL_EQUIVALENCE", "UNIT_IS_LEFT_IDENTITY", "UNIT_IS_MAXIMUM")),
    TheoremCase("THM_FINITE_UNIQUE", "a finite unital model has one left identity",
                lambda c: _rres(c) and c.cls.is_unital,
                _from_violations("FINITE_UNIQUE_LEFT_IDENTITY")),
    TheoremCase("THM_FINITE_UNIQUE_NARHOOP", "a finite unital narhoop has one left identity",
                _unital_narhoop, _from_violations("FINITE_UNIQUE_LEFT_IDENTITY")),
    TheoremCase("THM_TOP_COMM", "unit is top iff ⊓ commutative; (1] a subnarhoop and semilattice",
                _unital_narhoop, _top_comm),
    TheoremCase("THM_BOTTOM_TOP", "bottom gives 0/0 top; top gives unital, lower bounds, bottom",
                _rres, _from_violations("BOTTOM_GIVES_TOP", "TOP_GIVES_UNITAL",
                                        "TOP_GIVES_LOWER_BOUND", "TOP_GIVES_BOTTOM")),
    TheoremCase("LEM_CONG", "x θ y iff x/y, y/x in N_θ, for unital θ", _narhoop, _lem_cong),
    TheoremCase("THM_CONG", "N_θ is a normal subnarhoop, for unital θ", _narhoop, _thm_cong),
    TheoremCase("LEM_PREORDER", "for normal N, y/x in N is a compatible preorder",
                _narhoop, _lem_preorder),
    TheoremCase("THM_NORMAL", "θ_N is a unital congruence with N_θ = N; the maps are inverse",
                _narhoop, _thm_normal),
    TheoremCase("U_ORDER", "in a unital narhoop x <= y iff y/x = 1", _unital_narhoop, _u_order),
    TheoremCase("RQ_CHAR", "a narhoop is a right quasigroup iff its order is equality",
                _narhoop, _rq_char),
    TheoremCase("RH_CHAR", "right-hoop identities iff x/yz = (x/z)/y and the quasi-equation",
                _narhoop, _rh_char),
    TheoremCase("RRES_ROUTES", "componentwise and direct residuation agree", _rres, _residuation_routes),
    TheoremCase("N_NPRIME", "under N1 the one-sided and two-sided order conditions agree",
                _n1, _n_vs_nprime),
    TheoremCase("QUOTIENT", "quotients of narhoops are narhoops, unital for unital θ",
                _narhoop, _quotients),
)

CASE_IDS = tuple(c.id for c in CASES)


def _case(case_id: str) -> TheoremCase:
    for c in CASES:
        if c.id == case_id:
            return c
    raise KeyError(case_id)


@dataclass(frozen=True)
class Entry:
    case: str
    model: str
    verdict: str
    witness: object = None

    def to_dict(self) -> dict:
        out = {"case": self.case, "model": self.model, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def evaluate(case: TheoremCase, ctx: ModelContext, name: str) -> Entry:
    try:
        if not case.hypothesis(ctx):
            return Entry(case.id, name, SKIP)
        holds, witness = case.conclusion(ctx)
    except NarhoopError as exc:
        # an exception here means an internal invariant broke on this model
        return Entry(case.id, name, FAIL, {"error": type(exc).__name__, "detail": str(exc),
                                           "witness": _jsonable(getattr(exc, "witness", None))})
    return Entry(case.id, name, PASS if holds else FAIL, _jsonable(witness))


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.generic):
        return v.item()
    return v


@dataclass
class SuiteReport:
    entries: list[Entry] = field(default_factory=list)
    models: dict[str, FiniteMagma] = field(default_factory=dict)

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, Counter] = {}
        for e in self.entries:
            out.setdefault(e.case, Counter())[e.verdict] += 1
        return {case: {v: out[case].get(v, 0) for v in (PASS, FAIL, SKIP)} for case in out}

    def totals(self) -> dict[str, int]:
        c = Counter(e.verdict for e in self.entries)
        return {v: c.get(v, 0) for v in (PASS, FAIL, SKIP)}

    @property
    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def replay(self, entry: Entry) -> bool:
        """True when re-running the case on the model gives the same FAIL."""
        again = evaluate(_case(entry.case), ModelContext(self.models[entry.model]), entry.model)
        return again.verdict == FAIL and again.witness == entry.witness

    def to_dict(self) -> dict:
        return {
            "models": len(self.models),
            "totals": self.totals(),
            "cases": self.counts(),
            "failures": [dict(e.to_dict(), tables=self.models[e.model].to_dict())
                         for e in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        counts = self.counts()
        width = max([len(c) for c in counts] + [4])
        lines = [f"{'case':<{width}}  {'PASS':>7}  {'FAIL':>5}  {'SKIP':>7}"]
        for case in counts:
            k = counts[case]
            lines.append(f"{case:<{width}}  {k[PASS]:>7}  {k[FAIL]:>5}  {k[SKIP]:>7}")
        t = self.totals()
        lines.append(f"{'total':<{width}}  {t[PASS]:>7}  {t[FAIL]:>5}  {t[SKIP]:>7}")
        for e in self.failures:
            lines.append(f"FAIL {e.case} on {e.model}: {json.dumps(e.witness, sort_keys=True)}")
        return "\n".join(lines)


def _run_chunk(args) -> list[Entry]:
    items, case_ids = args
    cases = [_case(c) for c in case_ids]
    out = []
    for name, m in items:
        ctx = ModelContext(m)
        out.extend(evaluate(case, ctx, name) for case in cases)
    return out


def run_suite(
    models, cases: Iterable[str] | None = None, parallel_width: int = 1,
) -> SuiteReport:
    """Run the selected cases (all by default) on every model.

    ``models`` is a mapping or a sequence of ``(name, model)`` pairs.
    Entries are ordered model by model, cases in their fixed order, so the
    report does not depend on ``parallel_width``.
    """
    items = list(models.items()) if isinstance(models, dict) else list(models)
    case_ids = CASE_IDS if cases is None else tuple(cases)
    for cid in case_ids:
        _case(cid)
    if parallel_width <= 1 or len(items) < 64:
        entries = _run_chunk((items, case_ids))
    else:
        step = max(1, len(items) // (parallel_width * 8))
        chunks = [(items[i:i + step], case_ids) for i in range(0, len(items), step)]
        with ProcessPoolExecutor(max_workers=parallel_width) as pool:
            entries = [e for part in pool.map(_run_chunk, chunks) for e in part]
    return SuiteReport(entries, dict(items))


def verification_corpus(max_size: int, mode: str = "backtracking", parallel_width: int = 1):
    """Fixtures followed by every model of every class up to ``max_size``
    (union over the classes, one per isomorphism class)."""
    from .enumeration import EnumerationTask, enumerate_keys
    from .enumeration.canonical import CanonicalForm
    from .core import CLASSES

    items = list(builtin_fixtures().items())
    for n in range(1, max_size + 1):
        keys = [enumerate_keys(EnumerationTask(n, cls, mode, parallel_width)) for cls in CLASSES]
        union = np.unique(np.concatenate(keys), axis=0)
        items.extend((f"n{n}_{i:05d}", CanonicalForm.from_key(n, k).magma()) for i, k in enumerate(union))
    return items
