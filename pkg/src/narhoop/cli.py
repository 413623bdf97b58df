"""Command-line entry point.

Exit status: 0 on success, 1 when a theorem case fails (or two enumeration
routes disagree), 2 on usage errors and unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import congruence as cg
from .core import CLASSES, FiniteMagma, check_axioms, classify
from .enumeration import MODES, EnumerationTask, canonicalize, default_width, enumerate_models, write_corpus
from .errors import ConsistencyError, MagmaError, NarhoopError, PreconditionError, UsageError

SIZE_CAP = 5
SUBCOMMANDS = ("enumerate", "check", "classify", "congruences", "normal-subs", "verify", "fixtures")


@dataclass(frozen=True)
class CommandConfig:
    subcommand: str
    size: int | None = None
    cls: str = "narhoop"
    input: str | None = None
    output: str | None = None
    mode: str = "backtracking"
    parallel_width: int = 1
    format: str = "json"
    force: bool = False
    axioms: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.subcommand in ("enumerate", "verify"):
            if self.size is None or self.size < 1:
                raise UsageError("--size must be a positive integer")
            if self.size > SIZE_CAP and not self.force:
                raise UsageError(f"--size {self.size} is above the cap of {SIZE_CAP}; pass --force to run anyway")
        if self.subcommand in ("check", "classify", "congruences", "normal-subs") and not self.input:
            raise UsageError(f"{self.subcommand} needs an input file")
        if self.parallel_width < 1:
            raise UsageError("--parallel must be at least 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="narhoop", description="Finite-model workbench for narhoops")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--format", choices=("json", "text"), default=fmt_default)
        p.add_argument("--output", "-o", help="write to this path instead of stdout")

    def sized(p):
        p.add_argument("--size", type=int, required=True)
        p.add_argument("--mode", choices=MODES, default="backtracking")
        p.add_argument("--parallel", type=int, default=None,
                       help="worker processes (default: $NARHOOP_THREADS or 1)")
        p.add_argument("--force", action="store_true", help=f"allow sizes above {SIZE_CAP}")

    p = sub.add_parser("enumerate", help="all models of a class up to isomorphism")
    sized(p)
    p.add_argument("--class", dest="cls", choices=CLASSES, default="narhoop")
    common(p)

    p = sub.add_parser("check", help="axiom report for every model in FILE")
    p.add_argument("input", metavar="FILE")
    p.add_argument("--axioms", help="comma-separated axiom names (default: the standard report)")
    common(p, "text")

    for name, text in (("classify", "class membership keyed by canonical form"),
                       ("congruences", "congruence lattice of every model in FILE"),
                       ("normal-subs", "normal subnarhoops and the congruence correspondence")):
        p = sub.add_parser(name, help=text)
        p.add_argument("input", metavar="FILE")
        common(p)

    p = sub.add_parser("verify", help="enumerate and run the theorem suite")
    sized(p)
    common(p)

    p = sub.add_parser("fixtures", help="dump the builtin fixtures")
    p.add_argument("--output", "-o", help="directory to write one <name>.json per fixture")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _config(args: argparse.Namespace) -> CommandConfig:
    parallel = getattr(args, "parallel", None)
    axioms = getattr(args, "axioms", None)
    return CommandConfig(
        subcommand=args.subcommand,
        size=getattr(args, "size", None),
        cls=getattr(args, "cls", "narhoop"),
        input=getattr(args, "input", None),
        output=args.output,
        mode=getattr(args, "mode", "backtracking"),
        parallel_width=default_width() if parallel is None else parallel,
        format=args.format,
        force=getattr(args, "force", False),
        axioms=tuple(a.strip() for a in axioms.split(",") if a.strip()) if axioms else None,
    )


# -- input -------------------------------------------------------------------

def load_models(path) -> list[tuple[str, FiniteMagma]]:
    """Read a model file: one model object, a list of them, a name -> model
    mapping, or a JSON-lines corpus (optionally headed by a corpus record)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, dict) and "mul" in data:
        return [("0", FiniteMagma.from_dict(data))]
    if isinstance(data, list):
        return [(str(i), FiniteMagma.from_dict(d)) for i, d in enumerate(data)]
    if isinstance(data, dict) and "count" not in data:
        return [(str(k), FiniteMagma.from_dict(v)) for k, v in data.items()]

    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MagmaError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
        if isinstance(record, dict) and "mul" not in record and "count" in record:
            continue  # corpus header
        out.append((str(len(out)), FiniteMagma.from_dict(record)))
    if not out:
        raise MagmaError(f"{path}: no models found")
    return out


def _emit(cfg: CommandConfig, payload, text: str | None = None) -> None:
    body = text if cfg.format == "text" and text is not None else json.dumps(payload, indent=2, sort_keys=True)
    if cfg.output:
        Path(cfg.output).write_text(body + "\n", encoding="utf-8")
    else:
        sys.stdout.write(body + "\n")


# -- subcommands -------------------------------------------------------------

def cmd_enumerate(cfg: CommandConfig) -> int:
    task = EnumerationTask(cfg.size, cfg.cls, cfg.mode, cfg.parallel_width)
    models = enumerate_models(task)
    summary = f"{cfg.cls} size {cfg.size}: {len(models)} models up to isomorphism ({cfg.mode})"
    if cfg.output:
        write_corpus(cfg.output, cfg.cls, cfg.size, models)
        print(summary, file=sys.stderr)
    elif cfg.format == "text":
        print(summary)
    else:
        sys.stdout.write(json.dumps({"class": cfg.cls, "size": cfg.size, "count": len(models)}) + "\n")
        for m in models:
            sys.stdout.write(m.to_json() + "\n")
    return 0


def cmd_check(cfg: CommandConfig) -> int:
    models = load_models(cfg.input)
    records, chunks = [], []
    for name, m in models:
        report = check_axioms(m, cfg.axioms)
        records.append({"model": name, "size": m.size, "report": report.to_dict()})
        chunks.append(f"model {name} (size {m.size})\n" + "\n".join("  " + ln for ln in report.lines()))
    _emit(cfg, records, "\n".join(chunks))
    return 0


def cmd_classify(cfg: CommandConfig) -> int:
    records = {}
    for name, m in load_models(cfg.input):
        c = canonicalize(m)
        key = ",".join(map(str, c.key()))
        entry = records.setdefault(key, {"canonical": c.magma().to_dict(), "inputs": []})
        entry["inputs"].append(name)
        cls = classify(m)
        entry["classes"] = cls.classes()
        entry["flags"] = cls.to_dict()
    lines = [f"{', '.join(r['inputs'])}: {' '.join(r['classes']) or '-'}" for r in records.values()]
    _emit(cfg, records, "\n".join(lines))
    return 0


def cmd_congruences(cfg: CommandConfig) -> int:
    records, lines = [], []
    for name, m in load_models(cfg.input):
        cons = cg.all_congruences(m)
        records.append({"model": name, "congruences": [c.to_dict() for c in cons]})
        lines.append(f"model {name}: {len(cons)} congruences")
        for c in cons:
            tag = f"  unital, N = {list(c.n_theta)}" if c.is_unital else ""
            lines.append(f"  {c.partition.to_list()}{tag}")
    _emit(cfg, records, "\n".join(lines))
    return 0


def cmd_normal_subs(cfg: CommandConfig) -> int:
    records, lines = [], []
    status = 0
    for name, m in load_models(cfg.input):
        try:
            normals = cg.normal_subsets(m)
            corr = cg.correspondence(m)
        except PreconditionError as exc:
            records.append({"model": name, "error": str(exc)})
            lines.append(f"model {name}: skipped ({exc})")
            status = 2
            continue
        pairs = [{"subset": list(N), "theta": cg.theta_from_N(m, N).partition.to_list()} for N in normals]
        records.append({"model": name, "normal_subsets": pairs, "bijection": corr.is_bijection})
        lines.append(f"model {name}: {len(normals)} normal subnarhoops")
        lines.extend(f"  {p['subset']} <-> {p['theta']}" for p in pairs)
    _emit(cfg, records, "\n".join(lines))
    return status


def cmd_verify(cfg: CommandConfig) -> int:
    from .suite import run_suite, verification_corpus

    models = verification_corpus(cfg.size, cfg.mode, cfg.parallel_width)
    report = run_suite(models, parallel_width=cfg.parallel_width)
    _emit(cfg, json.loads(report.to_json()), report.to_text())
    return 0 if report.ok else 1


def cmd_fixtures(cfg: CommandConfig) -> int:
    from .suite import builtin_fixtures

    fixtures = builtin_fixtures()
    if cfg.output:
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        for name, m in fixtures.items():
            (out / f"{name.lower()}.json").write_text(m.to_json() + "\n", encoding="utf-8")
        return 0
    if cfg.format == "text":
        for name, m in fixtures.items():
            print(f"{name}: mul={m.mul.tolist()} div={m.div.tolist()}")
    else:
        print(json.dumps({k: m.to_dict() for k, m in fixtures.items()}, indent=2))
    return 0


COMMANDS = {
    "enumerate": cmd_enumerate,
    "check": cmd_check,
    "classify": cmd_classify,
    "congruences": cmd_congruences,
    "normal-subs": cmd_normal_subs,
    "verify": cmd_verify,
    "fixtures": cmd_fixtures,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[cfg.subcommand](cfg)
    except (UsageError, MagmaError, PreconditionError) as exc:
        print(f"narhoop: error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"narhoop: consistency failure: {exc}", file=sys.stderr)
        return 1
    except NarhoopError as exc:
        print(f"narhoop: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
