"""Command-line entry point: ``analyze``, ``query`` and ``run``."""

from __future__ import annotations

import argparse
import os
import sys

from . import alphabet as alphabet_mod
from .analyzer import AnalysisConfig, AnalysisResult, analyze
from .automata import glb, is_empty, leq, to_dot
from .concrete import DEFAULT_STEPS, run
from .errors import BudgetExceeded, ConfigError, ParseError, UnboundIdentifier
from .parser import Parser, load
from .pattern import compile_pattern
from .render import dumps, result_to_json, result_to_text
from .stringops import le_abs
from .syntax import Assign, Lit, print_exp, walk
from .values import AbstractValue

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CONFIG = 2
EXIT_UNBOUND = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    """Reported with exit status 2."""


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return n


def _analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--widen-n", type=_positive, default=3, help="widening parameter (default 3)")
    p.add_argument("--widen-delay", type=_positive, default=1, help="plain joins before widening (default 1)")
    p.add_argument("--max-iters", type=_positive, default=30, help="loop iteration budget (default 30)")
    p.add_argument("--alphabet", default=None, help="ascii or file:PATH (env STRYLUS_ALPHABET wins)")


def _analyze_file(args) -> tuple[AnalysisResult, AnalysisConfig]:
    alphabet = alphabet_mod.from_selector(args.alphabet)
    cfg = AnalysisConfig(
        widen_n=args.widen_n, widen_delay=args.widen_delay, max_iters=args.max_iters, alphabet=alphabet
    )
    program = load(_read(args.file))
    result = analyze(program, cfg)
    for d in result.diagnostics:
        print(f"{args.file}: warning: {d}", file=sys.stderr)
    return result, cfg


def _lookup(result: AnalysisResult, var: str, at: str):
    try:
        label = result.program.resolve(at)
    except KeyError:
        raise UsageError(f"unknown label {at!r}")
    assigned = {st.name for st in walk(result.program.root) if isinstance(st, Assign)}
    state = result.pre.get(label)
    if state is not None and var in state.env:
        return state.env[var]
    if var not in assigned:
        raise UsageError(f"variable {var!r} is not defined at {at}")
    return AbstractValue.bottom(result.alphabet)


def cmd_analyze(args) -> int:
    result, cfg = _analyze_file(args)
    jobs = []
    for target in args.dot or []:
        var, sep, at = target.partition("@")
        if not sep or not var or not at:
            raise UsageError(f"--dot expects VAR@LABEL, got {target!r}")
        jobs.append((var, at, _lookup(result, var, at)))
    if args.emit == "json":
        sys.stdout.write(dumps(result_to_json(result, cfg, args.file)))
    else:
        sys.stdout.write(result_to_text(result))
    for var, at, value in jobs:
        path = f"{var}_{at}.dot"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(to_dot(value.str, name=f"{var}_{at}"))
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_query(args) -> int:
    result, _ = _analyze_file(args)
    value = _lookup(result, args.var, args.at)
    alphabet = value.alphabet
    if args.intersects is not None:
        verdict = not is_empty(glb(value.str, compile_pattern(args.intersects, alphabet)))
    elif args.subset_of is not None:
        verdict = leq(value.str, compile_pattern(args.subset_of, alphabet))
    elif args.empty:
        verdict = is_empty(value.str)
    else:
        print(le_abs(value.str))
        return EXIT_OK
    print("true" if verdict else "false")
    return EXIT_OK


def parse_literal(text: str):
    """A literal as written in source: integer, string, true, false or NaN."""
    p = Parser(text)
    e = p.expression()
    if p.tok.kind != "eof" or not isinstance(e, Lit):
        raise UsageError(f"not a literal: {text.strip()!r}")
    return e.value


def _init_bindings(sources: list[str]) -> dict:
    state = {}
    for source in sources:
        if os.path.isfile(source):
            lines = _read(source).splitlines()
        elif "=" in source:
            lines = [source]
        else:
            raise UsageError(f"--init expects FILE or NAME=LITERAL, got {source!r}")
        for n, line in enumerate(lines, 1):
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("//"):
                continue
            name, sep, lit = line.partition("=")
            name = name.strip()
            if not sep or not name.isidentifier():
                raise UsageError(f"bad binding on line {n} of {source}: {line!r}")
            try:
                state[name] = parse_literal(lit)
            except ParseError as exc:
                raise UsageError(f"bad literal for {name}: {exc}")
    return state


def cmd_run(args) -> int:
    program = load(_read(args.file))
    init = _init_bindings(args.init or [])
    try:
        final, machine = run(program, init, budget=args.max_steps)
    except UnboundIdentifier as exc:
        print(f"{args.file}: runtime error: {exc}", file=sys.stderr)
        return EXIT_UNBOUND
    except BudgetExceeded as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    for name in sorted(final):
        print(f"{name} = {print_exp(Lit(final[name]))}")
    for label, v in machine.sinks:
        print(f"eval at {label}: {print_exp(Lit(v))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strylus", description="String-aware abstract interpreter for a small dynamic language."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="print per-label invariants")
    a.add_argument("file")
    _analysis_flags(a)
    a.add_argument("--emit", choices=("text", "json"), default="text")
    a.add_argument("--dot", action="append", metavar="VAR@LABEL", help="write VAR_LABEL.dot (repeatable)")
    a.set_defaults(func=cmd_analyze)

    q = sub.add_parser("query", help="ask a question about a string value")
    q.add_argument("file")
    _analysis_flags(q)
    q.add_argument("--var", required=True)
    q.add_argument("--at", required=True, metavar="LABEL", help="Lk label or evalK alias")
    pred = q.add_mutually_exclusive_group(required=True)
    pred.add_argument("--intersects", metavar="PATTERN")
    pred.add_argument("--subset-of", metavar="PATTERN")
    pred.add_argument("--empty", action="store_true")
    pred.add_argument("--length", action="store_true")
    q.set_defaults(func=cmd_query)

    r = sub.add_parser("run", help="execute concretely")
    r.add_argument("file")
    r.add_argument("--init", action="append", metavar="FILE|NAME=LITERAL")
    r.add_argument("--max-steps", type=_positive, default=DEFAULT_STEPS)
    r.set_defaults(func=cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the configuration-error status
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{args.file}:{exc}" if exc.line else f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
