"""Command-line front end: ``reflecto <subcommand> ...``.

Exit codes: 0 success or all checks pass, 1 a check failed (or representations
differ), 2 inconclusive, 3 usage or I/O error or malformed file, 4 unknown
sequence, 5 prefix budget too small or over REFLECTO_MAX_PREFIX.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, theorems
from .automata import (
    FIXTURES, fixture_text, linrep_equal, linrep_values, parse_dfao, parse_linrep,
)
from .complexity import PrefixBudget, max_prefix, profile
from .errors import BudgetError, ParseError, SpecError
from .graphs import export_dot, graphs_from_prefix
from .seqgen import prefix, spec_to_json

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_SPEC, EXIT_BUDGET = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_spec(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--spec", help="catalog name (see `reflecto catalog`)")
    g.add_argument("--spec-file", type=Path, help="JSON sequence spec")


def _add_budget(p):
    p.add_argument("--prefix", type=int, help="prefix length (default max(4096, 64*n_max))")
    p.add_argument("--stability", type=int, default=2, help="re-check factor; 1 disables the re-check")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="reflecto", description="Reflection complexity of infinite words.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("profile", help="rho, Pal, Refl, Unr and r for n = 0..n_max")
    _add_spec(p)
    p.add_argument("--n-max", type=int, required=True)
    _add_budget(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("check", help="run registered checks; one JSON report per line")
    p.add_argument("--id", action="append", required=True,
                   help="check id, `all`, or CONJECTURE_SCAN (needs --spec); repeatable")
    _add_spec(p, required=False)
    p.add_argument("--n-max", type=int)
    _add_budget(p)

    p = sub.add_parser("graph", help="Gamma, Lambda or K graph of length-n factors")
    _add_spec(p)
    p.add_argument("--kind", type=str.lower, choices=("gamma", "lambda", "k"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prefix", type=int)
    p.add_argument("--format", choices=("dot", "json"), default="dot")

    p = sub.add_parser("linrep", help="evaluate or compare linear representations")
    p.add_argument("--rep-file", action="append", required=True,
                   help="representation file or shipped fixture name; give two to compare")
    p.add_argument("--n-max", type=int, default=20)
    _add_spec(p, required=False)
    _add_budget(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("dfao", help="evaluate a DFAO")
    p.add_argument("--dfao-file", required=True, help="DFAO file or shipped fixture name")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="single term")
    g.add_argument("--n-max", type=int, help="terms 0..n_max (default 31)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("catalog", help="list the named sequences")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _spec(args):
    if args.spec_file is not None:
        try:
            obj = json.loads(_read(args.spec_file))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.spec_file}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(obj, dict):
            raise UsageError(f"{args.spec_file}: expected a JSON object")
        return str(args.spec_file), catalog.resolve(obj)
    if args.spec is not None:
        return args.spec, catalog.resolve(args.spec)
    return None, None


def _fixture_or_file(name: str, suffix: str) -> str:
    if name in FIXTURES and FIXTURES[name].endswith(suffix) and not Path(name).exists():
        return fixture_text(name)
    return _read(name)


def _nonneg(value, flag):
    if value is not None and value < 0:
        raise UsageError(f"{flag} must be nonnegative")


def _budget(args, n_max):
    if args.prefix is not None:
        return PrefixBudget(args.prefix, args.stability)
    return PrefixBudget.default(n_max, args.stability)


def cmd_profile(args, out):
    _nonneg(args.n_max, "--n-max")
    _, spec = _spec(args)
    prof = profile(spec, _budget(args, args.n_max), args.n_max)
    out.write(prof.to_csv() if args.format == "csv" else prof.dumps() + "\n")
    return EXIT_OK


def cmd_check(args, out):
    _nonneg(args.n_max, "--n-max")
    label, spec = _spec(args)
    ids = []
    for cid in args.id:
        cid = cid.upper()
        if cid == "ALL":
            ids.extend(sorted(theorems.REGISTRY))
        elif cid == "CONJECTURE_SCAN" or cid in theorems.REGISTRY:
            ids.append(cid)
        else:
            raise UsageError(f"unknown check id {cid!r}; known: {', '.join(sorted(theorems.REGISTRY))}")
    specs = None if spec is None else (args.spec if args.spec is not None else spec,)
    params = theorems.CheckParams(args.n_max, args.prefix, args.stability, specs)
    reports = []
    for cid in sorted(dict.fromkeys(ids)):
        if cid == "CONJECTURE_SCAN":
            if spec is None:
                raise UsageError("CONJECTURE_SCAN needs --spec or --spec-file")
            rep = theorems.conjecture_scan(specs[0], args.n_max if args.n_max is not None else 200, params)
        else:
            rep = theorems.run_check(cid, params)
        reports.append(rep)
        out.write(rep.dumps() + "\n")
    verdicts = {r.verdict for r in reports}
    if theorems.FAIL in verdicts:
        return EXIT_FAIL
    if theorems.INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_graph(args, out):
    _nonneg(args.n, "--n")
    _, spec = _spec(args)
    L = args.prefix or PrefixBudget.default(args.n + 1).length
    cap = max_prefix()
    if cap is not None and L > cap:
        raise BudgetError(f"prefix length {L} exceeds REFLECTO_MAX_PREFIX={cap}")
    if L < args.n + 1:
        raise BudgetError(f"prefix length {L} too small for n={args.n}")
    gamma, lam, k = graphs_from_prefix(prefix(spec, L), args.n)
    g = {"gamma": gamma, "lambda": lam, "k": k}[args.kind]
    if args.format == "dot":
        out.write(export_dot(g))
    else:
        out.write(json.dumps({"kind": g.kind, "prefix": L, **g.to_json()}, sort_keys=True) + "\n")
    return EXIT_OK


def _emit_table(out, fmt, header, rows):
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        out.writelines(",".join(map(str, r)) + "\n" for r in rows)
    else:
        out.write(json.dumps({"rows": [dict(zip(header, r)) for r in rows]}) + "\n")


def _parse_rep(name):
    try:
        return parse_linrep(_fixture_or_file(name, ".linrep"))
    except ParseError as exc:
        raise ParseError(f"{name}: {exc}") from None


def cmd_linrep(args, out):
    _nonneg(args.n_max, "--n-max")
    if len(args.rep_file) > 2:
        raise UsageError("give one --rep-file to evaluate or two to compare")
    reps = [_parse_rep(name) for name in args.rep_file]
    if len(reps) == 2:
        a, b = reps
        equal = a.base == b.base and linrep_equal(a, b)
        out.write(json.dumps({"equal": equal, "dims": [a.dim, b.dim]}) + "\n")
        return EXIT_OK if equal else EXIT_FAIL
    rep = reps[0]
    values = linrep_values(rep, args.n_max + 1)
    label, spec = _spec(args)
    if spec is None:
        _emit_table(out, args.format, ("n", "value"), [(n, str(v)) for n, v in enumerate(values)])
        return EXIT_OK
    # compare against brute-force reflection complexity of the sequence
    prof = profile(spec, _budget(args, args.n_max), args.n_max)
    rows = [(n, str(v), prof.r[n], str(v == prof.r[n]).lower()) for n, v in enumerate(values)]
    _emit_table(out, args.format, ("n", "value", "r", "match"), rows)
    if all(v == prof.r[n] for n, v in enumerate(values)):
        return EXIT_OK if prof.all_stable else EXIT_INCONCLUSIVE
    return EXIT_FAIL


def cmd_dfao(args, out):
    _nonneg(args.n, "--n")
    _nonneg(args.n_max, "--n-max")
    try:
        a = parse_dfao(_fixture_or_file(args.dfao_file, ".dfao"))
    except ParseError as exc:
        raise ParseError(f"{args.dfao_file}: {exc}") from None
    if args.n is not None:
        rows = [(args.n, a.term(args.n))]
    else:
        n_max = 31 if args.n_max is None else args.n_max
        rows = list(enumerate(a.terms(n_max + 1).tolist()))
    _emit_table(out, args.format, ("n", "value"), rows)
    return EXIT_OK


def cmd_catalog(args, out):
    rows = []
    for name in catalog.names():
        e = catalog.ENTRIES[name]
        rows.append({"name": name, "tags": sorted(e.tags), "params": e.params,
                     "spec": spec_to_json(e.spec), "note": e.note})
    if args.format == "json":
        out.write(json.dumps(rows, sort_keys=True) + "\n")
    else:
        out.write("name,tags,definition\n")
        for r in rows:
            note = r["note"].replace('"', '""')
            out.write(f'{r["name"]},{" ".join(r["tags"])},"{note}"\n')
    return EXIT_OK


COMMANDS = {
    "profile": cmd_profile, "check": cmd_check, "graph": cmd_graph,
    "linrep": cmd_linrep, "dfao": cmd_dfao, "catalog": cmd_catalog,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except SpecError as exc:
        code, msg = EXIT_SPEC, f"unknown or malformed sequence: {exc}"
    except BudgetError as exc:
        code, msg = EXIT_BUDGET, f"budget: {exc}"
    except (UsageError, ParseError) as exc:
        code, msg = EXIT_USAGE, str(exc)
    print(f"reflecto: {msg}", file=sys.stderr)
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
