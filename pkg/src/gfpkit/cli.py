"""Command-line front end: ``gfpkit gen|verify|binet-check|families|eval``.

Exit codes: 0 success, 1 verification failures, 2 usage or parse errors,
3 invalid numeric arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import gfp_core
from .gfp_core import FamilyPair, FamilySpec, SequenceCache, check_family, term
from .identity_engine import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    CorpusError,
    bundled_corpus_dir,
    default_jobs,
    load_corpus,
    verify_corpus,
)
from .polyring import evaluate, format_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CORPUS_ENV = "GFPKIT_CORPUS"


class UsageError(Exception):
    code = EXIT_USAGE


class NumericError(UsageError):
    code = EXIT_NUMERIC


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    families: str = "all"
    max_index: int = 8
    corpus: Path | None = None
    format: str = "text"
    jobs: int = 1

    def __post_init__(self):
        if self.max_index < 1:
            raise NumericError(f"grid bound must be >= 1, got {self.max_index}")
        if self.jobs < 1:
            raise NumericError(f"jobs must be >= 1, got {self.jobs}")


# -- argument helpers ----------------------------------------------------------

def _int_arg(name: str, text: str, minimum: int) -> int:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise NumericError(f"--{name}: expected an integer, got {text!r}") from None
    if value < minimum:
        raise NumericError(f"--{name}: must be >= {minimum}, got {value}")
    return value


_RATIONAL = re.compile(r"\s*(-?\d+)(?:/(\d+))?\s*")


def _rational_arg(name: str, text: str) -> Fraction:
    # integers and p/q only; decimals are refused so inputs stay visibly exact
    m = _RATIONAL.fullmatch(text)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise NumericError(f"--{name}: expected an integer or p/q, got {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def _family(name: str) -> FamilySpec:
    try:
        return gfp_core.family(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _select_families(selector: str) -> list[FamilySpec]:
    if selector == "all":
        return gfp_core.registry()
    return [_family(n.strip()) for n in selector.split(",") if n.strip()]


def _select_pairs(selector: str) -> list[FamilyPair]:
    """Pairs named by ``all`` or a comma list of members (either kind)."""
    every = gfp_core.pairs()
    if selector == "all":
        return every
    chosen = []
    for fam in _select_families(selector):
        match = [p for p in every if fam.name in p]
        if not match:
            raise UsageError(f"family {fam.name!r} has no equivalent partner and cannot be verified")
        if match[0] not in chosen:
            chosen.append(match[0])
    # keep registry order regardless of how the selector was written
    return [p for p in every if p in chosen]


def _corpus_dir(arg: str | None) -> Path:
    if arg:
        return Path(arg)
    env = os.environ.get(CORPUS_ENV)
    return Path(env) if env else bundled_corpus_dir()


# -- commands ------------------------------------------------------------------

def cmd_gen(family: FamilySpec, n: int, out=None) -> int:
    out = out or sys.stdout
    cache = SequenceCache(family)
    for k in range(n + 1):
        print(format_poly(term(cache, k)), file=out)
    return EXIT_OK


def cmd_binet_check(families: Sequence[FamilySpec], max_n: int, out=None) -> int:
    out = out or sys.stdout
    failed = 0
    for fam in families:
        report = check_family(fam, max_n)
        if report.passed:
            print(f"PASS {fam.name} ({len(report.checks)} checks, n <= {max_n})", file=out)
            continue
        failed += 1
        bad = [c for c in report.checks if not c.passed]
        print(f"FAIL {fam.name}", file=out)
        for c in bad:
            print(f"  {c.name}: {c.detail}", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def _family_row(f: FamilySpec) -> dict:
    return {
        "name": f.name,
        "symbol": f.symbol,
        "kind": f.kind.value,
        "p0": format_poly(f.p0),
        "p1": format_poly(f.p1),
        "d": format_poly(f.d),
        "g": format_poly(f.g),
        "alpha": f.alpha,
        "delta": format_poly(f.delta),
        "partner": f.partner,
    }


def cmd_families(fmt: str = "text", out=None) -> int:
    out = out or sys.stdout
    rows = [_family_row(f) for f in gfp_core.registry()]
    if fmt == "json":
        print(json.dumps(rows, indent=2), file=out)
        return EXIT_OK
    header = ("name", "symbol", "kind", "p0", "p1", "d", "g", "alpha", "delta", "partner")
    table = [header] + [tuple("-" if r[h] is None else str(r[h]) for h in header) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip(), file=out)
    return EXIT_OK


def cmd_eval(family: FamilySpec, n: int, x0: Fraction, out=None) -> int:
    out = out or sys.stdout
    value = evaluate(term(SequenceCache(family), n), x0)
    print(value, file=out)
    return EXIT_OK


def cmd_verify(cfg: CliConfig, identities: Sequence[str] | None = None,
               out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    directory = _corpus_dir(str(cfg.corpus) if cfg.corpus else None)
    if not directory.is_dir():
        raise UsageError(f"corpus directory not found: {directory}")
    try:
        corpus = load_corpus(directory)
    except CorpusError as exc:
        raise UsageError(f"cannot parse corpus: {exc}") from None
    if identities:
        known = {d.id for d in corpus}
        unknown = [i for i in identities if i not in known]
        if unknown:
            raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
        wanted = set(identities)
        corpus = [d for d in corpus if d.id in wanted]
    pairs = _select_pairs(cfg.families)
    reports = verify_corpus(corpus, pairs, cfg.max_index, cfg.jobs)

    counts = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0}
    for r in reports:
        counts[r.status] += 1
    summary = f"passed={counts[PASS]} failed={counts[FAIL]} not_applicable={counts[NOT_APPLICABLE]}"

    if cfg.format == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2), file=out)
        # stdout stays pure JSON
        print(summary, file=err)
    else:
        id_w = max((len(r.id) for r in reports), default=2)
        pair_w = max((len(r.pair) for r in reports), default=4)
        for r in reports:
            print(f"{r.id.ljust(id_w)}  {r.pair.ljust(pair_w)}  {r.status.ljust(14)}  {r.tuples_checked}",
                  file=out)
            if r.counterexample is not None:
                c = r.counterexample
                where = ", ".join(f"{k}={v}" for k, v in c.assignment.items())
                print(f"    at {where}", file=out)
                print(f"    lhs: {c.lhs}", file=out)
                print(f"    rhs: {c.rhs}", file=out)
        print(summary, file=out)
    return EXIT_FAIL if counts[FAIL] else EXIT_OK


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfpkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print G_0 .. G_n of one family")
    p.add_argument("--family", required=True)
    p.add_argument("--n", required=True)

    p = sub.add_parser("binet-check", help="compare closed forms with the recurrence")
    p.add_argument("--family", "--families", dest="family", default="all")
    p.add_argument("--max-n", default="32")

    p = sub.add_parser("verify", help="verify corpus identities over equivalent pairs")
    p.add_argument("--corpus", default=None, help=f"corpus directory (default: ${CORPUS_ENV}, then bundled)")
    p.add_argument("--families", "--family", dest="families", default="all")
    p.add_argument("--identity", action="append", default=None,
                   help="restrict to an identity id; repeatable or comma separated")
    p.add_argument("--max-index", default="8")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", default=None)

    p = sub.add_parser("families", help="list the family registry")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eval", help="evaluate G_n at a rational point")
    p.add_argument("--family", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--x", required=True)
    return parser


def _dispatch(args) -> int:
    if args.command == "gen":
        fam = _family(args.family)
        return cmd_gen(fam, _int_arg("n", args.n, 0))
    if args.command == "binet-check":
        fams = _select_families(args.family)
        return cmd_binet_check(fams, _int_arg("max-n", args.max_n, 0))
    if args.command == "families":
        return cmd_families(args.format)
    if args.command == "eval":
        fam = _family(args.family)
        return cmd_eval(fam, _int_arg("n", args.n, 0), _rational_arg("x", args.x))
    ids = None
    if args.identity:
        ids = [i.strip() for chunk in args.identity for i in chunk.split(",") if i.strip()]
    _select_pairs(args.families)  # reject unknown families before loading anything
    jobs = default_jobs() if args.jobs is None else _int_arg("jobs", args.jobs, 1)
    cfg = CliConfig("verify", args.families, _int_arg("max-index", args.max_index, 1),
                    Path(args.corpus) if args.corpus else None, args.format, jobs)
    return cmd_verify(cfg, ids)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"gfpkit {args.command}: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
