"""Command-line interface: ``arapath {gen,construct,pd,table,verify,search-pair}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .groebner import BUDGET_ENV, Budget, GroebnerBudgetExceeded
from .hochster import DEFAULT_VARIABLE_CAP, HochsterCapExceeded, projective_dimension
from .ideals import parse_ideal, parse_polynomials, verify_radical_equality
from .paths import (DEFAULT_SEARCH_BUDGET, PairConfig, VerificationFailure, ara_formula, construct_certificate,
                    decompose_nt, default_verify, load_pair_config, path_ideal, search_block_pair)
from .ring import DEFAULT_CHARACTERISTIC, ParseError, Ring, is_prime, max_variable_index

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGRADED = 3
EXIT_VERIFY = 4
EXIT_RESOURCE = 5


class UsageError(Exception):
    pass


@dataclass
class ReportRow:
    n: int
    t: int
    k: int
    d: int
    formula_value: int
    pd_value: int | None
    constructed_count: int
    verified: str  # pass | skipped | degraded | fail
    seconds: float = 0.0
    note: str = ""

    FIELDS = ("n", "t", "k", "d", "formula", "pd", "count", "verified")

    def values(self, timings: bool) -> list:
        out = [self.n, self.t, self.k, self.d, self.formula_value,
               "" if self.pd_value is None else self.pd_value, self.constructed_count, self.verified]
        if timings:
            out.append(f"{self.seconds:.3f}")
        return out

    def as_dict(self, timings: bool) -> dict:
        out = dict(zip(self.FIELDS, [self.n, self.t, self.k, self.d, self.formula_value, self.pd_value,
                                     self.constructed_count, self.verified]))
        if self.note:
            out["note"] = self.note
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def parse_range(text: str) -> list[int]:
    """``"4"``, ``"2..9"`` or ``"1,3,5"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _read_text_arg(value: str) -> str:
    """Inline text, or the contents of the file it names (``@path`` forces a file)."""
    if value.startswith("@"):
        return Path(value[1:]).read_text(encoding="utf-8")
    path = Path(value)
    if "\n" not in value and len(value) < 4096 and path.is_file():
        return path.read_text(encoding="utf-8")
    return value


def _budget(args) -> Budget | None:
    if getattr(args, "budget", None) is None:
        return None
    return Budget(max_pairs=args.budget)


def _config(args) -> PairConfig | None:
    if not getattr(args, "pairs", None):
        return None
    config = load_pair_config(args.pairs, args.p, _budget(args))
    for msg in config.rejected:
        print(f"{args.pairs}: {msg}", file=sys.stderr)
    return config


def _sources(args) -> tuple[str, ...]:
    return ("builtin", "config", "search") if getattr(args, "search", False) else ("builtin", "config")


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2)


# commands

def cmd_gen(args) -> int:
    ideal = path_ideal(args.n, args.t, args.p)
    gens = [str(g) for g in ideal.generators]
    if args.format == "json":
        _emit(args, _dump_json({"n": args.n, "t": args.t, "generators": gens}))
    elif args.format == "csv":
        _emit(args, "index,generator\n" + "".join(f"{i},{g}\n" for i, g in enumerate(gens, 1)))
    else:
        _emit(args, "; ".join(gens))
    return EXIT_OK


def _certificate_text(cert, timings: float | None) -> str:
    lines = [f"I_{cert.params.t}(L_{cert.params.n}): n = {cert.params.n}, t = {cert.params.t}, "
             f"k = {cert.params.k}, d = {cert.params.d}"]
    lines.append(f"generators ({cert.count}):")
    lines.extend(f"  {g}" for g in cert.generators)
    lines.append(f"formula: {cert.formula_value}")
    lines.append(f"pd: {'n/a' if cert.pd_value is None else cert.pd_value}")
    lines.append(f"verification: {cert.verdict}")
    if cert.verification is not None:
        lines.extend("  " + line for line in cert.verification.transcript().splitlines()[:-1])
    if not cert.tight:
        lines.append(f"gap: {cert.gap} generators above the formula (no verified pair for t={cert.params.t})")
    lines.append("steps:")
    lines.extend(f"  {s}" for s in cert.steps)
    if timings is not None:
        lines.append(f"time: {timings:.3f}s")
    return "\n".join(lines)


def cmd_construct(args) -> int:
    start = time.perf_counter()
    verify = {"auto": None, "on": True, "off": False}[args.verify]
    try:
        cert = construct_certificate(args.n, args.t, verify=verify, pair_sources=_sources(args), config=_config(args),
                                     p=args.p, budget=_budget(args), search_budget=args.search_budget,
                                     workers=args.jobs)
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    elapsed = None if args.no_timings else time.perf_counter() - start
    if args.format == "json":
        obj = cert.as_dict()
        if elapsed is not None:
            obj["timings"] = {"total_seconds": round(elapsed, 3)}
        _emit(args, _dump_json(obj))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "generator"])
        for i, g in enumerate(cert.generators, 1):
            w.writerow([i, str(g)])
        _emit(args, buf.getvalue())
    else:
        _emit(args, _certificate_text(cert, elapsed))
    if not cert.tight:
        return EXIT_DEGRADED
    if cert.verdict == "skipped":
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_pd(args) -> int:
    if args.ideal is not None:
        text = _read_text_arg(args.ideal)
        ideal = parse_ideal(text, Ring.of(max(max_variable_index(text), 1), args.p))
    elif args.n is not None and args.t is not None:
        ideal = path_ideal(args.n, args.t, args.p)
    else:
        raise UsageError("pd needs --ideal or both --n and --t")
    if not ideal.is_square_free():
        raise UsageError("pd needs a square-free monomial ideal")
    pd = projective_dimension(ideal, args.p, args.cap)
    if args.format == "json":
        _emit(args, _dump_json({"ideal": ideal.to_text(), "p": args.p, "pd": pd}))
    elif args.format == "csv":
        _emit(args, f"ideal,p,pd\n\"{ideal.to_text()}\",{args.p},{pd}")
    else:
        _emit(args, str(pd))
    return EXIT_OK


def _table_row(job) -> ReportRow:
    n, t, verify, p, budget, sources, config_path, search_budget = job
    start = time.perf_counter()
    params = decompose_nt(n, t)
    formula = ara_formula(n, t)
    config = load_pair_config(config_path, p, budget) if config_path else None
    row_verify = default_verify(n, t) if verify else False
    try:
        cert = construct_certificate(n, t, verify=row_verify, pair_sources=sources, config=config, p=p,
                                     budget=budget, search_budget=search_budget)
    except VerificationFailure as exc:
        pd = None
        try:
            if n <= DEFAULT_VARIABLE_CAP:
                pd = projective_dimension(path_ideal(n, t, p), p)
        except HochsterCapExceeded:
            pass
        return ReportRow(n, t, params.k, params.d, formula, pd, 0, "fail", time.perf_counter() - start, str(exc))
    if not cert.tight:
        status = "degraded"
    elif cert.verdict == "pass":
        status = "pass"
    else:
        status = "skipped"
    return ReportRow(n, t, params.k, params.d, formula, cert.pd_value, cert.count, status,
                     time.perf_counter() - start)


def cmd_table(args) -> int:
    ts = parse_range(args.t)
    ns = parse_range(args.n)
    jobs = [(n, t, args.verify, args.p, _budget(args), _sources(args), args.pairs, args.search_budget)
            for t in ts for n in ns if 1 <= t <= n]
    if not jobs:
        raise UsageError("no (t, n) with t <= n in the given ranges")
    if args.pairs:
        _config(args)  # report rejected lines once
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_table_row, jobs))
    else:
        rows = [_table_row(job) for job in jobs]
    timings = not args.no_timings
    agree = sum(1 for r in rows if r.pd_value is not None and r.pd_value == r.formula_value)
    with_pd = sum(1 for r in rows if r.pd_value is not None)
    passed = sum(1 for r in rows if r.verified == "pass")
    summary = (f"summary: formula = pd on {agree}/{with_pd} rows with pd; "
               f"verification passed on {passed}/{len(rows)} rows")
    if args.format == "json":
        _emit(args, _dump_json({"rows": [r.as_dict(timings) for r in rows],
                                "summary": {"rows": len(rows), "formula_equals_pd": agree, "pd_computed": with_pd,
                                            "verified": passed}}))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(ReportRow.FIELDS) + (["seconds"] if timings else []))
        for r in rows:
            w.writerow(r.values(timings))
        _emit(args, buf.getvalue())
    else:
        header = list(ReportRow.FIELDS) + (["seconds"] if timings else [])
        body = [[str(v) for v in r.values(timings)] for r in rows]
        widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines.extend("  ".join(v.rjust(w) for v, w in zip(b, widths)) for b in body)
        lines.extend(f"note (n={r.n}, t={r.t}): {r.note}" for r in rows if r.note)
        lines.append(summary)
        _emit(args, "\n".join(lines))
    if any(r.verified == "fail" or (r.pd_value is not None and r.pd_value != r.formula_value) for r in rows):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    gens_text = _read_text_arg(args.gens)
    ideal_text = _read_text_arg(args.ideal)
    nvars = max(max_variable_index(gens_text), max_variable_index(ideal_text), 1)
    ring = Ring.of(nvars, args.p)
    gens = parse_polynomials(gens_text, ring)
    ideal = parse_ideal(ideal_text, ring)
    if not ideal.is_square_free():
        raise UsageError("the target ideal must be square-free")
    report = verify_radical_equality(gens, ideal, budget=_budget(args), workers=args.jobs)
    if args.format == "json":
        _emit(args, _dump_json(report.as_dict()))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "target", "result"])
        for c in report.checks:
            w.writerow([c.kind, c.target, c.result])
        _emit(args, buf.getvalue())
    else:
        _emit(args, report.transcript())
    if report.failures:
        return EXIT_VERIFY
    if report.skipped:
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_search_pair(args) -> int:
    pair = search_block_pair(args.t, args.budget, args.p)
    if args.format == "json":
        _emit(args, _dump_json({"t": args.t, "budget": args.budget,
                                "pair": None if pair is None else [str(g) for g in pair.pair]}))
    else:
        _emit(args, "none within budget" if pair is None else pair.to_config_line())
    return EXIT_OK


# argument parsing

def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(p) or p >= 2 ** 31:
        raise argparse.ArgumentTypeError(f"{p} is not a prime below 2^31")
    return p


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arapath",
                                     description="Path ideals: generator systems up to radical, pd and certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json", "csv")):
        sp.add_argument("--p", type=_prime, default=DEFAULT_CHARACTERISTIC, help="field characteristic")
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--output", help="write to this file instead of stdout")

    def gb_budget(sp):
        sp.add_argument("--budget", type=_positive, default=None,
                        help=f"max Groebner pair reductions per run (default: ${BUDGET_ENV} or 50000)")

    sp = sub.add_parser("gen", help="print the generators of I_t(L_n)")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--t", type=_positive, required=True)
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("construct", help="build (and optionally verify) a generator system for I_t(L_n)")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--t", type=_positive, required=True)
    sp.add_argument("--verify", nargs="?", const="on", default="auto", choices=("auto", "on", "off"))
    sp.add_argument("--no-verify", dest="verify", action="store_const", const="off")
    sp.add_argument("--pairs", help="pair config file")
    sp.add_argument("--search", action="store_true", help="also search for a block pair")
    sp.add_argument("--search-budget", type=_nonnegative, default=DEFAULT_SEARCH_BUDGET)
    sp.add_argument("--jobs", type=_positive, default=None, help="processes for backward checks")
    sp.add_argument("--no-timings", action="store_true")
    gb_budget(sp)
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("pd", help="projective dimension of R/I via Hochster's formula")
    sp.add_argument("--ideal", help="ideal text such as '(x1x2; x2x3)' or a file holding it")
    sp.add_argument("--n", type=_positive)
    sp.add_argument("--t", type=_positive)
    sp.add_argument("--cap", type=_positive, default=DEFAULT_VARIABLE_CAP, help="max number of variables")
    common(sp)
    sp.set_defaults(func=cmd_pd)

    sp = sub.add_parser("table", help="formula, pd and certificates over a grid")
    sp.add_argument("--t", required=True, help="range such as 2, 1..5 or 1,3")
    sp.add_argument("--n", required=True, help="range such as 2..9")
    sp.add_argument("--verify", action="store_true", help="verify rows under the default size policy")
    sp.add_argument("--pairs", help="pair config file")
    sp.add_argument("--search", action="store_true", help="also search for block pairs")
    sp.add_argument("--search-budget", type=_nonnegative, default=DEFAULT_SEARCH_BUDGET)
    sp.add_argument("--jobs", type=_positive, default=None, help="rows computed in parallel")
    sp.add_argument("--no-timings", action="store_true")
    gb_budget(sp)
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="decide sqrt(gens) == ideal for a square-free monomial ideal")
    sp.add_argument("--gens", required=True, help="polynomials separated by '|' or ';', or a file")
    sp.add_argument("--ideal", required=True, help="monomial ideal text, or a file")
    sp.add_argument("--jobs", type=_positive, default=None)
    gb_budget(sp)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search-pair", help="search for a verified block pair")
    sp.add_argument("--t", type=_positive, required=True)
    sp.add_argument("--budget", type=_nonnegative, default=DEFAULT_SEARCH_BUDGET, help="max candidates to verify")
    common(sp, formats=("text", "json"))
    sp.set_defaults(func=cmd_search_pair)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError, OSError) as exc:
        print(f"arapath {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HochsterCapExceeded, GroebnerBudgetExceeded) as exc:
        print(f"arapath {args.command}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
