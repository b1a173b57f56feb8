"""Command-line front end.

Table specs: ``stpete:K,FEE`` (K coin tosses), ``stpete-rows:R,FEE`` (R table
rows, i.e. K = R - 1), ``gfamily:I``, or a path to a JSON file holding
``[[outcome, "num/den"], ...]``.

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 nothing found.
"""
from __future__ import annotations

import argparse
import logging
import math
import re
import shlex
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from .artifacts import SweepArtifact, write_atomic, write_sweep
from .clt import CltParams, min_repeats_clt, prob_pos_clt
from .errors import DomainError, NotFoundError, NumericalError, SingularityError
from .exact import format_decimal, min_repeats, prob_pos, prob_pos_sweep
from .gamble import GambleTable, expected_value, g_family_table, st_pete_listing, st_pete_table
from .laurent import pgf, power
from .montecarlo import SplitMix64, simulate, simulate_totals, SimConfig
from .quadrature import ContourSpec, contour_positive_part
from .recurrence import extend, guess_recurrence, required_terms

LOGGER = logging.getLogger("riskcurve")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_NOTFOUND = 0, 2, 3, 4


def parse_table_spec(spec: str) -> GambleTable:
    """Resolve a table spec string to a :class:`GambleTable`."""
    kind, _, args = spec.partition(":")
    try:
        nums = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        nums = None
    if kind == "stpete" and nums is not None and len(nums) in (1, 2):
        return st_pete_table(*nums)
    if kind == "stpete-rows" and nums is not None and len(nums) in (1, 2):
        return st_pete_listing(*nums)
    if kind == "gfamily" and nums is not None and len(nums) == 1:
        return g_family_table(nums[0])
    path = Path(spec)
    if path.is_file():
        return GambleTable.from_json(path.read_text(), label=path.stem)
    raise DomainError(f"unrecognized table spec {spec!r}")


def _strict_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--strict",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="count only net gain > 0 (default); --no-strict counts >= 0",
    )


def _command_line(args: argparse.Namespace, fields: list[str]) -> str:
    parts = ["riskcurve", args.command, args.table]
    for name in fields:
        value = getattr(args, name)
        flag = "--" + name.replace("_", "-")
        if isinstance(value, bool):
            if name == "strict":
                parts.append("--strict" if value else "--no-strict")
            elif value:
                parts.append(flag)
        elif value is not None:
            parts += [flag, str(value)]
    return shlex.join(parts)


# -- subcommands --------------------------------------------------------------


def cmd_table(args) -> int:
    table = parse_table_spec(args.table)
    if args.format == "json":
        print(table.to_json())
    else:
        print(table.format())
    return EXIT_OK


def _mc_curve(table: GambleTable, n_max: int, runs: int, seed: int) -> list[float]:
    # each n gets its own stream seeded from SplitMix64(seed + n)
    out = []
    for n in range(1, n_max + 1):
        totals = simulate_totals(table, SimConfig(n, runs, SplitMix64(seed + n).next()))
        out.append(sum(1 for t in totals if t > 0) / runs)
    return out


def cmd_sweep(args) -> int:
    table = parse_table_spec(args.table)
    method = args.method
    command = _command_line(
        args, ["n_max", "method", "strict", "format", "seed", "runs", "max_order", "max_degree", "verify_count"]
    )
    params = {"n_max": args.n_max}
    if method == "recurrence":
        fit_terms = required_terms(args.max_order, args.max_degree, args.verify_count)
        try:
            if args.n_max <= fit_terms:
                raise NotFoundError("requested range is covered by the fitting window")
            base = prob_pos_sweep(table, fit_terms, args.strict)
            rec = guess_recurrence(base, args.max_order, args.max_degree, args.verify_count)
            series = extend(rec, base, args.n_max)
            params.update(order=rec.order, degree=rec.degree, exact_terms=fit_terms)
        except (NotFoundError, DomainError, SingularityError, NumericalError) as exc:
            warnings.warn(f"recurrence route failed ({exc}); falling back to exact sweep")
            method = "exact"
            series = prob_pos_sweep(table, args.n_max, args.strict)
        art = SweepArtifact.from_series(series, method, command, params)
    elif method == "exact":
        series = prob_pos_sweep(table, args.n_max, args.strict)
        art = SweepArtifact.from_series(series, "exact", command, params)
    elif method == "clt":
        vals = [prob_pos_clt(table, n) for n in range(1, args.n_max + 1)]
        art = SweepArtifact(table.label or "table", "clt", list(range(1, args.n_max + 1)), vals, True, params, command)
    else:
        params.update(runs=args.runs, seed=args.seed)
        vals = _mc_curve(table, args.n_max, args.runs, args.seed)
        art = SweepArtifact(table.label or "table", "mc", list(range(1, args.n_max + 1)), vals, True, params, command)
    paths = write_sweep(art, Path(args.out), args.format)
    for kind, path in paths.items():
        print(f"{kind}: {path}")
    return EXIT_OK


def cmd_solve(args) -> int:
    table = parse_table_spec(args.table)
    if expected_value(table) <= 0:
        print(
            f"expected gain per play is {expected_value(table)} <= 0: no number of repeats "
            "makes losing unlikely; refuse to play"
        )
        return EXIT_NOTFOUND
    eps = Fraction(args.epsilon)
    if args.strategy in ("clt", "auto"):
        try:
            n_clt = min_repeats_clt(table, float(eps))
        except DomainError as exc:
            print(f"clt: {exc}")
            n_clt = None
        if n_clt is not None:
            print(f"clt: n = {n_clt}, approximate probability {prob_pos_clt(table, n_clt):.10f}")
        if args.strategy == "clt":
            return EXIT_OK if n_clt is not None else EXIT_NOTFOUND
        horizon = max(2 * (n_clt or 1), 50)
        if horizon + args.window > args.exact_limit:
            print(f"exact refinement skipped: horizon {horizon} exceeds --exact-limit {args.exact_limit}")
            return EXIT_OK
    else:
        horizon = args.horizon
    try:
        res = min_repeats(table, eps, args.strict, args.window, horizon)
    except NotFoundError as exc:
        print(f"exact: not found ({exc})")
        return EXIT_NOTFOUND
    print(f"exact: n = {res.n}, probability {format_decimal(res.probability)} ({res.probability})")
    print(f"certificate: {res.certificate}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    table = parse_table_spec(args.table)
    config = SimConfig(args.n, args.runs, args.seed, args.workers)
    totals = simulate_totals(table, config)
    mean = sum(totals) / config.N
    wins = sum(1 for t in totals if t > 0) / config.N
    if args.totals:
        write_atomic(Path(args.totals), "run,total\n" + "".join(f"{i},{t}\n" for i, t in enumerate(totals, 1)))
    print(f"{mean:.7f}, {wins:.10f}")
    return EXIT_OK


def cmd_approx(args) -> int:
    table = parse_table_spec(args.table)
    params = CltParams.from_table(table)
    print(f"mu = {params.mu}, sigma^2 = {params.sigma2}")
    if args.n is not None:
        print(f"n = {args.n}: {prob_pos_clt(table, args.n):.10f}")
    if args.epsilon is not None:
        n = min_repeats_clt(table, float(Fraction(args.epsilon)))
        print(f"epsilon = {args.epsilon}: n = {n}")
    return EXIT_OK


def cmd_recurrence(args) -> int:
    table = parse_table_spec(args.table)
    terms = args.terms or required_terms(args.max_order, args.max_degree, args.verify_count)
    series = prob_pos_sweep(table, terms, args.strict)
    rec = guess_recurrence(series, args.max_order, args.max_degree, args.verify_count)
    text = rec.to_json()
    stem = re.sub(r"[^A-Za-z0-9]+", "_", table.label or "table").strip("_")
    if args.out:
        write_atomic(Path(args.out) / f"{stem}_recurrence.json", text + "\n")
    print(text)
    if args.extend_to:
        ext = extend(rec, series, args.extend_to)
        print(f"n = {args.extend_to}: {format_decimal(ext[args.extend_to])}")
        if args.out:
            write_atomic(Path(args.out) / f"{stem}_extended_n{args.extend_to}.csv", ext.to_csv())
    return EXIT_OK


def cmd_verify(args) -> int:
    table = parse_table_spec(args.table)
    exact = prob_pos(table, args.n, strict=True)
    exact_f = float(exact)
    rows = [("exact", exact_f, f"{format_decimal(exact)}")]
    status = EXIT_OK
    try:
        quad = contour_positive_part(power(pgf(table), args.n), ContourSpec(args.radius, args.samples))
        rows.append(("quadrature", quad, f"{quad:.10f}"))
    except NumericalError as exc:
        rows.append(("quadrature", None, f"failed: {exc}"))
        status = EXIT_NUMERIC
    try:
        approx = prob_pos_clt(table, args.n)
        rows.append(("clt", approx, f"{approx:.10f}"))
    except DomainError as exc:
        rows.append(("clt", None, f"not applicable: {exc}"))
    mc = simulate(table, args.n, args.runs, args.seed)
    se = math.sqrt(max(exact_f * (1 - exact_f), 0.0) / args.runs)
    rows.append(("mc", mc.win_fraction, f"{mc.win_fraction:.10f} (standard error {se:.2e})"))
    for name, _, text in rows:
        print(f"{name:>10}: {text}")
    for name, value, _ in rows[1:]:
        if value is not None:
            dev = value - exact_f
            note = ""
            if name == "mc" and se > 0:
                note = f" = {dev / se:+.2f} standard errors"
            print(f"{name:>10} - exact: {dev:+.3e}{note}")
    return status


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riskcurve", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print a probability table")
    p.add_argument("table")
    p.add_argument("--format", choices=["list", "json"], default="list")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="risk curve for n = 1..N as CSV/JSON + SVG")
    p.add_argument("table")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=["exact", "clt", "mc", "recurrence"], default="exact")
    _strict_flags(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=".")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--verify-count", type=int, default=20)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("solve", help="smallest n with P(losing) <= epsilon")
    p.add_argument("table")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--strategy", choices=["exact", "clt", "auto"], default="auto")
    _strict_flags(p)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--horizon", type=int, default=1000)
    p.add_argument("--exact-limit", type=int, default=2000)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="Monte Carlo: mean run total and win fraction")
    p.add_argument("table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--totals", help="write per-run totals to this CSV file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("approx", help="central limit approximation")
    p.add_argument("table")
    p.add_argument("--n", type=int)
    p.add_argument("--epsilon")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("recurrence", help="fit a recurrence to the exact curve")
    p.add_argument("table")
    p.add_argument("--terms", type=int)
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--verify-count", type=int, default=20)
    _strict_flags(p)
    p.add_argument("--extend-to", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("verify", help="compare exact, quadrature, CLT and Monte Carlo at one n")
    p.add_argument("table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--radius", type=float, default=2.0)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=10000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    warnings.formatwarning = lambda message, *rest, **kw: f"warning: {message}\n"
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"riskcurve {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotFoundError as exc:
        print(f"riskcurve {args.command}: not found: {exc}", file=sys.stderr)
        return EXIT_NOTFOUND
    except (NumericalError, SingularityError) as exc:
        print(f"riskcurve {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
