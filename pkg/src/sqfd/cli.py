"""Command-line front end.

Exit status: 0 on success, 1 when a blocking check fails, 2 on usage or
parameter errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .extbinom import coeff_row, ext_binom, ext_binom_ie
from .hilbert import beta_from_alpha, depth_bounds_cycle, depth_bounds_path, qdepth
from .ideals import (
    DEFAULT_ORACLE_CAP,
    VARIANTS,
    GeneralIdealSpec,
    QuotientId,
    alpha_vector,
    enumerate_alpha,
    family_spec,
)
from .verify import GROUPS, SweepGrid, sweep

FAMILIES = [t.value for t in QuotientId] + ["general"]
ENV_CAP = "SQFD_ORACLE_CAP"


class UsageError(Exception):
    pass


def _vector(values) -> str:
    return " ".join(str(v) for v in values)


def _oracle_cap(args: argparse.Namespace) -> int:
    if getattr(args, "oracle_cap", None) is not None:
        return args.oracle_cap
    env = os.environ.get(ENV_CAP)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_CAP} must be an integer, got {env!r}") from None
    return DEFAULT_ORACLE_CAP


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _alpha(args: argparse.Namespace, oracle: bool = False):
    if args.family == "general":
        if args.spec is None:
            raise UsageError("--family general needs --spec FILE")
        spec = GeneralIdealSpec.from_json(args.spec)
        return enumerate_alpha(spec, cap=_oracle_cap(args), jobs=args.jobs)
    _need(args, "n", "m")
    if oracle:
        spec = family_spec(args.family, args.n, args.m)
        return enumerate_alpha(spec, cap=_oracle_cap(args), jobs=args.jobs, source=args.family)
    return alpha_vector(args.family, args.n, args.m, args.variant)


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------


def cmd_coeff(args: argparse.Namespace) -> int:
    _need(args, "N", "m")
    if args.N < 0 or args.m < 1:
        raise UsageError("coeff needs --N >= 0 and --m >= 1")
    fn = ext_binom_ie if args.method == "ie" else ext_binom
    if args.k is not None:
        value = fn(args.N, args.m, args.k)
        _emit(args, json.dumps({"N": args.N, "m": args.m, "k": args.k, "value": str(value)}) + "\n"
              if args.format == "json" else f"{value}\n")
    else:
        row = coeff_row(args.N, args.m).coeffs
        _emit(args, json.dumps({"N": args.N, "m": args.m, "coeffs": [str(c) for c in row]}) + "\n"
              if args.format == "json" else _vector(row) + "\n")
    return 0


def cmd_alpha(args: argparse.Namespace, oracle: bool = False) -> int:
    alpha = _alpha(args, oracle=oracle)
    if args.k is not None:
        values = [alpha[args.k] if 0 <= args.k <= alpha.n else 0]
    else:
        values = list(alpha.values)
    if args.format == "json":
        text = json.dumps({"source": alpha.source, "n": alpha.n,
                           "alpha": [str(v) for v in values]}) + "\n"
    else:
        text = _vector(values) + "\n"
    _emit(args, text)
    return 0


def cmd_beta(args: argparse.Namespace) -> int:
    _need(args, "d")
    beta = beta_from_alpha(_alpha(args), args.d)
    if args.format == "json":
        text = json.dumps({"d": beta.d, "beta": [str(v) for v in beta.values]}) + "\n"
    else:
        text = _vector(beta.values) + "\n"
    _emit(args, text)
    return 0


def cmd_qdepth(args: argparse.Namespace) -> int:
    value = qdepth(_alpha(args))
    _emit(args, json.dumps({"qdepth": value}) + "\n" if args.format == "json" else f"{value}\n")
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    _need(args, "n", "m")
    if args.family in ("path-quotient", "path-ideal"):
        table = depth_bounds_path(args.n, args.m)
    elif args.family in ("cycle-quotient", "cycle-ideal", "cycle-rel"):
        table = depth_bounds_cycle(args.n, args.m, args.variant)
    else:
        raise UsageError("bounds needs a path-* or cycle-* --family")
    rows = [b.to_dict() for b in table.values()]
    if args.format == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        lines = []
        for r in rows:
            line = f"{r['tag']}: phi={r['phi']} depth={r['depth']} sdepth>={r['sdepth_lower']}"
            if r["sdepth_upper"] is not None:
                line += f" sdepth<={r['sdepth_upper']}"
            line += f" qdepth={r['qdepth']}"
            if not r["consistent"]:
                line += " (qdepth below the sdepth lower bound)"
            lines.append(line + "\n")
        text = "".join(lines)
    _emit(args, text)
    return 0


def _grid(args: argparse.Namespace) -> SweepGrid:
    checks = tuple(args.checks.split(",")) if args.checks else GROUPS
    m_values = tuple(int(x) for x in args.m_values.split(",")) if args.m_values else None
    if args.m is not None:
        m_values = (args.m,)
    n_min, n_max = args.n_min, args.n_max
    if args.n is not None:
        n_min = n_max = args.n
    if n_max < n_min:
        raise UsageError("empty n range")
    return SweepGrid(n_min=n_min, n_max=n_max, m_values=m_values, checks=checks,
                     oracle_n_max=args.oracle_n_max, oracle_cap=_oracle_cap(args))


def _write_report(args: argparse.Namespace, report) -> int:
    fmt = args.format
    text = report.to_json() if fmt == "json" else report.to_csv() if fmt == "csv" else report.to_text()
    _emit(args, text)
    return 0 if report.ok else 1


def cmd_sweep(args: argparse.Namespace) -> int:
    report = sweep(_grid(args), jobs=args.jobs)
    return _write_report(args, report)


def cmd_verify(args: argparse.Namespace) -> int:
    if not args.all and args.n is None:
        raise UsageError("verify needs --all (with --n-max) or --n")
    return cmd_sweep(args)


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, fmt=("text", "json")) -> None:
    p.add_argument("--format", choices=fmt, default="text")
    p.add_argument("--out", help="write output to FILE instead of stdout")


def _family_opts(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--family", choices=FAMILIES, required=required)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--variant", choices=VARIANTS, default="corrected")
    p.add_argument("--spec", help="JSON ideal pair {n, gens_I, gens_J} for --family general")
    p.add_argument("--oracle-cap", type=int, help=f"enumeration cap (default {DEFAULT_ORACLE_CAP}, "
                                                   f"or ${ENV_CAP})")
    p.add_argument("--jobs", type=int, default=1)


def _sweep_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="single n (overrides --n-min/--n-max)")
    p.add_argument("--m", type=int, help="single m")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--m-values", help="comma-separated m values (default: all valid)")
    p.add_argument("--checks", help=f"comma-separated groups from {','.join(GROUPS)}")
    p.add_argument("--oracle-n-max", type=int, default=18)
    p.add_argument("--oracle-cap", type=int)
    p.add_argument("--jobs", type=int, default=1)
    _common(p, ("text", "json", "csv"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqfd", description="Exact invariants of squarefree path and cycle ideals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="extended binomial coefficient or whole row")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=("dp", "ie"), default="dp")
    _common(p)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("alpha", help="alpha vector from the closed forms")
    _family_opts(p)
    _common(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("oracle", help="alpha vector by subset enumeration")
    _family_opts(p)
    _common(p)
    p.set_defaults(func=lambda a: cmd_alpha(a, oracle=True))

    p = sub.add_parser("beta", help="beta vector at candidate depth --d")
    _family_opts(p)
    p.add_argument("--d", type=int)
    _common(p)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("qdepth", help="Hilbert depth")
    _family_opts(p)
    _common(p)
    p.set_defaults(func=cmd_qdepth)

    p = sub.add_parser("bounds", help="depth/sdepth bounds with computed qdepth")
    _family_opts(p)
    _common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run checks at one (n, m) or over n <= --n-max")
    p.add_argument("--all", action="store_true", help="every n in --n-min..--n-max, every m")
    _sweep_opts(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run check groups over a parameter grid and emit a report")
    _sweep_opts(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"sqfd {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"sqfd {args.command}: error: {exc}", file=sys.stderr)
        return 2

