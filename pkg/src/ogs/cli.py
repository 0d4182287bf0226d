"""Command-line interface: ``ogs {orders,spectrum,charpoly,verify}``.

Exit status is 0 on success, 1 when a verification check FAILs (or the two
spectrum methods disagree), and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

from . import claims
from .errors import OGSError
from .groups import order_profile
from .parser import format_group_expr, parse_group_expr
from .spectra import (
    DEFAULT_MERGE_TOL,
    MatrixKind,
    Spectrum,
    build_matrix,
    charpoly_exact,
    dense_spectrum,
    group_eigenvalues,
    quotient_matrix,
    structural_spectrum,
)
from .supergraph import class_graph, expand_dense
from .verifier import DEFAULT_TOL, CheckSpec, default_suite, run_suite

TOLERANCE_ENV = "OGS_TOLERANCE"
KIND_NAMES = {
    "adjacency": "adjacency",
    "aalpha": "aalpha",
    "alpha": "aalpha",
    "laplacian": "laplacian",
    "signless": "signless",
    "signless-laplacian": "signless",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_alpha(text: str) -> Fraction:
    """``num/den`` is exact; decimals snap to the nearest ratio with den <= 10**6."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid alpha {text!r}") from None
    if "/" not in text:
        value = value.limit_denominator(10**6)
    if not 0 <= value <= 1:
        raise UsageError(f"alpha must lie in [0, 1], got {text}")
    return value


def fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal_text(v) -> str:
    """CSV value: 12 significant digits for floats; exact decimals for
    terminating rationals, ``num/den`` otherwise."""
    if isinstance(v, Rational):
        v = Fraction(v)
        den = v.denominator
        for q in (2, 5):
            while den % q == 0:
                den //= q
        if den != 1:
            return f"{v.numerator}/{v.denominator}"
        with localcontext() as ctx:
            ctx.prec = 1000
            d = Decimal(v.numerator) / Decimal(v.denominator)
        text = format(d.normalize(), "f")
        return text
    return f"{float(v):.12g}"


def _table_value(v) -> str:
    if isinstance(v, Rational):
        return str(Fraction(v))
    return f"{float(v):.12g}"


def _json_value(v):
    return str(Fraction(v)) if isinstance(v, Rational) else float(v)


def _env_tolerance() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None or raw == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOLERANCE_ENV} is not a decimal number: {raw!r}") from None
    if not tol > 0:
        raise UsageError(f"{TOLERANCE_ENV} must be positive")
    return tol


def _kind(args) -> MatrixKind:
    name = args.matrix
    if name is None:
        name = "aalpha" if args.alpha is not None else "adjacency"
    tag = KIND_NAMES.get(name.lower())
    if tag is None:
        raise UsageError(f"unknown matrix kind {name!r}")
    if tag == "aalpha":
        if args.alpha is None:
            raise UsageError("--matrix aalpha requires --alpha")
        return MatrixKind.aalpha(parse_alpha(args.alpha))
    if args.alpha is not None:
        raise UsageError(f"--alpha only applies to --matrix aalpha, not {tag}")
    return MatrixKind(tag)


def _emit(args, text: str, human: str | None = None):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(human if human is not None else text, end="")
    else:
        print(text, end="")


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


# --- subcommands ------------------------------------------------------------


def cmd_orders(args) -> int:
    expr = parse_group_expr(args.group)
    profile = order_profile(expr)
    table = "order count\n" + "".join(f"{d} {c}\n" for d, c in profile.items())
    if args.format == "json":
        text = json.dumps({
            "group": format_group_expr(expr),
            "orders": [{"order": d, "count": c} for d, c in profile.items()],
        }, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv([("order", "count"), *profile.items()])
    else:
        text = table
    _emit(args, text, table)
    return 0


def _spectrum_table(spec: Spectrum) -> str:
    return "value multiplicity\n" + "".join(f"{_table_value(v)} {m}\n" for v, m in spec.entries)


def _spectrum_obj(group, kind, method, spec: Spectrum) -> dict:
    return {
        "group": group,
        "matrix": kind.tag,
        "alpha": fraction_text(kind.alpha) if kind.alpha is not None else None,
        "method": method,
        "entries": [{"value": _json_value(v), "multiplicity": m} for v, m in spec.entries],
    }


def cmd_spectrum(args) -> int:
    expr = parse_group_expr(args.group)
    kind = _kind(args)
    tol = args.tol if args.tol is not None else _env_tolerance()
    group = format_group_expr(expr)
    cg = class_graph(order_profile(expr))

    struct = dense = None
    if args.method in ("structural", "both"):
        struct = structural_spectrum(cg, kind)
    if args.method in ("dense", "both"):
        raw = dense_spectrum(build_matrix(expand_dense(cg), kind))
        radius = float(max(abs(raw.min()), abs(raw.max()))) if raw.size else 0.0
        dense = group_eigenvalues(raw.tolist(), DEFAULT_MERGE_TOL * max(1.0, radius))
        dense_raw = sorted(raw.tolist())

    code, deviation = 0, None
    if struct is not None and dense is not None:
        deviation = max((abs(a - b) for a, b in zip(struct.values(), dense_raw)), default=0.0)
        if deviation > tol:
            code = 1
            print(f"error: structural and dense spectra differ by {deviation:.3e} > {tol:g}", file=sys.stderr)

    primary = struct if struct is not None else dense
    if args.format == "json":
        obj = _spectrum_obj(group, kind, args.method, primary)
        if args.method == "both":
            obj["dense_entries"] = [{"value": _json_value(v), "multiplicity": m} for v, m in dense.entries]
            obj["deviation"] = deviation
        text = json.dumps(obj, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv([("value", "multiplicity"), *((decimal_text(v), m) for v, m in primary.entries)])
    else:
        text = _spectrum_table(primary)
        if args.method == "both":
            text = "structural\n" + text + "dense\n" + _spectrum_table(dense)
            text += f"max deviation {deviation:.3e}\n"
    _emit(args, text, _spectrum_table(primary))
    return code


def cmd_charpoly(args) -> int:
    expr = parse_group_expr(args.group)
    kind = _kind(args)
    poly = charpoly_exact(quotient_matrix(class_graph(order_profile(expr)), kind))
    line = str(poly) + "\n"
    if args.format == "json":
        text = json.dumps({
            "group": format_group_expr(expr),
            "matrix": kind.tag,
            "alpha": fraction_text(kind.alpha) if kind.alpha is not None else None,
            "coefficients": [str(c) for c in poly.descending()],
            "text": str(poly),
        }, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv([("degree", "coefficient"),
                     *((d, decimal_text(c)) for d, c in zip(range(poly.degree, -1, -1), poly.descending()))])
    else:
        text = line
    _emit(args, text, line)
    return 0


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else _env_tolerance()
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    specs = []
    if args.claim:
        ids = claims.CLAIM_IDS if "all" in args.claim else tuple(args.claim)
        for cid in ids:
            if cid not in claims.CLAIM_IDS:
                raise UsageError(f"unknown claim {cid!r}; choose from {', '.join(claims.CLAIM_IDS)}")
        if args.p is None:
            raise UsageError("--claim needs --p")
        if args.p == 2 or not claims.is_prime(args.p):
            raise UsageError(f"--p must be an odd prime, got {args.p}")
        if args.k is not None and args.k < 1:
            raise UsageError(f"--k must be a positive integer, got {args.k}")
        specs.append(CheckSpec(claim_ids=ids, p=args.p, k=args.k, alpha=alpha, tolerance=tol))
    if args.group:
        specs.append(CheckSpec(group=parse_group_expr(args.group), tolerance=tol))
    if not specs:
        specs = default_suite(tol)
    report = run_suite(specs, workers=args.workers)

    summary = report.summary()
    human = "".join(c.line() + "\n" for c in report.checks)
    human += f"summary: {summary['pass']} pass, {summary['fail']} fail, {summary['finding']} finding\n"
    if args.format == "json":
        text = report.to_json() + "\n"
    elif args.format == "csv":
        text = _csv([("name", "status", "deviation", "details"),
                     *((c.name, c.status, "" if c.deviation is None else repr(c.deviation), c.details)
                       for c in report.checks)])
    else:
        text = human
    _emit(args, text, human)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ogs", description="Spectra of superpower graphs of finite groups.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(p, group_required=True):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        p.add_argument("--out", help="write structured output to this path")
        if group_required:
            p.add_argument("--group", required=True, help='group expression, e.g. "D5 x D5"')

    p = sub.add_parser("orders", help="element-order census")
    common(p)
    p.set_defaults(func=cmd_orders)

    for name, func, helptext in (("spectrum", cmd_spectrum, "eigenvalues with multiplicities"),
                                 ("charpoly", cmd_charpoly, "exact quotient characteristic polynomial")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--matrix", help="adjacency | aalpha | laplacian | signless")
        p.add_argument("--alpha", help='alpha as "num/den" or decimal')
        if name == "spectrum":
            p.add_argument("--method", choices=("structural", "dense", "both"), default="structural")
            p.add_argument("--tol", type=float)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="cross-check spectra and audit published claims")
    common(p, group_required=False)
    p.add_argument("--group")
    p.add_argument("--claim", action="append", help=f"one of {', '.join(claims.CLAIM_IDS)} or 'all'")
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alpha")
    p.add_argument("--tol", type=float)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "tol", None) is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        return args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OGSError, ValueError, OSError) as exc:
        print(f"error: {' '.join(str(exc).split())}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())
