"""Command-line front end.

Subcommands: ``gen`` (evaluate a family over an index range), ``fit``
(recover recurrence coefficients from a value list), ``limit`` (extrapolate
mu -> 0), ``verify-comment`` (the one-shot Fibonacci verification report).

Exit codes: 0 ok, 2 validation error, 3 pole hit, 4 degenerate fit,
5 limit not converged, 6 verification conclusion contradicted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import DegenerateSequenceError, PoleError
from .families import (DeformationSpec, MuParam, QPairParams, generate_sequence,
                       q_basic)
from .limits import (DEFAULT_LIMIT_TOL, DEFAULT_MAX_LEVELS, DEFAULT_MU0,
                     composed_family_evaluator, limit_mu_to_zero,
                     mu_family_evaluator)
from .recurrence import FIBONACCI_REL_TOL, fit_recurrence, is_fibonacci
from .report import DEFAULT_MAX_INDEX, DEFAULT_MU_GRID, verify_comment

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_POLE = 3
EXIT_DEGENERATE = 4
EXIT_NOT_CONVERGED = 5
EXIT_CONTRADICTED = 6


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(rows) -> str:
    sio = io.StringIO()
    writer = csv.writer(sio, lineterminator="\n")
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return sio.getvalue().rstrip("\n")


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2)


@dataclass(frozen=True)
class OutputRecord:
    """One command's result, renderable as JSON (payload dict) or CSV
    (header row plus data rows). Floats are serialized with full double
    precision so text round-trips lose nothing."""

    json_payload: dict
    csv_rows: tuple
    format: str

    def render(self) -> str:
        if self.format == "csv":
            return _csv_text(self.csv_rows)
        return _json_text(self.json_payload)


def _emit(args, record: OutputRecord) -> None:
    text = record.render()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _qpair_from_args(args) -> QPairParams:
    pairs = {
        "--s/--t": (args.s, args.t),
        "--q1/--q2": (args.q1, args.q2),
        "--alpha/--beta": (args.alpha, args.beta),
    }
    given = [name for name, (a, b) in pairs.items() if a is not None or b is not None]
    if len(given) != 1:
        raise ValueError(
            "the q parameters must be given as exactly one of --s/--t, "
            "--q1/--q2 or --alpha/--beta"
        )
    name = given[0]
    a, b = pairs[name]
    if a is None or b is None:
        raise ValueError(f"both halves of {name} are required")
    if name == "--s/--t":
        return QPairParams(s=a, t=b)
    if name == "--q1/--q2":
        return QPairParams.from_q(a, b)
    return QPairParams.from_alpha_beta(a, b)


def _spec_from_args(args) -> DeformationSpec:
    family = args.family
    if family == "q":
        if args.mu is not None:
            raise ValueError("--mu does not apply to the q family")
        return DeformationSpec.q_family(_qpair_from_args(args))
    if family == "mu":
        for flag, a, b in (("--s/--t", args.s, args.t),
                           ("--q1/--q2", args.q1, args.q2),
                           ("--alpha/--beta", args.alpha, args.beta)):
            if a is not None or b is not None:
                raise ValueError(f"{flag} does not apply to the mu family")
        if args.mu is None:
            raise ValueError("the mu family requires --mu")
        return DeformationSpec.mu_family(MuParam(args.mu))
    if args.mu is None:
        raise ValueError("the composed family requires --mu")
    return DeformationSpec.composed_family(_qpair_from_args(args), MuParam(args.mu))


def parse_sequence_text(text: str) -> list[float]:
    """Parse ``fit`` input: a JSON array (or a ``gen`` JSON object), a CSV
    column (bare, or with a header naming a ``value`` column, e.g. ``gen``
    CSV output), or a single comma-separated row."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty input")
    try:
        obj = json.loads(stripped)
    except json.JSONDecodeError:
        obj = None
    if obj is not None:
        if isinstance(obj, dict):
            if "values" not in obj:
                raise ValueError("JSON object input needs a 'values' array")
            obj = obj["values"]
        if not isinstance(obj, list):
            raise ValueError("JSON input must be an array of numbers")
        return [float(v) for v in obj]

    def is_number(cell: str) -> bool:
        try:
            float(cell)
        except ValueError:
            return False
        return True

    rows = [row for row in csv.reader(stripped.splitlines())
            if any(cell.strip() for cell in row)]
    if not rows:
        raise ValueError("empty input")
    has_header = any(cell.strip() and not is_number(cell) for cell in rows[0])
    if has_header:
        names = [cell.strip().lower() for cell in rows[0]]
        if "value" not in names:
            raise ValueError("CSV header must name a 'value' column")
        column = names.index("value")
        data = rows[1:]
    else:
        data = rows
        width = len(rows[0])
        if len(rows) == 1 and width > 1:
            return [float(cell) for cell in rows[0] if cell.strip()]
        if width == 1:
            column = 0
        elif width == 2:
            column = 1
        else:
            raise ValueError("ambiguous CSV input: expected 1 or 2 columns")
    values = []
    for row in data:
        if column >= len(row):
            raise ValueError(f"CSV row {row!r} is missing column {column}")
        values.append(float(row[column]))
    return values


def _cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    seq = generate_sequence(spec, args.max_index)
    record = OutputRecord(
        json_payload={
            "family": spec.family,
            "params": spec.describe_params(),
            "max_index": seq.max_index,
            "values": list(seq.values),
        },
        csv_rows=(("n", "value"), *seq),
        format=args.format,
    )
    _emit(args, record)
    return EXIT_OK


def _cmd_fit(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.input).read_text()
    values = parse_sequence_text(text)
    fit = fit_recurrence(values)
    verdict = is_fibonacci(values, tol=args.tol)
    record = OutputRecord(
        json_payload={
            "alpha": fit.alpha, "beta": fit.beta, "residual": fit.residual,
            "method": fit.method, "fibonacci": verdict.is_fibonacci,
            "first_mismatch": verdict.first_mismatch,
        },
        csv_rows=(
            ("alpha", "beta", "residual", "method", "fibonacci", "first_mismatch"),
            (fit.alpha, fit.beta, fit.residual, fit.method,
             verdict.is_fibonacci, verdict.first_mismatch),
        ),
        format=args.format,
    )
    _emit(args, record)
    return EXIT_OK


def _cmd_limit(args) -> int:
    family = args.family
    if args.mu is not None:
        raise ValueError("--mu does not apply here: mu is the limit variable")
    if family == "mu":
        evaluator = mu_family_evaluator
        params: dict = {}
    else:
        qpair = _qpair_from_args(args)
        params = DeformationSpec.q_family(qpair).describe_params()
        if family == "composed":
            evaluator = composed_family_evaluator(qpair)
        else:
            def evaluator(n, mu, _qpair=qpair):  # constant in mu
                return q_basic(n, _qpair)
    estimate = limit_mu_to_zero(evaluator, args.n, tol=args.tol,
                                mu0=args.mu0, max_levels=args.max_levels)
    record = OutputRecord(
        json_payload={
            "family": family, "params": params, "n": args.n, "tol": args.tol,
            "value": estimate.value, "error_estimate": estimate.error_estimate,
            "converged": estimate.converged, "levels": estimate.levels,
            "grid": [list(point) for point in estimate.grid],
        },
        csv_rows=(
            ("value", "error_estimate", "converged", "levels"),
            (estimate.value, estimate.error_estimate, estimate.converged,
             estimate.levels),
        ),
        format=args.format,
    )
    _emit(args, record)
    return EXIT_OK if estimate.converged else EXIT_NOT_CONVERGED


def _cmd_verify_comment(args) -> int:
    try:
        grid = tuple(float(part) for part in args.mu_grid.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--mu-grid must be comma-separated numbers, got {args.mu_grid!r}")
    report = verify_comment(grid, args.max_index)
    rows = [("section", "mu", "alpha", "beta", "residual", "method",
             "fibonacci", "first_mismatch", "conclusion")]
    for r in report.mu_results:
        rows.append(("mu", r.mu, r.fit.alpha, r.fit.beta, r.fit.residual,
                     r.fit.method, r.fibonacci, r.first_mismatch, None))
    lr = report.limit_result
    rows.append(("limit", None, lr.fit.alpha, lr.fit.beta, lr.fit.residual,
                 lr.fit.method, lr.fibonacci, lr.first_mismatch, None))
    qr = report.q_result
    rows.append(("q", None, qr.fit.alpha, qr.fit.beta, qr.fit.residual,
                 qr.fit.method, qr.fibonacci, qr.first_mismatch, None))
    rows.append(("conclusion", None, None, None, None, None, None, None,
                 report.conclusion))
    record = OutputRecord(json_payload=report.to_payload(),
                          csv_rows=tuple(rows), format=args.format)
    _emit(args, record)
    if not report.limit_result.converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK if report.matches_expected else EXIT_CONTRADICTED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (default: json)")
    common.add_argument("--out", metavar="PATH", default=None,
                        help="write output to PATH instead of stdout")

    family_params = argparse.ArgumentParser(add_help=False)
    family_params.add_argument("--s", type=float, default=None,
                               help="squared base q1^2 of the q family")
    family_params.add_argument("--t", type=float, default=None,
                               help="squared base q2^2 (may be negative)")
    family_params.add_argument("--q1", type=float, default=None, help="base q1")
    family_params.add_argument("--q2", type=float, default=None, help="base q2")
    family_params.add_argument("--alpha", type=float, default=None,
                               help="recurrence coefficient alpha = s + t")
    family_params.add_argument("--beta", type=float, default=None,
                               help="recurrence coefficient beta = -s*t")
    family_params.add_argument("--mu", type=float, default=None,
                               help="deformation strength mu")

    parser = argparse.ArgumentParser(
        prog="basicnum",
        description="Deformed basic numbers: generate, fit recurrences, "
                    "take mu->0 limits, verify the Fibonacci property.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", parents=[common, family_params],
                           help="evaluate a family over indices 0..max-index")
    p_gen.add_argument("--family", choices=("q", "mu", "composed"), required=True)
    p_gen.add_argument("--max-index", type=int, required=True,
                       help="largest index to evaluate (>= 1)")
    p_gen.set_defaults(handler=_cmd_gen)

    p_fit = sub.add_parser("fit", parents=[common],
                           help="fit x[n+1] = alpha*x[n] + beta*x[n-1] to input values")
    p_fit.add_argument("--input", default="-", metavar="PATH",
                       help="CSV/JSON value list; '-' (default) reads stdin")
    p_fit.add_argument("--tol", type=float, default=FIBONACCI_REL_TOL,
                       help="relative tolerance of the Fibonacci verdict")
    p_fit.set_defaults(handler=_cmd_fit)

    p_limit = sub.add_parser("limit", parents=[common, family_params],
                             help="extrapolate a family's basic number to mu -> 0")
    p_limit.add_argument("--family", choices=("q", "mu", "composed"), required=True)
    p_limit.add_argument("--n", type=int, required=True, help="index to extrapolate at")
    p_limit.add_argument("--tol", type=float, default=DEFAULT_LIMIT_TOL,
                         help="convergence target for the error estimate")
    p_limit.add_argument("--mu0", type=float, default=DEFAULT_MU0,
                         help="largest grid strength")
    p_limit.add_argument("--max-levels", type=int, default=DEFAULT_MAX_LEVELS,
                         help="maximum refinement levels")
    p_limit.set_defaults(handler=_cmd_limit)

    p_verify = sub.add_parser("verify-comment", parents=[common],
                              help="run the full Fibonacci verification report")
    p_verify.add_argument("--mu-grid", default=",".join(str(m) for m in DEFAULT_MU_GRID),
                          help="comma-separated strengths to test directly")
    p_verify.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX)
    p_verify.set_defaults(handler=_cmd_verify_comment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLE
    except DegenerateSequenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
