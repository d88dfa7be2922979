"""
Command line front end.

    hyperdet det FILE [--algorithm oracle|wedge|expand|auto]
    hyperdet selberg A B K N [--check-tensor] [--check-numeric]
    hyperdet aomoto A B K N [--at Y] [--check-tensor] [--check-numeric]
    hyperdet dyson N K
    hyperdet expand N K [--out FILE]
    hyperdet hankel N K --moments M0,M1,...
    hyperdet verify [--grid "a=1,2;b=1;k=1,2;n=1,2,3"]

Exit codes: 0 success, 2 input error, 3 budget exceeded, 4 identity-verification failure.
"""

import argparse
import json
import logging
import sys
import typing
from fractions import Fraction

from hyperdet import options
from hyperdet.core import BudgetExceededError, IdentityVerificationError, InputError
from hyperdet.grassmann import ALGORITHMS, hyperdet
from hyperdet.hankel import (
    MomentSequence,
    build_hankel,
    c_lambda_table,
    dyson_constant_term,
    dyson_sign,
    hankel_det_fast,
    top_coefficient,
)
from hyperdet.quadrature import (
    agrees,
    aomoto_integral_exact,
    integrate_aomoto_numeric,
    integrate_selberg_numeric,
    selberg_integral_exact,
)
from hyperdet.report import Report, load_hypermatrix
from hyperdet.scalar import factorial, to_rational
from hyperdet.selberg import (
    SelbergParams,
    aomoto_closed_form,
    aomoto_det,
    selberg_closed_form_normalized,
    selberg_det,
)
from hyperdet.verify import run_suite


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_IDENTITY = 4

AOMOTO_SAMPLE_POINTS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1))


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _count(text: str) -> int:
    value = _rational(text)
    if value.denominator != 1 or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _integral(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise InputError(f"--check-numeric needs an integer {name}, got {value}")
    return int(value)


BUDGET_FLAGS = {
    "max_products": "MAX_PERMUTATION_PRODUCTS",
    "max_state": "MAX_WEDGE_STATE_BYTES",
    "max_terms": "MAX_POLY_TERMS",
}


def _apply_budgets(args: argparse.Namespace) -> dict[str, int]:
    """Override the budgets in `options` from the flags; returns the previous values."""
    previous = {}
    for flag, name in BUDGET_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            previous[name] = getattr(options, name)
            setattr(options, name, value)
    return previous


def _params(args: argparse.Namespace) -> SelbergParams:
    return SelbergParams.create(args.a, args.b, args.k, args.n)


def cmd_det(args: argparse.Namespace, report: Report) -> None:
    """
    Hyperdeterminant of a hypermatrix JSON file, or stdin when the file is "-".

    Args:
        args: Parsed arguments with `file`, `algorithm` and `threads`.
        report (Report): Receives the `det` result and its timing.

    Raises:
        InputError: If the file is missing or not a valid hypermatrix.
    """
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file) as handle:
            text = handle.read()
    tensor = load_hypermatrix(text)
    report.params.update(order=str(tensor.order), dim=str(tensor.dim), algorithm=args.algorithm)
    with report.timed("det"):
        report.add_result("det", hyperdet(tensor, args.algorithm, threads=args.threads))


def cmd_selberg(args: argparse.Namespace, report: Report) -> None:
    """Normalized Selberg closed form, optionally checked against the tensor and quadrature."""
    p = _params(args)
    report.params.update(p.as_dict())
    with report.timed("closed_form"):
        closed = selberg_closed_form_normalized(p)
    report.add_result("closed_form", closed)
    if args.check_tensor:
        with report.timed("tensor_det"):
            det = selberg_det(p, args.algorithm, threads=args.threads)
        report.add_result("tensor_det", det)
        report.add_check(f"Det {p.label('selberg')} = closed form", det == closed, det, closed)
    if args.check_numeric:
        a, b = _integral(p.a, "a"), _integral(p.b, "b")
        exact = selberg_integral_exact(a, b, p.k, p.n, args.algorithm)
        with report.timed("integral_numeric"):
            numeric = integrate_selberg_numeric(a, b, p.k, p.n)
        report.add_result("integral_exact", exact)
        report.add_result("integral_numeric", repr(numeric))
        report.add_check("quadrature = n! B(a,b)^n Det", agrees(numeric, exact), repr(numeric), exact)


def cmd_aomoto(args: argparse.Namespace, report: Report) -> None:
    """Normalized Aomoto polynomial, its value at --at and the optional checks."""
    p = _params(args)
    report.params.update(p.as_dict())
    with report.timed("polynomial"):
        closed = aomoto_closed_form(p)
    report.add_result("polynomial", closed)
    if args.at is not None:
        report.params["y"] = str(args.at)
        report.add_result("value_at_y", closed(args.at))
    if args.check_tensor:
        with report.timed("tensor_det"):
            det = aomoto_det(p, args.algorithm, threads=args.threads)
        report.add_result("tensor_det", det)
        report.add_check(f"Det {p.label('aomoto')} = closed form", det == closed, det, closed)
    if args.check_numeric:
        a, b = _integral(p.a, "a"), _integral(p.b, "b")
        points = (args.at,) if args.at is not None else AOMOTO_SAMPLE_POINTS
        with report.timed("integral_numeric"):
            for y in points:
                exact = aomoto_integral_exact(a, b, p.k, p.n, y, args.algorithm)
                numeric = integrate_aomoto_numeric(a, b, p.k, p.n, y)
                report.add_check(f"quadrature at y={y}", agrees(numeric, exact), repr(numeric), exact)


def cmd_dyson(args: argparse.Namespace, report: Report) -> None:
    """Dyson constant term and the top Hankel coefficient, which must agree."""
    report.params.update(n=str(args.n), k=str(args.k))
    with report.timed("constant_term"):
        constant = dyson_constant_term(args.n, args.k)
    top = top_coefficient(args.n, args.k)
    report.add_result("constant_term", constant)
    report.add_result("top_coefficient", top)
    related = dyson_sign(args.n, args.k) * factorial(args.n) * top
    report.add_check("C = (-1)^{k n(n-1)/2} n! d", related == constant, constant, related)


def cmd_expand(args: argparse.Namespace, report: Report) -> None:
    """The c_lambda table, inline or written to --out."""
    report.params.update(n=str(args.n), k=str(args.k))
    with report.timed("table"):
        table = c_lambda_table(args.n, args.k)
    records = table.to_records()
    report.add_result("terms", len(table))
    report.add_result("normalization", table.normalization)
    report.add_check("support bounds", table.support_bounds_hold())
    if args.out:
        with open(args.out, "w") as handle:
            json.dump(records, handle, indent=1)
        report.add_result("written", args.out)
    else:
        report.table = records


def cmd_hankel(args: argparse.Namespace, report: Report) -> None:
    """Hankel hyperdeterminant of an explicit moment list by the fast path."""
    moments = MomentSequence(args.moments.split(","))
    report.params.update(n=str(args.n), k=str(args.k), moments=args.moments)
    with report.timed("det"):
        value = hankel_det_fast(moments, args.n, args.k)
    report.add_result("det", value)
    if args.check_tensor:
        tensor = build_hankel(moments, args.n, 2 * args.k)
        det = hyperdet(tensor, args.algorithm, threads=args.threads)
        report.add_check("fast path = tensor determinant", det == value, value, det)


def cmd_verify(args: argparse.Namespace, report: Report) -> None:
    """The grid and random-property suite; see `hyperdet.verify.run_suite`."""
    run_suite(args.grid, args.algorithm, args.threads, args.seed, report)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--max-products", type=int, help="permutation oracle budget")
    common.add_argument("--max-state", type=int, help="wedge state budget in bytes")
    common.add_argument("--max-terms", type=int, help="sparse expansion budget in terms")
    common.add_argument("--threads", type=int, default=options.THREADS, help="worker processes")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="hyperdet", description=__doc__.split("\n\n")[0])
    commands = parser.add_subparsers(dest="command", required=True)

    def params(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("a", type=_rational)
        sub.add_argument("b", type=_rational)
        sub.add_argument("k", type=_count)
        sub.add_argument("n", type=_count)

    def algorithm(sub: argparse.ArgumentParser, extra: tuple[str, ...] = ()) -> None:
        sub.add_argument("--algorithm", choices=ALGORITHMS + extra, default="auto")

    det = commands.add_parser("det", parents=[common], help="hyperdeterminant of a JSON hypermatrix")
    det.add_argument("file", help="hypermatrix JSON file, or - for stdin")
    algorithm(det)
    det.set_defaults(handler=cmd_det)

    selberg = commands.add_parser("selberg", parents=[common], help="normalized Selberg value")
    params(selberg)
    selberg.add_argument("--check-tensor", action="store_true")
    selberg.add_argument("--check-numeric", action="store_true")
    algorithm(selberg, ("hankel",))
    selberg.set_defaults(handler=cmd_selberg)

    aomoto = commands.add_parser("aomoto", parents=[common], help="normalized Aomoto polynomial")
    params(aomoto)
    aomoto.add_argument("--at", type=_rational, help="evaluate at this y")
    aomoto.add_argument("--check-tensor", action="store_true")
    aomoto.add_argument("--check-numeric", action="store_true")
    algorithm(aomoto, ("hankel",))
    aomoto.set_defaults(handler=cmd_aomoto)

    dyson = commands.add_parser("dyson", parents=[common], help="Dyson constant term and top coefficient")
    dyson.add_argument("n", type=_count)
    dyson.add_argument("k", type=_count)
    dyson.set_defaults(handler=cmd_dyson)

    expand = commands.add_parser("expand", parents=[common], help="c_lambda coefficient table")
    expand.add_argument("n", type=_count)
    expand.add_argument("k", type=_count)
    expand.add_argument("--out", help="write the table as JSON to this file")
    expand.set_defaults(handler=cmd_expand)

    hankel = commands.add_parser("hankel", parents=[common], help="Hankel hyperdeterminant of given moments")
    hankel.add_argument("n", type=_count)
    hankel.add_argument("k", type=_count)
    hankel.add_argument("--moments", required=True, help="comma separated m_0,m_1,... (p/q allowed)")
    hankel.add_argument("--check-tensor", action="store_true")
    algorithm(hankel)
    hankel.set_defaults(handler=cmd_hankel)

    verify = commands.add_parser("verify", parents=[common], help="run the identity suite")
    verify.add_argument("--grid", default=None, help=f'parameter grid, default "{options.DEFAULT_GRID}"')
    verify.add_argument("--seed", type=int, default=None)
    algorithm(verify)
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    previous = _apply_budgets(args)
    report = Report(command=args.command)
    try:
        args.handler(args, report)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except IdentityVerificationError as exc:
        print(f"identity verification failed: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        for name, value in previous.items():
            setattr(options, name, value)

    if args.json:
        print(report.to_json())
    else:
        print(report.render(), end="")
    return EXIT_OK if report.ok else EXIT_IDENTITY
