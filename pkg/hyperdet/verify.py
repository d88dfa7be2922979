"""
Module: hyperdet.verify

The full identity suite behind `hyperdet verify`.

Per parameter point (a, b, k, n) of the grid: Selberg and Aomoto closed forms against the
tensor determinants, the symmetric form, a <-> b symmetry, reflection y -> 1 - y, the minor
expansion of the Aomoto tensor and the Dyson ending. Per (n, k): the Dyson constant term, the
top coefficient and the truncation identity. Per (a, b): Beta contiguity. Once: the
sign-Pascal determinants and the seeded random property suites (algorithm equivalence, minor
summation, GL invariance).
"""

import concurrent.futures
import itertools
import logging
import random
import time
import typing
from fractions import Fraction

from hyperdet import options
from hyperdet.core import HyperdetError, IdentityVerificationError, InputError
from hyperdet.grassmann import (
    Hypermatrix,
    det_classical,
    det_permutation_oracle,
    det_wedge,
    expand_first_index,
    gl_action,
    minor_summation,
)
from hyperdet.hankel import (
    MomentSequence,
    dyson_constant_term,
    hankel_det_fast,
    top_coefficient,
    truncated_moments,
)
from hyperdet.report import Report
from hyperdet.scalar import to_rational
from hyperdet.selberg import (
    SelbergParams,
    aomoto_closed_form,
    aomoto_det,
    dyson_ending_check,
    pascal_sign_matrix,
    selberg_closed_form_normalized,
    selberg_det,
    verify_aomoto_minor_expansion,
    verify_aomoto_reflection,
    verify_beta_contiguity,
    verify_selberg_symmetry,
    verify_symmetric_form,
)


__all__ = [
    "parse_grid",
    "grid_points",
    "random_rational",
    "random_hypermatrix",
    "random_matrix",
    "check_point",
    "random_suite",
    "run_suite",
]

logger = logging.getLogger(__name__)

CheckRow = tuple[str, bool, str, str]

GRID_KEYS = ("a", "b", "k", "n")
RANDOM_SHAPES = ((2, 2), (2, 3), (4, 2), (4, 3))
CONTIGUITY_DEPTH = 6
PASCAL_SIZES = range(1, 9)
AOMOTO_MAX_DIM = 3
DYSON_MAX = (3, 2)


def parse_grid(text: typing.Optional[str] = None) -> dict[str, list[Fraction]]:
    """
    Read "a=1,2,3;b=1,2;k=1,2;n=1,2,3". Missing keys take the default grid's values.

    Raises:
        InputError: On unknown keys or unreadable values.
    """
    grid = _parse_grid_text(options.DEFAULT_GRID)
    if text:
        grid.update(_parse_grid_text(text))
    return grid


def _parse_grid_text(text: str) -> dict[str, list[Fraction]]:
    grid: dict[str, list[Fraction]] = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, sep, values = part.partition("=")
        key = key.strip()
        if not sep or key not in GRID_KEYS:
            raise InputError(f"bad grid entry {part!r}; expected one of {GRID_KEYS} as key=v1,v2")
        parsed = [to_rational(v) for v in values.split(",") if v.strip()]
        if not parsed:
            raise InputError(f"grid entry {key!r} has no values")
        grid[key] = parsed
    return grid


def grid_points(grid: dict[str, list[Fraction]]) -> list[SelbergParams]:
    return [
        SelbergParams.create(a, b, k, n)
        for a, b, k, n in itertools.product(*(grid[key] for key in GRID_KEYS))
    ]


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def random_hypermatrix(rng: random.Random, order: int, dim: int) -> Hypermatrix:
    return Hypermatrix(order, dim, [random_rational(rng) for _ in range(dim**order)])


def random_matrix(rng: random.Random, dim: int) -> list[list[Fraction]]:
    """A random invertible rational matrix."""
    while True:
        matrix = [[random_rational(rng) for _ in range(dim)] for _ in range(dim)]
        if det_classical(matrix) != 0:
            return matrix


def _guarded(name: str, func: typing.Callable[[], CheckRow]) -> CheckRow:
    try:
        return func()
    except IdentityVerificationError as exc:
        logger.warning("%s: %s", name, exc)
        return name, False, "", str(exc)


def check_point(p: SelbergParams, algorithm: str = "auto") -> tuple[list[CheckRow], float]:
    """All identities at one parameter point; returns the check rows and the elapsed ms."""
    start = time.perf_counter()
    label = str(p)
    rows: list[CheckRow] = []

    def selberg() -> CheckRow:
        det = selberg_det(p, algorithm)
        closed = selberg_closed_form_normalized(p)
        return f"Selberg {label}", det == closed, str(det), str(closed)

    def aomoto() -> CheckRow:
        det = aomoto_det(p, algorithm)
        closed = aomoto_closed_form(p)
        leading = det.coefficient(p.n) == selberg_det(p, algorithm)
        return f"Aomoto {label}", det == closed and leading, str(det), str(closed)

    rows.append(_guarded(f"Selberg {label}", selberg))
    if p.n <= AOMOTO_MAX_DIM:
        rows.append(_guarded(f"Aomoto {label}", aomoto))
        for name, check in (
            ("symmetric form", verify_symmetric_form),
            ("a <-> b symmetry", verify_selberg_symmetry),
            ("reflection", verify_aomoto_reflection),
            ("Aomoto minor expansion", verify_aomoto_minor_expansion),
        ):
            rows.append(_guarded(f"{name} {label}", lambda: (f"{name} {label}", check(p, algorithm), "", "")))
    if p.n <= DYSON_MAX[0] and p.k <= DYSON_MAX[1]:
        rows.append(_guarded(f"Dyson ending {label}", lambda: (f"Dyson ending {label}", dyson_ending_check(p), "", "")))
    return rows, (time.perf_counter() - start) * 1000.0


def _dyson_rows(n: int, k: int, rng: random.Random) -> list[CheckRow]:
    rows = []

    def constant_term() -> CheckRow:
        value = dyson_constant_term(n, k)
        return f"Dyson constant term n={n} k={k}", True, str(value), str(value)

    def truncation() -> CheckRow:
        top = random_rational(rng) or Fraction(1)
        base = MomentSequence(random_rational(rng) for _ in range(2 * k * (n - 1) + 1))
        lhs = hankel_det_fast(truncated_moments(base, n, k, top), n, k)
        rhs = top_coefficient(n, k) * top**n
        return f"truncation n={n} k={k}", lhs == rhs, str(lhs), str(rhs)

    rows.append(_guarded(f"Dyson constant term n={n} k={k}", constant_term))
    rows.append(_guarded(f"truncation n={n} k={k}", truncation))
    return rows


def random_suite(
    seed: typing.Optional[int] = None,
    equivalence: typing.Optional[int] = None,
    minor: typing.Optional[int] = None,
    invariance: typing.Optional[int] = None,
) -> list[CheckRow]:
    """
    Seeded property checks over the shapes (d, n) in {(2,2), (2,3), (4,2), (4,3)}.

    Returns one row per suite with "passed/total" on the left.
    """
    rng = random.Random(options.RANDOM_SEED if seed is None else seed)
    counts = {
        "oracle equivalence": options.RANDOM_EQUIVALENCE_SAMPLES if equivalence is None else equivalence,
        "minor summation": options.RANDOM_MINOR_SUMMATION_SAMPLES if minor is None else minor,
        "GL invariance": options.RANDOM_INVARIANCE_SAMPLES if invariance is None else invariance,
    }
    rows = []

    def equivalent(order: int, dim: int) -> bool:
        tensor = random_hypermatrix(rng, order, dim)
        oracle = det_permutation_oracle(tensor)
        return det_wedge(tensor) == oracle == expand_first_index(tensor)

    def summation(order: int, dim: int) -> bool:
        first, second = random_hypermatrix(rng, order, dim), random_hypermatrix(rng, order, dim)
        return minor_summation(first, second) == det_permutation_oracle(first + second)

    def invariant(order: int, dim: int) -> bool:
        tensor = random_hypermatrix(rng, order, dim)
        g_list = [random_matrix(rng, dim) for _ in range(order)]
        factor = Fraction(1)
        for g in g_list:
            factor *= det_classical(g)
        return det_permutation_oracle(gl_action(g_list, tensor)) == factor * det_permutation_oracle(tensor)

    for name, prop in (
        ("oracle equivalence", equivalent),
        ("minor summation", summation),
        ("GL invariance", invariant),
    ):
        total = counts[name]
        passed = 0
        for sample in range(total):
            order, dim = RANDOM_SHAPES[sample % len(RANDOM_SHAPES)]
            if prop(order, dim):
                passed += 1
            else:
                logger.warning("%s fails on sample %d (order %d, dim %d)", name, sample, order, dim)
        rows.append((f"{name} ({total} random samples)", passed == total, str(passed), str(total)))
    return rows


def run_suite(
    grid: typing.Optional[str] = None,
    algorithm: str = "auto",
    threads: int = 1,
    seed: typing.Optional[int] = None,
    report: typing.Optional[Report] = None,
) -> Report:
    """
    Run every identity over the grid and record the checks on a Report.

    Grid points are independent and may run in worker processes; rows are merged in grid order.
    """
    report = report or Report(command="verify")
    values = parse_grid(grid)
    points = grid_points(values)
    report.params.update({key: ",".join(str(v) for v in values[key]) for key in GRID_KEYS})
    report.params["algorithm"] = algorithm
    logger.info("verifying %d grid points with %d worker(s)", len(points), threads)

    if threads > 1 and len(points) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=min(threads, len(points))) as pool:
            outcomes = list(pool.map(check_point, points, [algorithm] * len(points)))
    else:
        outcomes = [check_point(p, algorithm) for p in points]
    for p, (rows, elapsed) in zip(points, outcomes):
        for row in rows:
            report.add_check(*row)
        report.timing_ms[str(p)] = round(elapsed, 3)

    rng = random.Random(options.RANDOM_SEED if seed is None else seed)
    with report.timed("structural"):
        for a, b in sorted({(p.a, p.b) for p in points}):
            base = SelbergParams.create(a, b, 1, 1)
            for depth in range(CONTIGUITY_DEPTH + 1):
                report.add_check(f"contiguity a={a} b={b} n={depth}", verify_beta_contiguity(base, depth))
            wide = SelbergParams.create(a, b, 1, 4)
            try:
                det, closed = selberg_det(wide, "hankel"), selberg_closed_form_normalized(wide)
                report.add_check(f"Selberg {wide}", det == closed, det, closed)
            except HyperdetError as exc:
                report.add_check(f"Selberg {wide}", False, "", exc)
        for (n, k) in sorted({(p.n, p.k) for p in points}):
            if n <= DYSON_MAX[0] and k <= DYSON_MAX[1]:
                for row in _dyson_rows(n, k, rng):
                    report.add_check(*row)
        for size in PASCAL_SIZES:
            value = det_classical(pascal_sign_matrix(size))
            expected = -1 if (size * (size - 1) // 2) % 2 else 1
            report.add_check(f"det g size {size}", value == expected, value, expected)

    with report.timed("random"):
        for row in random_suite(seed):
            report.add_check(*row)

    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        logger.warning("%d of %d checks failed", len(failed), len(report.checks))
    else:
        logger.info("all %d checks passed", len(report.checks))
    return report
