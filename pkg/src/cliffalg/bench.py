"""Benchmark harness: one workload, every route, equal results enforced.

Timings are reported with per-route ratios against the first route and
never asserted; run-time parity is environment-specific.  A result
mismatch between routes is a correctness bug and aborts the run with a
diff.  Operands are seeded: uniform blade selection with a bounded term
count and small rational coefficients, so a (workload, seed) pair is
reproducible bit-exactly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from fractions import Fraction

from .algebra import Multivector, cmul, signature_form
from .climatrix import CM, build_basis_table
from .errors import PreconditionError, VerificationError
from .routes import ROUTES, make_product
from .tensor import _context_for_form

__all__ = [
    "Workload",
    "RouteReport",
    "random_multivector",
    "random_vector",
    "run_workload",
    "named_workload",
    "WORKLOAD_NAMES",
    "render_text",
    "render_records",
    "golden_inputs",
    "golden_expected",
]


def random_multivector(ctx, rng, terms=6, max_degree=None, integer=False):
    """Uniform distinct blades, nonzero coefficients in a small range."""
    n = ctx.n
    if max_degree is None:
        population = list(range(1 << n))
    else:
        population = [m for m in range(1 << n) if m.bit_count() <= max_degree]
    chosen = rng.sample(population, k=min(terms, len(population)))
    out = {}
    for mask in chosen:
        num = rng.choice([i for i in range(-9, 10) if i])
        den = 1 if integer else rng.choice((1, 1, 2, 3))
        out[mask] = Fraction(num, den)
    return Multivector(ctx, out)


def random_vector(ctx, rng):
    out = {}
    for i in range(ctx.n):
        c = rng.randint(-9, 9)
        if c:
            out[1 << i] = Fraction(c)
    if not out:
        out[1] = Fraction(1)
    return Multivector(ctx, out)


@dataclass(frozen=True)
class Workload:
    name: str
    signature: tuple
    seed: int
    pairs: int
    terms: int
    routes: tuple = ROUTES
    golden: bool = False


@dataclass
class RouteReport:
    route: str
    op_count: int
    input_terms: int
    wall_time: float
    peak_terms: int
    setup_time: float
    ratio: float = field(default=1.0)


WORKLOAD_NAMES = ("cl33-mixed", "golden-g82")


def named_workload(name, seed=None):
    if name == "cl33-mixed":
        return Workload("cl33-mixed", (3, 3), 0 if seed is None else seed, 40, 6)
    if name == "golden-g82":
        return Workload(
            "golden-g82",
            (8, 2),
            0 if seed is None else seed,
            1,
            3,
            routes=("direct", "matrix"),
            golden=True,
        )
    raise PreconditionError(
        f"unknown workload {name!r}; expected one of {', '.join(WORKLOAD_NAMES)}"
    )


def _masks(*indices):
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def golden_inputs(table):
    """The worked high-dimensional product instance, in the table's
    ambient basis."""
    ctx = table.ambient
    x = Multivector(
        ctx,
        {
            0: Fraction(2),
            _masks(1, 2, 3): Fraction(4),
            _masks(1, 5, 7, 8, 10): Fraction(-10),
        },
    )
    y = Multivector(
        ctx,
        {
            0: Fraction(-1),
            _masks(1, 2, 3, 7): Fraction(4),
            _masks(1, 5, 6, 8): Fraction(1),
            _masks(1, 4, 6, 7): Fraction(-3),
        },
    )
    return x, y


def golden_expected(table):
    ctx = table.ambient
    return Multivector(
        ctx,
        {
            _masks(2, 3, 5, 8, 10): Fraction(-40),
            _masks(1, 5, 6, 8): Fraction(2),
            _masks(7): Fraction(-16),
            _masks(1, 2, 3): Fraction(-4),
            _masks(1, 5, 7, 8, 10): Fraction(10),
            _masks(6, 7, 10): Fraction(-10),
            _masks(1, 2, 3, 7): Fraction(8),
            _masks(2, 3, 5, 6, 8): Fraction(4),
            _masks(2, 3, 4, 6, 7): Fraction(-12),
            _masks(4, 5, 6, 8, 10): Fraction(-30),
            _masks(1, 4, 6, 7): Fraction(-6),
            0: Fraction(-2),
        },
    )


def _mismatch(route, base_route, index, u, v, got, want):
    from .textio import multivector_text

    return VerificationError(
        f"route {route} disagrees with {base_route} on pair {index}:\n"
        f"  X    = {multivector_text(u)}\n"
        f"  Y    = {multivector_text(v)}\n"
        f"  {route:<7}= {multivector_text(got)}\n"
        f"  {base_route:<7}= {multivector_text(want)}"
    )


def _run_golden(workload):
    t0 = time.perf_counter()
    table = build_basis_table(7, 1)
    setup = time.perf_counter() - t0
    x, y = golden_inputs(table)
    input_terms = x.term_count() + y.term_count()
    reports = []
    baseline = None
    for route in workload.routes:
        if route == "direct":
            t0 = time.perf_counter()
            got = cmul(x, y)
            wall = time.perf_counter() - t0
            peak = got.term_count()
            rep = RouteReport("direct", 1, input_terms, wall, peak, 0.0)
        elif route == "matrix":
            t0 = time.perf_counter()
            got = CM(x, y, table)
            wall = time.perf_counter() - t0
            peak = got.term_count()
            rep = RouteReport("matrix", 1, input_terms, wall, peak, setup)
        else:
            raise PreconditionError(
                f"golden workload supports direct and matrix routes, not {route!r}"
            )
        if baseline is None:
            baseline = (route, got)
        elif got != baseline[1]:
            raise _mismatch(route, baseline[0], 0, x, y, got, baseline[1])
        reports.append(rep)
    _fill_ratios(reports)
    return reports


def _fill_ratios(reports):
    base = reports[0].wall_time
    for rep in reports:
        rep.ratio = rep.wall_time / base if base > 0 else float("inf")


def run_workload(workload):
    """Time every route on the same operand set; routes must agree on
    every product before any timing is reported."""
    if workload.golden:
        return _run_golden(workload)
    ctx = _context_for_form(signature_form(*workload.signature).form)
    rng = random.Random(workload.seed)
    pairs = [
        (
            random_multivector(ctx, rng, workload.terms),
            random_multivector(ctx, rng, workload.terms),
        )
        for _ in range(workload.pairs)
    ]
    input_terms = sum(u.term_count() + v.term_count() for u, v in pairs)
    reports = []
    baseline = None
    base_route = None
    for route in workload.routes:
        t0 = time.perf_counter()
        fn = make_product(route, ctx, with_stats=True)
        setup = time.perf_counter() - t0
        results = []
        peak = 0
        t0 = time.perf_counter()
        for u, v in pairs:
            r, pk = fn(u, v)
            results.append(r)
            if pk > peak:
                peak = pk
        wall = time.perf_counter() - t0
        if baseline is None:
            baseline = results
            base_route = route
        else:
            for i, (r, b) in enumerate(zip(results, baseline)):
                if r != b:
                    u, v = pairs[i]
                    raise _mismatch(route, base_route, i, u, v, r, b)
        reports.append(
            RouteReport(route, len(pairs), input_terms, wall, peak, setup)
        )
    _fill_ratios(reports)
    return reports


def render_text(workload, reports):
    lines = [
        f"workload {workload.name}: Cl{workload.signature}, "
        f"{reports[0].op_count} products, seed {workload.seed}, "
        f"all routes agree"
    ]
    header = f"{'route':<8} {'wall[s]':>10} {'ratio':>7} {'setup[s]':>10} {'peak terms':>11}"
    lines.append(header)
    for rep in reports:
        lines.append(
            f"{rep.route:<8} {rep.wall_time:>10.4f} {rep.ratio:>7.2f} "
            f"{rep.setup_time:>10.4f} {rep.peak_terms:>11d}"
        )
    return "\n".join(lines)


def render_records(workload, reports):
    out = []
    for rep in reports:
        out.append(
            {
                "kind": "bench",
                "workload": workload.name,
                "signature": list(workload.signature),
                "seed": workload.seed,
                "route": rep.route,
                "op_count": rep.op_count,
                "input_terms": rep.input_terms,
                "wall_time": rep.wall_time,
                "ratio": rep.ratio,
                "setup_time": rep.setup_time,
                "peak_terms": rep.peak_terms,
                "agree": True,
            }
        )
    return out
