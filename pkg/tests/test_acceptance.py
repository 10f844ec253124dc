"""Acceptance gate: one test per shipped guarantee.

Each test prints a single PASS line on success (visible with -s); the
pytest -v report carries the same per-criterion verdict.  Stated time
budgets are asserted, not just measured.
"""

import random
import time

import pytest

from cliffalg.algebra import (
    cmul,
    grade_involution,
    reversion,
    signature_form,
    symbolic_form,
    wedge,
    zero_form,
)
from cliffalg.bench import (
    golden_expected,
    golden_inputs,
    named_workload,
    random_multivector,
    random_vector,
    render_text,
    run_workload,
)
from cliffalg.classify import classify
from cliffalg.climatrix import (
    CM,
    CliMatrix,
    _TABLE_CACHE,
    build_basis_table,
    cm_matmul,
    evalm,
    from_table_basis,
    generator_matrices,
    phi,
    to_table_basis,
)
from cliffalg.errors import PreconditionError
from cliffalg.tensor import (
    _context_for_form,
    bas2gtbas,
    bas2tbas,
    block_diag_context,
    cmul_gtensor,
    cmul_tensor,
    gtensor_split,
    periodicity_split,
    t_grade_involution,
    t_reversion,
    tensor,
    volume_split,
)


def _ctx(p, q):
    return _context_for_form(signature_form(p, q).form)


def _passed(n, text):
    print(f"PASS criterion {n}: {text}")


@pytest.fixture(scope="module")
def table71():
    _TABLE_CACHE.pop((7, 1), None)
    t0 = time.perf_counter()
    table = build_basis_table(7, 1)
    return table, time.perf_counter() - t0


def test_criterion_01_golden_product(table71):
    table, build_seconds = table71
    assert build_seconds < 60.0, f"table build took {build_seconds:.1f}s"
    x, y = golden_inputs(table)
    want = golden_expected(table)
    assert want.term_count() == 12
    t0 = time.perf_counter()
    got = CM(x, y, table)
    product_seconds = time.perf_counter() - t0
    assert got == want
    assert product_seconds < 1.0, f"product took {product_seconds:.2f}s"
    _passed(
        1,
        f"golden 12-term product exact; build {build_seconds:.2f}s, "
        f"product {product_seconds:.3f}s",
    )


def test_criterion_02_cross_route_82(table71):
    table, _ = table71
    t0 = time.perf_counter()
    x, y = golden_inputs(table)
    via_matrix = CM(x, y, table)
    std = _ctx(8, 2)
    assert std.n == 10 and len(list(std.basis_masks())) == 1024
    xs = from_table_basis(x, table)
    ys = from_table_basis(y, table)
    direct = cmul(xs, ys)
    assert from_table_basis(via_matrix, table) == direct
    assert to_table_basis(direct, table) == via_matrix
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"cross-route check took {elapsed:.1f}s"
    _passed(2, f"direct and matrix routes agree at (8,2) in {elapsed:.2f}s")


def _graded_hom_exhaustive(ctx, dim1):
    spec = gtensor_split(ctx, dim1)
    for a in range(1 << ctx.n):
        x = ctx.basis_blade(a)
        ix = bas2gtbas(x, spec)
        for b in range(1 << ctx.n):
            y = ctx.basis_blade(b)
            assert bas2gtbas(cmul(x, y), spec) == cmul_gtensor(ix, bas2gtbas(y, spec))


def test_criterion_03_graded_homomorphism():
    t0 = time.perf_counter()
    for p, q in ((0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)):
        ctx = _ctx(p, q)
        _graded_hom_exhaustive(ctx, ctx.n // 2)
    sym = block_diag_context(
        _context_for_form(symbolic_form(2, "B1").form),
        _context_for_form(symbolic_form(2, "B2").form),
    )
    _graded_hom_exhaustive(sym, 2)
    ctx = _ctx(3, 3)
    spec = gtensor_split(ctx, 3)
    rng = random.Random(2024)
    for _ in range(500):
        x = random_multivector(ctx, rng, 5)
        y = random_multivector(ctx, rng, 5)
        assert bas2gtbas(cmul(x, y), spec) == cmul_gtensor(
            bas2gtbas(x, spec), bas2gtbas(y, spec)
        )
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0
    _passed(
        3,
        "graded iso is a homomorphism: exhaustive n<=5, symbolic n=4, "
        f"500 random n=6 pairs in {elapsed:.1f}s",
    )


def _ungraded_hom_exhaustive(p, q, kind):
    spec = periodicity_split(p, q, kind)
    ctx = spec.ambient
    for a in range(1 << ctx.n):
        x = ctx.basis_blade(a)
        ix = bas2tbas(x, spec)
        for b in range(1 << ctx.n):
            y = ctx.basis_blade(b)
            assert bas2tbas(cmul(x, y), spec) == cmul_tensor(ix, bas2tbas(y, spec))


def test_criterion_04_ungraded_homomorphism():
    t0 = time.perf_counter()
    for p, q, kind in (
        (1, 1, "1+1"),
        (2, 1, "1+1"),
        (2, 2, "1+1"),
        (3, 2, "1+1"),
        (4, 0, "4+0"),
        (4, 1, "4+0"),
    ):
        _ungraded_hom_exhaustive(p, q, kind)

    # random pairs at n = 6, both split kinds
    for p, q, kind in ((3, 3, "1+1"), (4, 2, "4+0")):
        spec = periodicity_split(p, q, kind)
        ctx = spec.ambient
        rng = random.Random(77)
        for _ in range(250):
            x = random_multivector(ctx, rng, 5)
            y = random_multivector(ctx, rng, 5)
            assert bas2tbas(cmul(x, y), spec) == cmul_tensor(
                bas2tbas(x, spec), bas2tbas(y, spec)
            )

    # vector squares: (x+y)^2 = (Q1(x) + Q2(y)) Id, image (...)(1 (x) 1)
    spec = periodicity_split(3, 3, "1+1")
    ctx = spec.ambient
    rng = random.Random(11)
    for _ in range(200):
        v = random_vector(ctx, rng)
        sq = cmul(v, v)
        quad = sum(
            c * c * ctx.form[m.bit_length() - 1][m.bit_length() - 1]
            for m, c in v.terms.items()
        )
        assert sq == ctx.one().scale(quad)
        assert bas2tbas(sq, spec) == tensor(
            spec.left.one(), spec.right.one()
        ).scale(quad)

    # fixed degree-2 fixture: orthogonal x1,x2 in V1 and y1,y2 in V2 give
    # (x1+y1)(x2+y2) -> x1^x2 (x) lam*1 + x1 (x) w*y2 + x2 (x) y1*w + 1 (x) y1^y2
    spec = periodicity_split(2, 2, "1+1")
    ctx = spec.ambient
    x1, x2 = ctx.generator(1), ctx.generator(2)
    y1, y2 = ctx.generator(3), ctx.generator(4)
    lx1, lx2 = spec.left.generator(1), spec.left.generator(2)
    ry1, ry2 = spec.right.generator(1), spec.right.generator(2)
    omega = spec.right.basis_blade(spec.omega_mask)
    want = (
        tensor(wedge(lx1, lx2), spec.right.one().scale(spec.lam))
        + tensor(lx1, cmul(omega, ry2))
        + tensor(lx2, cmul(ry1, omega))
        + tensor(spec.left.one(), wedge(ry1, ry2))
    )
    assert bas2tbas(cmul(x1 + y1, x2 + y2), spec) == want

    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0
    _passed(
        4,
        "ungraded iso is a homomorphism for 1+1 and 4+0 splits, vector "
        f"squares and the degree-2 fixture hold, in {elapsed:.1f}s",
    )


def test_criterion_05_involutions():
    # automorphism / anti-automorphism laws, exhaustive n <= 4
    for p, q in ((1, 1), (2, 1), (2, 2)):
        ctx = _ctx(p, q)
        for a in range(1 << ctx.n):
            x = ctx.basis_blade(a)
            assert reversion(reversion(x)) == x
            assert grade_involution(grade_involution(x)) == x
            for b in range(1 << ctx.n):
                y = ctx.basis_blade(b)
                z = cmul(x, y)
                assert grade_involution(z) == cmul(
                    grade_involution(x), grade_involution(y)
                )
                assert reversion(z) == cmul(reversion(y), reversion(x))

    # random at n = 6
    ctx = _ctx(3, 3)
    rng = random.Random(5150)
    for _ in range(200):
        x = random_multivector(ctx, rng, 6)
        y = random_multivector(ctx, rng, 6)
        z = cmul(x, y)
        assert reversion(z) == cmul(reversion(y), reversion(x))
        assert grade_involution(z) == cmul(grade_involution(x), grade_involution(y))
        assert reversion(reversion(x)) == x
        assert grade_involution(grade_involution(x)) == x

    # parity-dependent reversion on pair elements: x (x) y reverses to
    # rev(x) (x) rev(y) for even x and to rev(x) (x) rev(hat(y)) for odd x
    left, right = _ctx(1, 1), _ctx(2, 0)
    for a in range(4):
        x = left.basis_blade(a)
        for b in range(4):
            y = right.basis_blade(b)
            t = tensor(x, y)
            if a.bit_count() % 2 == 0:
                want = tensor(reversion(x), reversion(y))
            else:
                want = tensor(reversion(x), reversion(grade_involution(y)))
            assert t_reversion(t) == want
            assert t_grade_involution(t) == tensor(
                grade_involution(x), grade_involution(y)
            )

    # transport through the isomorphisms: reversion and grade involution
    # through the graded map, grade involution through the ungraded map
    for p, q, dim1 in ((2, 2, 2), (3, 2, 2)):
        ctx = _ctx(p, q)
        spec = gtensor_split(ctx, dim1)
        for a in range(1 << ctx.n):
            u = ctx.basis_blade(a)
            assert t_reversion(bas2gtbas(u, spec)) == bas2gtbas(reversion(u), spec)
            assert t_grade_involution(bas2gtbas(u, spec)) == bas2gtbas(
                grade_involution(u), spec
            )
    ctx = _ctx(3, 3)
    spec = gtensor_split(ctx, 3)
    uspec = periodicity_split(3, 3, "1+1")
    rng = random.Random(6)
    for _ in range(100):
        u = random_multivector(ctx, rng, 6)
        assert t_reversion(bas2gtbas(u, spec)) == bas2gtbas(reversion(u), spec)
        assert t_grade_involution(bas2gtbas(u, spec)) == bas2gtbas(
            grade_involution(u), spec
        )
        w = random_multivector(uspec.ambient, rng, 6)
        assert t_grade_involution(bas2tbas(w, uspec)) == bas2tbas(
            grade_involution(w), uspec
        )
        img = bas2tbas(w, uspec)
        assert t_reversion(t_reversion(img)) == img
        assert t_grade_involution(t_grade_involution(img)) == img
    _passed(
        5,
        "involution laws, involutivity, and parity-dependent transport "
        "hold exhaustively (n<=4) and at random (n=6)",
    )


def test_criterion_06_representation_checks():
    # the 2x2 scalar matrices reproduce the Cl(1,1) multiplication table
    table = build_basis_table(0, 0)
    base = table.base
    one, zero = base.one(), base.zero()
    assert table.entry(0b00) == CliMatrix.identity(base)
    assert table.entry(0b01) == CliMatrix(base, [[zero, one], [one, zero]])
    assert table.entry(0b10) == CliMatrix(base, [[zero, -one], [one, zero]])
    assert table.entry(0b11) == CliMatrix(base, [[one, zero], [zero, -one]])
    ctx = table.ambient
    for a in range(4):
        for b in range(4):
            lhs = cm_matmul(table.entry(a), table.entry(b))
            assert lhs == evalm(cmul(ctx.basis_blade(a), ctx.basis_blade(b)), table)

    # generator matrices at (7,1): squares and pairwise anticommutation
    gens = generator_matrices(7, 1)
    assert len(gens) == 10
    base = gens[0].ctx
    ident = CliMatrix.identity(base)
    for i, g in enumerate(gens, start=1):
        want = ident if i <= 7 or i == 9 else -ident
        assert cm_matmul(g, g) == want, f"generator {i} square"
    for i in range(10):
        for j in range(i + 1, 10):
            assert cm_matmul(gens[i], gens[j]) == -cm_matmul(gens[j], gens[i])
    _passed(6, "table reproduces Cl(1,1); (7,1) generators square and anticommute")


def test_criterion_07_phi_evalm_round_trip(table71):
    table, _ = table71
    ctx = table.ambient
    for mask in range(1 << 10):
        u = ctx.basis_blade(mask)
        assert phi(evalm(u, table), table) == u
    small = build_basis_table(3, 1)
    rng = random.Random(42)
    for _ in range(1000):
        u = random_multivector(small.ambient, rng, 8)
        m = evalm(u, table=small)
        assert phi(m, small) == u
    _passed(7, "phi(evalm(u)) = u on all 1,024 blades at (8,2) and 1,000 random at (4,2)")


def test_criterion_08_classification():
    cases = {
        (0, 0): "Mat(1,R)",
        (2, 0): "Mat(2,R)",
        (1, 1): "Mat(2,R)",
        (3, 1): "Mat(4,R)",
        (2, 2): "Mat(4,R)",
        (4, 2): "Mat(8,R)",
        (3, 3): "Mat(8,R)",
        (0, 6): "Mat(8,R)",
        (8, 0): "Mat(16,R)",
        (5, 3): "Mat(16,R)",
        (4, 4): "Mat(16,R)",
        (1, 7): "Mat(16,R)",
        (0, 8): "Mat(16,R)",
    }
    for (p, q), label in cases.items():
        got = classify(p, q)
        assert got.label() == label, f"Cl({p},{q})"
        assert got.base_ring == "R"
        assert got.real_dimension() == 1 << (p + q)
    _passed(8, "all 13 listed real signatures classify to the stated matrix algebras")


def test_criterion_09_wedge_limit():
    for n in range(6):
        ctx = _context_for_form(zero_form(n).form)
        for a in range(1 << n):
            x = ctx.basis_blade(a)
            for b in range(1 << n):
                y = ctx.basis_blade(b)
                assert cmul(x, y) == wedge(x, y)
    # ungraded split must reject a degenerate right factor
    degenerate = _context_for_form(
        ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0))
    )
    with pytest.raises(PreconditionError):
        volume_split(degenerate, 2)
    _passed(9, "B = 0 product equals wedge (n<=5); degenerate split rejected")


def test_criterion_10_bench_report():
    workload = named_workload("cl33-mixed")
    reports = run_workload(workload)  # raises on any route disagreement
    assert [r.route for r in reports] == ["direct", "gtensor", "tensor", "matrix"]
    text = render_text(workload, reports)
    assert "all routes agree" in text
    ratios = {r.route: r.ratio for r in reports}
    assert all(r.ratio > 0 for r in reports)
    _passed(
        10,
        "seeded Cl(3,3) workload: all routes agree; ratios vs direct "
        + ", ".join(f"{k}={v:.2f}" for k, v in ratios.items()),
    )
