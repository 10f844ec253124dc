import random

import pytest

from cliffalg.algebra import cmul, signature_form, symbolic_form
from cliffalg.bench import random_multivector
from cliffalg.errors import PreconditionError
from cliffalg.routes import ROUTES, default_tensor_kind, make_product
from cliffalg.tensor import _context_for_form


def _ctx(p, q):
    return _context_for_form(signature_form(p, q).form)


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3)])
def test_all_routes_agree_random(p, q):
    ctx = _ctx(p, q)
    prods = {r: make_product(r, ctx) for r in ROUTES}
    rng = random.Random(1000 * p + q)
    for _ in range(8):
        u = random_multivector(ctx, rng, 5)
        v = random_multivector(ctx, rng, 5)
        want = prods["direct"](u, v)
        for r in ROUTES[1:]:
            assert prods[r](u, v) == want, r


def test_routes_agree_on_generators_exhaustive():
    ctx = _ctx(2, 2)
    prods = {r: make_product(r, ctx) for r in ROUTES}
    for a in range(16):
        for b in range(16):
            u, v = ctx.basis_blade(a), ctx.basis_blade(b)
            want = cmul(u, v)
            for r in ROUTES[1:]:
                assert prods[r](u, v) == want


def test_with_stats_returns_counts():
    ctx = _ctx(2, 2)
    prod = make_product("direct", ctx, with_stats=True)
    w, peak = prod(ctx.generator(1), ctx.generator(2))
    assert w == ctx.blade(1, 2)
    assert peak == 1
    prod = make_product("matrix", ctx, with_stats=True)
    w, peak = prod(ctx.generator(1), ctx.generator(2))
    assert w == ctx.blade(1, 2)
    assert peak >= 1


def test_default_tensor_kind():
    assert default_tensor_kind(1, 1) == "1+1"
    assert default_tensor_kind(3, 3) == "1+1"
    assert default_tensor_kind(4, 0) == "4+0"
    assert default_tensor_kind(5, 0) == "4+0"
    assert default_tensor_kind(0, 4) == "0+4"
    with pytest.raises(PreconditionError):
        default_tensor_kind(3, 0)
    with pytest.raises(PreconditionError):
        default_tensor_kind(0, 3)


def test_route_preconditions():
    with pytest.raises(PreconditionError, match="unknown route"):
        make_product("sideways", _ctx(1, 1))
    sym = _context_for_form(symbolic_form(2, "B").form)
    with pytest.raises(PreconditionError):
        make_product("tensor", sym)
    with pytest.raises(PreconditionError):
        make_product("matrix", sym)
    with pytest.raises(PreconditionError):
        make_product("matrix", _ctx(2, 0))
    with pytest.raises(PreconditionError):
        make_product("tensor", _ctx(0, 4), kind="1+1")


def test_matrix_route_table_signature_check():
    from cliffalg.climatrix import build_basis_table

    ctx = _ctx(2, 2)
    table = build_basis_table(1, 1)
    prod = make_product("matrix", ctx, table=table)
    u = ctx.generator(1)
    assert prod(u, u) == ctx.one()
    with pytest.raises(PreconditionError, match="table is for"):
        make_product("matrix", _ctx(3, 1), table=table)


def test_gtensor_route_dim1_choices():
    ctx = _ctx(3, 1)
    base = make_product("direct", ctx)
    rng = random.Random(7)
    u = random_multivector(ctx, rng, 5)
    v = random_multivector(ctx, rng, 5)
    want = base(u, v)
    for dim1 in range(ctx.n + 1):
        prod = make_product("gtensor", ctx, dim1=dim1)
        assert prod(u, v) == want


def test_tensor_route_kind_choices():
    ctx = _ctx(4, 4)
    base = make_product("direct", ctx)
    rng = random.Random(9)
    u = random_multivector(ctx, rng, 4)
    v = random_multivector(ctx, rng, 4)
    want = base(u, v)
    for kind in ("1+1", "4+0", "0+4"):
        prod = make_product("tensor", ctx, kind=kind)
        assert prod(u, v) == want


def test_gtensor_route_symbolic_form():
    # graded route has no signature requirement, only block-diagonality
    from cliffalg.scalars import Poly

    a = Poly.atom("a")
    b = ((Poly.atom("b11"), Poly.atom("b12")), (Poly.atom("b21"), Poly.atom("b22")))
    form = (
        (a, 0, 0),
        (0,) + b[0],
        (0,) + b[1],
    )
    ctx = _context_for_form(form)
    prod = make_product("gtensor", ctx, dim1=1)
    for a in range(8):
        for b in range(8):
            u, v = ctx.basis_blade(a), ctx.basis_blade(b)
            assert prod(u, v) == cmul(u, v)
