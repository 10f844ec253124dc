"""Route pipelines: the same product through four representations.

Every route takes and returns multivectors in the caller's context, so
results are directly comparable:

* direct   - Chevalley-recursive product in the ambient algebra.
* gtensor  - split off the trailing generators, multiply blade pairs
             under the graded tensor product, merge back.
* tensor   - periodicity split with volume-element scaling, ungraded
             tensor product, inverse map, undo the relabeling.
* matrix   - shift down to 2x2 matrices over Cl(p-1,q-1), matrix
             product with Clifford entries, decompose, relabel back.
"""

from __future__ import annotations

from .algebra import cmul
from .climatrix import (
    build_basis_table,
    cm_matmul,
    evalm,
    from_table_basis,
    phi,
    to_table_basis,
)
from .errors import PreconditionError
from .tensor import (
    bas2gtbas,
    bas2tbas,
    cmul_gtensor,
    cmul_tensor,
    from_split_basis,
    gtbas2bas,
    gtensor_split,
    periodicity_split,
    tbas2bas,
    to_split_basis,
)

__all__ = ["ROUTES", "make_product", "default_tensor_kind"]

ROUTES = ("direct", "gtensor", "tensor", "matrix")


def default_tensor_kind(p, q):
    """First periodicity kind that fits the signature."""
    for kind, (a, b) in (("1+1", (1, 1)), ("4+0", (4, 0)), ("0+4", (0, 4))):
        if p >= a and q >= b:
            return kind
    raise PreconditionError(
        f"no periodicity split fits Cl({p},{q}); need p,q >= 1 or p >= 4 or q >= 4"
    )


def _direct(ctx):
    def prod(u, v):
        w = cmul(u, v)
        return w, w.term_count()

    return prod


def _gtensor(ctx, dim1):
    if dim1 is None:
        dim1 = ctx.n - min(2, ctx.n)
    spec = gtensor_split(ctx, dim1)

    def prod(u, v):
        z = cmul_gtensor(bas2gtbas(u, spec), bas2gtbas(v, spec))
        return gtbas2bas(z, spec), z.term_count()

    return prod


def _tensor(ctx, kind):
    sig = ctx.signature
    if sig is None:
        raise PreconditionError(
            "tensor route needs a sorted signature context; "
            "build one with --signature p,q"
        )
    p, q = sig
    if kind is None:
        kind = default_tensor_kind(p, q)
    spec = periodicity_split(p, q, kind)

    def prod(u, v):
        z = cmul_tensor(bas2tbas(to_split_basis(u, spec), spec),
                        bas2tbas(to_split_basis(v, spec), spec))
        return from_split_basis(tbas2bas(z, spec), spec), z.term_count()

    return prod


def _matrix(ctx, table):
    sig = ctx.signature
    if sig is None:
        raise PreconditionError(
            "matrix route needs a sorted signature context; "
            "build one with --signature p,q"
        )
    p, q = sig
    if p < 1 or q < 1:
        raise PreconditionError(
            f"matrix route needs a signature shiftable to (p+1,q+1); "
            f"Cl({p},{q}) has no (p-1,q-1) base"
        )
    if table is None:
        table = build_basis_table(p - 1, q - 1)
    elif table.signature != (p, q):
        raise PreconditionError(
            f"table is for Cl{table.signature}, context is Cl({p},{q})"
        )

    def prod(u, v):
        m = cm_matmul(
            evalm(to_table_basis(u, table), table),
            evalm(to_table_basis(v, table), table),
        )
        peak = sum(e.term_count() for row in m.entries for e in row)
        return from_table_basis(phi(m, table), table), peak

    return prod


def make_product(route, ctx, *, table=None, dim1=None, kind=None, with_stats=False):
    """Product function for a route; (result, peak term count) pairs
    when with_stats is set."""
    if route == "direct":
        fn = _direct(ctx)
    elif route == "gtensor":
        fn = _gtensor(ctx, dim1)
    elif route == "tensor":
        fn = _tensor(ctx, kind)
    elif route == "matrix":
        fn = _matrix(ctx, table)
    else:
        raise PreconditionError(
            f"unknown route {route!r}; expected one of {', '.join(ROUTES)}"
        )
    if with_stats:
        return fn
    return lambda u, v: fn(u, v)[0]
