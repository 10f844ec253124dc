"""Graded and ungraded tensor products of two Clifford algebras.

Two product structures live on the blade-pair space Cl(B1) (x) Cl(B2):

* graded:    (a(x)b)(a'(x)b') = (-1)^{|b||a'|} (aa' (x) bb')
* ungraded:  (a(x)b)(a'(x)b') = (aa' (x) bb')

The graded product makes the blade-pair map e_I -> e_I1 (x) e_I2 an
algebra isomorphism from the ambient Cl(B) whenever B is block
diagonal (bas2gtbas / gtbas2bas).  The ungraded product carries an
isomorphism only after rescaling: with omega the volume element of the
right factor and lam = omega^2 a nonzero scalar, the generator map

    x -> x (x) omega   (x in V1, left factor scaled to (1/lam) B1)
    y -> Id (x) y      (y in V2)

extends to an isomorphism (bas2tbas / tbas2bas).  A degenerate right
form has omega^2 = 0 and is rejected; there is no B -> 0 limit on this
route.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (
    AlgebraContext,
    Multivector,
    permute_generators,
    signature_form,
)
from .errors import ContextMismatch, PreconditionError
from .scalars import Poly, RAT_ONE, normalize_scalar, scalar_inverse

__all__ = [
    "TensorElement",
    "SplitSpec",
    "tensor",
    "switch",
    "gswitch",
    "cmul_gtensor",
    "cmul_tensor",
    "bas2gtbas",
    "gtbas2bas",
    "bas2tbas",
    "tbas2bas",
    "t_grade_involution",
    "t_reversion",
    "gtensor_split",
    "volume_split",
    "periodicity_split",
    "block_diag_context",
    "form_determinant",
]


def _acc(d, k, v):
    s = d.get(k)
    s = v if s is None else s + v
    if s:
        d[k] = s
    elif k in d:
        del d[k]


class TensorElement:
    """Formal sum of blade pairs over a fixed pair of contexts.

    Scalars are absorbed into the coefficient, stored once per blade
    pair, so (lam*u) (x) v == u (x) (lam*v) by construction.
    """

    __slots__ = ("left_ctx", "right_ctx", "terms")

    def __init__(self, left_ctx, right_ctx, terms):
        clean = {}
        for (a, b), c in terms.items():
            if a >> left_ctx.n or b >> right_ctx.n:
                raise PreconditionError(f"blade pair out of range: {(a, b)}")
            c = normalize_scalar(c)
            if c:
                clean[(a, b)] = c
        self.left_ctx = left_ctx
        self.right_ctx = right_ctx
        self.terms = clean

    def coeff(self, a, b):
        return self.terms.get((a, b), Fraction(0))

    def is_zero(self):
        return not self.terms

    def term_count(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.left_ctx == other.left_ctx
            and self.right_ctx == other.right_ctx
            and self.terms == other.terms
        )

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TensorElement(self.left_ctx, self.right_ctx, out)

    def __sub__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, -c)
        return TensorElement(self.left_ctx, self.right_ctx, out)

    def __neg__(self):
        return TensorElement(
            self.left_ctx, self.right_ctx, {k: -c for k, c in self.terms.items()}
        )

    def scale(self, c):
        return TensorElement(
            self.left_ctx, self.right_ctx, {k: c * v for k, v in self.terms.items()}
        )

    def _same(self, other):
        if (
            self.left_ctx != other.left_ctx
            or self.right_ctx != other.right_ctx
        ):
            raise ContextMismatch("tensor operands over different context pairs")

    def __str__(self):
        from .textio import tensor_text

        return tensor_text(self)

    def __repr__(self):
        return f"<tensor {self}>"


def tensor(u, v):
    """u (x) v for multivectors u, v (bilinear expansion)."""
    out = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            _acc(out, (a, b), ca * cb)
    return TensorElement(u.ctx, v.ctx, out)


def _check_position(i):
    if i != 1:
        raise PreconditionError(f"binary tensors have a single switch position, got {i}")


def switch(t, i=1):
    """Exchange the two factors, no sign."""
    _check_position(i)
    return TensorElement(
        t.right_ctx, t.left_ctx, {(b, a): c for (a, b), c in t.terms.items()}
    )


def gswitch(t, i=1):
    """Exchange the two factors with the sign (-1)^{|a||b|}."""
    _check_position(i)
    out = {}
    for (a, b), c in t.terms.items():
        if (a.bit_count() * b.bit_count()) & 1:
            c = -c
        out[(b, a)] = c
    return TensorElement(t.right_ctx, t.left_ctx, out)


_FORM_CTX_CACHE = {}


def _context_for_form(form):
    rows = tuple(tuple(normalize_scalar(c) for c in row) for row in form)
    ctx = _FORM_CTX_CACHE.get(rows)
    if ctx is None:
        ctx = AlgebraContext(rows)
        _FORM_CTX_CACHE[rows] = ctx
    return ctx


def _resolve_pair(x, y, form1, form2):
    x._same(y)
    lctx = x.left_ctx if form1 is None else _context_for_form(form1)
    rctx = x.right_ctx if form2 is None else _context_for_form(form2)
    if lctx.n != x.left_ctx.n or rctx.n != x.right_ctx.n:
        raise PreconditionError("override form dimension mismatch")
    return lctx, rctx


def _mul_terms(lctx, rctx, t1, t2, graded):
    out = {}
    for (a, b), c in t1.items():
        db = b.bit_count()
        for (a2, b2), d in t2.items():
            cd = c * d
            if graded and (db * a2.bit_count()) & 1:
                cd = -cd
            left = lctx.blade_product(a, a2)
            right = rctx.blade_product(b, b2)
            for ma, ca in left.items():
                for mb, cb in right.items():
                    _acc(out, (ma, mb), cd * ca * cb)
    return out


def cmul_gtensor(x, y, form1=None, form2=None):
    """Graded tensor product; forms default to the element contexts."""
    lctx, rctx = _resolve_pair(x, y, form1, form2)
    return TensorElement(lctx, rctx, _mul_terms(lctx, rctx, x.terms, y.terms, True))


def cmul_tensor(x, y, form1=None, form2=None):
    """Ungraded tensor product; the right form must be nondegenerate."""
    lctx, rctx = _resolve_pair(x, y, form1, form2)
    _require_nondegenerate(rctx)
    return TensorElement(lctx, rctx, _mul_terms(lctx, rctx, x.terms, y.terms, False))


# -- nondegeneracy ------------------------------------------------------

_NONDEG_CACHE = {}


def form_determinant(ctx):
    """Determinant of the form, by division-free expansion (symbolic ok)."""
    n = ctx.n
    if n == 0:
        return Fraction(1)
    rows = ctx.form
    memo = {}

    def minor(r, cols):
        if r == n:
            return Fraction(1)
        key = cols
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = Fraction(0)
        sign = 1
        m = cols
        while m:
            low = m & -m
            j = low.bit_length() - 1
            c = rows[r][j]
            if c:
                sub = minor(r + 1, cols ^ low)
                term = c * sub
                total = total + (term if sign > 0 else -term)
            sign = -sign
            m ^= low
        memo[key] = total
        return total

    return normalize_scalar(minor(0, (1 << n) - 1))


def _require_nondegenerate(ctx):
    ok = _NONDEG_CACHE.get(ctx)
    if ok is None:
        ok = bool(form_determinant(ctx))
        _NONDEG_CACHE[ctx] = ok
    if not ok:
        raise PreconditionError(
            "right factor form is degenerate; the ungraded route has no B->0 limit"
        )


# -- splits -------------------------------------------------------------


class SplitSpec:
    """A split of the ambient generators into V1 (leading dim1) and V2
    (trailing dim2), with everything both tensor routes need.

    left_raw carries the restricted form B1, left the scaled (1/lam)B1
    used by the ungraded route.  For splits built from a sorted
    signature whose block order differs from Sylvester order, perm maps
    split generator positions to standard positions and standard holds
    the sorted context.
    """

    __slots__ = (
        "ambient",
        "dim1",
        "dim2",
        "left_raw",
        "left",
        "right",
        "omega_mask",
        "lam",
        "perm",
        "standard",
        "_t_images",
        "_t_inverse",
    )

    def __init__(
        self,
        ambient,
        dim1,
        dim2,
        left_raw,
        right,
        left=None,
        omega_mask=None,
        lam=None,
        perm=None,
        standard=None,
    ):
        self.ambient = ambient
        self.dim1 = dim1
        self.dim2 = dim2
        self.left_raw = left_raw
        self.left = left
        self.right = right
        self.omega_mask = omega_mask
        self.lam = lam
        self.perm = perm
        self.standard = standard
        self._t_images = {}
        self._t_inverse = None

    def supports_ungraded(self):
        return self.lam is not None

    def __repr__(self):
        tag = f"{self.dim1}+{self.dim2}"
        if self.lam is not None:
            tag += f" lam={self.lam}"
        return f"<split {self.ambient!r} {tag}>"


def _split_blocks(ambient, dim1):
    n = ambient.n
    dim2 = n - dim1
    if dim1 < 0 or dim2 < 0:
        raise PreconditionError("split dimensions out of range")
    form = ambient.form
    for i in range(dim1):
        for j in range(dim1, n):
            if form[i][j] or form[j][i]:
                raise PreconditionError(
                    "ambient form is not block-diagonal for this split"
                )
    b1 = tuple(row[:dim1] for row in form[:dim1])
    b2 = tuple(row[dim1:] for row in form[dim1:])
    return b1, b2


def gtensor_split(ambient, dim1):
    """Split for the graded route; any block-diagonal form works."""
    b1, b2 = _split_blocks(ambient, dim1)
    return SplitSpec(
        ambient,
        dim1,
        ambient.n - dim1,
        _context_for_form(b1),
        _context_for_form(b2),
    )


def volume_split(ambient, dim1):
    """Split for the ungraded route: even right factor, omega^2 != 0.

    omega^2 is computed by the Clifford product, never assumed; it must
    come out as a nonzero rational multiple of Id or the split is
    rejected (degenerate or symbolic right factors have no scaling).
    """
    b1, b2 = _split_blocks(ambient, dim1)
    dim2 = ambient.n - dim1
    if dim2 % 2 != 0 or dim2 == 0:
        raise PreconditionError("right factor must have even positive dimension")
    right = _context_for_form(b2)
    omega_mask = (1 << dim2) - 1
    omega = right.basis_blade(omega_mask)
    omega_sq = omega * omega
    if set(omega_sq.terms) - {0}:
        raise PreconditionError("volume element square is not scalar")
    lam = omega_sq.coeff(0)
    if isinstance(lam, Poly) or not lam:
        raise PreconditionError(
            f"volume element square must be a nonzero rational, got {lam!r}"
        )
    inv = scalar_inverse(lam)
    scaled = tuple(tuple(inv * c for c in row) for row in b1)
    return SplitSpec(
        ambient,
        dim1,
        dim2,
        _context_for_form(b1),
        right,
        left=_context_for_form(scaled),
        omega_mask=omega_mask,
        lam=lam,
    )


_PERIODICITY_KINDS = {
    "1+1": (1, 1),
    "4+0": (4, 0),
    "0+4": (0, 4),
    "8+0": (8, 0),
    "0+8": (0, 8),
}


def _matched_perm(split_diag, std_diag):
    """Order-preserving within each sign class: split position -> std index."""
    pools = {}
    for pos, s in enumerate(std_diag, start=1):
        pools.setdefault(s, []).append(pos)
    perm = []
    for s in split_diag:
        perm.append(pools[s].pop(0))
    return tuple(perm)


def periodicity_split(p, q, kind):
    """Split Cl(p,q) with a trailing factor of signature given by kind.

    The ambient context is block-ordered diag(delta_{p-a,q-b},
    delta_{a,b}); when that differs from the sorted Sylvester order the
    spec carries the generator permutation into the sorted context.
    """
    try:
        a, b = _PERIODICITY_KINDS[kind]
    except KeyError:
        raise PreconditionError(
            f"unknown split kind {kind!r}; expected one of "
            + ", ".join(sorted(_PERIODICITY_KINDS))
        ) from None
    if p < a or q < b:
        raise PreconditionError(
            f"signature ({p},{q}) too small for a {kind} split"
        )
    head = [1] * (p - a) + [-1] * (q - b)
    tail = [1] * a + [-1] * b
    diag = head + tail
    n = p + q
    ambient = _context_for_form(
        tuple(
            tuple(Fraction(diag[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
    )
    spec = volume_split(ambient, n - (a + b))
    std = signature_form(p, q)
    if ambient != std:
        spec.perm = _matched_perm(diag, [1] * p + [-1] * q)
        spec.standard = std
    return spec


def to_split_basis(u, spec):
    """Relabel a sorted-signature multivector into the split ordering."""
    if spec.perm is None:
        if u.ctx != spec.ambient:
            raise ContextMismatch("multivector not in the split's ambient context")
        return u
    if u.ctx != spec.standard:
        raise ContextMismatch("multivector not in the split's standard context")
    inv = [0] * len(spec.perm)
    for split_pos, std_pos in enumerate(spec.perm, start=1):
        inv[std_pos - 1] = split_pos
    return permute_generators(u, inv, spec.ambient)


def from_split_basis(u, spec):
    """Relabel a split-ordered multivector back to the sorted signature."""
    if spec.perm is None:
        return u
    if u.ctx != spec.ambient:
        raise ContextMismatch("multivector not in the split's ambient context")
    return permute_generators(u, spec.perm, spec.standard)


# -- graded route isomorphism ------------------------------------------


def bas2gtbas(u, spec):
    """Ambient blades to blade pairs: e_I -> e_I1 (x) e_I2, no sign.

    This is the unique algebra homomorphism (for cmul_gtensor) that
    sends e_i to e_i (x) Id for i <= dim1 and to Id (x) e_{i-dim1}
    otherwise; ascending-index products of those images reproduce it
    exactly on every blade.
    """
    if u.ctx != spec.ambient:
        raise ContextMismatch("multivector not in the split's ambient context")
    lo = (1 << spec.dim1) - 1
    out = {}
    for mask, c in u.terms.items():
        _acc(out, (mask & lo, mask >> spec.dim1), c)
    return TensorElement(spec.left_raw, spec.right, out)


def gtbas2bas(x, spec):
    if x.left_ctx != spec.left_raw or x.right_ctx != spec.right:
        raise ContextMismatch("tensor element not over this split's factors")
    out = {}
    for (a, b), c in x.terms.items():
        _acc(out, a | (b << spec.dim1), c)
    return Multivector(spec.ambient, out)


# -- ungraded route isomorphism ----------------------------------------


def _t_generator_image(spec, i):
    if i <= spec.dim1:
        return {(1 << (i - 1), spec.omega_mask): RAT_ONE}
    return {(0, 1 << (i - spec.dim1 - 1)): RAT_ONE}


def _t_blade_image(spec, mask):
    """Image of an ambient blade under the ungraded isomorphism.

    Extends the generator map homomorphically: with i the smallest
    index of the blade, e_I = e_i ^ e_rest satisfies (as algebra
    elements) e_I = e_i * e_rest - (e_i _| e_rest), so the image is
    image(e_i) *_t image(e_rest) - image(e_i _| e_rest), the ambient
    contraction taken under the unscaled ambient form.  On diagonal
    forms the contraction vanishes and this is exactly the ascending
    product of generator images.
    """
    hit = spec._t_images.get(mask)
    if hit is not None:
        return hit
    if mask == 0:
        out = {(0, 0): RAT_ONE}
    else:
        low = mask & -mask
        i = low.bit_length()
        rest = mask ^ low
        out = _mul_terms(
            spec.left,
            spec.right,
            _t_generator_image(spec, i),
            _t_blade_image(spec, rest),
            False,
        )
        for m, c in spec.ambient.blade_contract(low, rest).items():
            for key, c2 in _t_blade_image(spec, m).items():
                _acc(out, key, -(c * c2))
    spec._t_images[mask] = out
    return out


def bas2tbas(u, spec):
    if not spec.supports_ungraded():
        raise PreconditionError("split has no volume scaling; ungraded route invalid")
    if u.ctx != spec.ambient:
        raise ContextMismatch("multivector not in the split's ambient context")
    out = {}
    for mask, c in u.terms.items():
        for key, c2 in _t_blade_image(spec, mask).items():
            _acc(out, key, c * c2)
    return TensorElement(spec.left, spec.right, out)


def _t_inverse_table(spec):
    if spec._t_inverse is not None:
        return spec._t_inverse
    n = spec.ambient.n
    images = [_t_blade_image(spec, mask) for mask in range(1 << n)]
    if all(len(img) == 1 for img in images):
        table = {}
        clash = False
        for mask, img in enumerate(images):
            (key, c), = img.items()
            if key in table:
                clash = True
                break
            table[key] = (mask, scalar_inverse(c))
        if not clash:
            spec._t_inverse = ("sparse", table)
            return spec._t_inverse
    # dense exact inverse for non-diagonal rational forms
    dim2 = spec.dim2
    size = 1 << n

    def col(key):
        a, b = key
        return (a << dim2) | b

    matrix = [[Fraction(0)] * size for _ in range(size)]
    for mask, img in enumerate(images):
        for key, c in img.items():
            if isinstance(c, Poly):
                raise PreconditionError(
                    "cannot invert a symbolic split image table"
                )
            matrix[col(key)][mask] = c
    inverse = _invert_matrix(matrix)
    spec._t_inverse = ("dense", inverse)
    return spec._t_inverse


def _invert_matrix(matrix):
    n = len(matrix)
    aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c]), None)
        if pivot is None:
            raise PreconditionError("split image table is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def tbas2bas(x, spec):
    if not spec.supports_ungraded():
        raise PreconditionError("split has no volume scaling; ungraded route invalid")
    if x.left_ctx != spec.left or x.right_ctx != spec.right:
        raise ContextMismatch("tensor element not over this split's factors")
    kind, table = _t_inverse_table(spec)
    out = {}
    if kind == "sparse":
        for key, c in x.terms.items():
            if key not in table:
                raise PreconditionError(f"blade pair {key} not in the image basis")
            mask, inv = table[key]
            _acc(out, mask, c * inv)
    else:
        dim2 = spec.dim2
        vec = {}
        for (a, b), c in x.terms.items():
            vec[(a << dim2) | b] = c
        for mask in range(len(table)):
            total = Fraction(0)
            row_ok = False
            for j, c in vec.items():
                f = table[mask][j]
                if f:
                    total = total + f * c
                    row_ok = True
            if row_ok and total:
                out[mask] = total
    return Multivector(spec.ambient, out)


# -- involutions on tensor elements ------------------------------------


def t_grade_involution(t):
    out = {}
    for (a, b), c in t.terms.items():
        if (a.bit_count() + b.bit_count()) & 1:
            c = -c
        out[(a, b)] = c
    return TensorElement(t.left_ctx, t.right_ctx, out)


def _rev_sign(d):
    return -1 if (d * (d - 1) // 2) & 1 else 1


def t_reversion(t):
    """Parity-dependent reversion: factorwise on even left factors,
    with an extra grade involution on the right for odd left factors."""
    out = {}
    for (a, b), c in t.terms.items():
        da, db = a.bit_count(), b.bit_count()
        sign = _rev_sign(da) * _rev_sign(db)
        if da & 1 and db & 1:
            sign = -sign
        out[(a, b)] = c if sign > 0 else -c
    return TensorElement(t.left_ctx, t.right_ctx, out)


def block_diag_context(ctx1, ctx2):
    """Ambient context with form diag(B1, B2)."""
    n1, n2 = ctx1.n, ctx2.n
    z = Fraction(0)
    rows = []
    for i in range(n1):
        rows.append(tuple(ctx1.form[i]) + (z,) * n2)
    for i in range(n2):
        rows.append((z,) * n1 + tuple(ctx2.form[i]))
    return _context_for_form(tuple(rows))
