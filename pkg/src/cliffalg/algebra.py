"""Grassmann/Clifford arithmetic over a fixed algebra context.

Basis blades are encoded as bitmasks: bit i-1 set means generator e_i
is a factor.  Ascending bitmask order is the inverse lexicographic
order on index sets (compare the largest differing index first), which
is the canonical display and serialization order throughout.

The Clifford product is computed by recursive expansion of the left
factor: for a vector x,  x*u = x_|u + x^u,  and for a higher blade
e_I = e_i ^ e_rest (i the smallest index),

    e_I * v = e_i * (e_rest * v) - (e_i _| e_rest) * v.

Blade-by-blade products are memoized per context, so repeated products
in one algebra amortize to table lookups.  The bilinear form B is
arbitrary: non-symmetric, degenerate and symbolic entries are all
allowed; B = 0 turns cmul into the wedge product.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContextMismatch, PreconditionError
from .scalars import Poly, RAT_ONE, normalize_scalar

__all__ = [
    "AlgebraContext",
    "Multivector",
    "blade_normalize",
    "cmul",
    "grade_involution",
    "grade_project",
    "left_contract",
    "mask_of",
    "indices_of",
    "permute_generators",
    "reversion",
    "signature_form",
    "symbolic_form",
    "wedge",
    "zero_form",
]


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def indices_of(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def blade_normalize(indices, n=None):
    """Sort generator indices into a canonical blade.

    Returns (sign, indices) where sign is the parity of the sorting
    permutation, or (0, ()) when an index repeats (e^e = 0).
    """
    seq = tuple(indices)
    for i in seq:
        if not isinstance(i, int) or i < 1 or (n is not None and i > n):
            raise PreconditionError(f"generator index out of range: {i}")
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(seq))


def _merge_sign(a, b):
    """Sign of sorting the concatenation of two ascending blades a, b."""
    inv = 0
    m = b
    while m:
        low = m & -m
        inv += (a >> low.bit_length()).bit_count()
        m ^= low
    return -1 if inv & 1 else 1


def _acc(d, k, v):
    s = d.get(k)
    s = v if s is None else s + v
    if s:
        d[k] = s
    elif k in d:
        del d[k]


class AlgebraContext:
    """A Clifford algebra: dimension n plus an n x n bilinear form.

    When the form is the Sylvester diagonal diag(+1 x p, -1 x q) the
    context carries a (p, q) signature tag.  Contexts are immutable;
    the product caches they hold are append-only memo tables.
    """

    __slots__ = ("n", "form", "signature", "_mul_cache", "_lc_cache", "_hash")

    def __init__(self, form):
        rows = tuple(tuple(normalize_scalar(c) for c in row) for row in form)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise PreconditionError("form must be square")
        self.n = n
        self.form = rows
        self.signature = self._detect_signature()
        self._mul_cache = {}
        self._lc_cache = {}
        self._hash = hash((n, rows))

    def _detect_signature(self):
        diag = self.diagonal()
        if diag is None:
            return None
        p = 0
        while p < self.n and diag[p] == 1:
            p += 1
        for c in diag[p:]:
            if c != -1:
                return None
        return (p, self.n - p)

    def diagonal(self):
        """The diagonal as a tuple if the form is diagonal, else None."""
        for i in range(self.n):
            for j in range(self.n):
                if i != j and self.form[i][j]:
                    return None
        return tuple(self.form[i][i] for i in range(self.n))

    def is_symbolic(self):
        return any(isinstance(c, Poly) for row in self.form for c in row)

    def __eq__(self, other):
        if not isinstance(other, AlgebraContext):
            return NotImplemented
        return self.n == other.n and self.form == other.form

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.signature is not None:
            return "Cl(%d,%d)" % self.signature
        return f"Cl[form {self.n}x{self.n}]"

    # -- element constructors ------------------------------------------

    def mv(self, terms):
        return Multivector(self, terms)

    def zero(self):
        return Multivector(self, {})

    def scalar(self, c):
        return Multivector(self, {0: c})

    def one(self):
        return Multivector(self, {0: RAT_ONE})

    def generator(self, i):
        if not 1 <= i <= self.n:
            raise PreconditionError(f"generator index out of range: e{i}")
        return Multivector(self, {1 << (i - 1): RAT_ONE})

    def blade(self, *indices):
        sign, sorted_ix = blade_normalize(indices, self.n)
        if sign == 0:
            return self.zero()
        return Multivector(self, {mask_of(sorted_ix): Fraction(sign)})

    def basis_blade(self, mask):
        if mask >> self.n:
            raise PreconditionError(f"blade mask out of range: {mask:#x}")
        return Multivector(self, {mask: RAT_ONE})

    def basis_masks(self):
        """All 2^n blade masks in inverse lexicographic order."""
        return range(1 << self.n)

    def form_entry(self, i, j):
        return self.form[i - 1][j - 1]

    # -- blade-level products (memoized) -------------------------------

    def _vector_mul(self, i, b):
        """e_i * e_b as a {mask: coeff} dict: contraction plus wedge."""
        key = (-i, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        out = {}
        row = self.form[i - 1]
        sign = 1
        m = b
        while m:
            low = m & -m
            k = low.bit_length()
            c = row[k - 1]
            if c:
                _acc(out, b ^ low, c if sign > 0 else -c)
            sign = -sign
            m ^= low
        ibit = 1 << (i - 1)
        if not (b & ibit):
            s = _merge_sign(ibit, b)
            _acc(out, b | ibit, Fraction(s))
        self._mul_cache[key] = out
        return out

    def _vector_contract(self, i, b):
        """e_i _| e_b as a {mask: coeff} dict."""
        out = {}
        row = self.form[i - 1]
        sign = 1
        m = b
        while m:
            low = m & -m
            k = low.bit_length()
            c = row[k - 1]
            if c:
                _acc(out, b ^ low, c if sign > 0 else -c)
            sign = -sign
            m ^= low
        return out

    def blade_product(self, a, b):
        """Clifford product e_a * e_b as a {mask: coeff} dict."""
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        if a == 0:
            out = {b: RAT_ONE}
        else:
            low = a & -a
            i = low.bit_length()
            rest = a ^ low
            out = {}
            for m, c in self.blade_product(rest, b).items():
                for m2, c2 in self._vector_mul(i, m).items():
                    _acc(out, m2, c * c2)
            for m, c in self._vector_contract(i, rest).items():
                for m2, c2 in self.blade_product(m, b).items():
                    _acc(out, m2, -c * c2)
        self._mul_cache[key] = out
        return out

    def blade_contract(self, a, b):
        """Left contraction e_a _| e_b as a {mask: coeff} dict."""
        key = (a, b)
        hit = self._lc_cache.get(key)
        if hit is not None:
            return hit
        if a == 0:
            out = {b: RAT_ONE}
        else:
            low = a & -a
            i = low.bit_length()
            rest = a ^ low
            out = {}
            for m, c in self.blade_contract(rest, b).items():
                for m2, c2 in self._vector_contract(i, m).items():
                    _acc(out, m2, c * c2)
        self._lc_cache[key] = out
        return out


def signature_form(p, q):
    """Context for Cl(p,q): form diag(+1 x p, -1 x q), tag set."""
    if p < 0 or q < 0:
        raise PreconditionError("signature parts must be nonnegative")
    diag = [Fraction(1)] * p + [Fraction(-1)] * q
    n = p + q
    return AlgebraContext(
        tuple(
            tuple(diag[i] if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
    )


def zero_form(n):
    """Context with B = 0; cmul degenerates to the wedge product."""
    z = Fraction(0)
    return AlgebraContext(tuple(tuple(z for _ in range(n)) for _ in range(n)))


def symbolic_form(n, name="B"):
    """Context whose form entries are the indeterminates name[i,j]."""
    return AlgebraContext(
        tuple(
            tuple(Poly.atom(f"{name}[{i},{j}]") for j in range(1, n + 1))
            for i in range(1, n + 1)
        )
    )


class Multivector:
    """Immutable sparse element of one algebra context.

    terms maps blade masks to nonzero scalars.  Operators: + - on
    elements, * for scalar multiples and the Clifford product, ^ for
    wedge.  All operations return new objects.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        clean = {}
        for mask, c in terms.items():
            if mask >> ctx.n:
                raise PreconditionError(
                    f"blade {indices_of(mask)} invalid in {ctx!r}"
                )
            c = normalize_scalar(c)
            if c:
                clean[mask] = c
        self.ctx = ctx
        self.terms = clean

    def coeff(self, mask):
        return self.terms.get(mask, Fraction(0))

    def is_zero(self):
        return not self.terms

    def grades(self):
        return sorted({m.bit_count() for m in self.terms})

    def max_degree(self):
        return max((m.bit_count() for m in self.terms), default=0)

    def term_count(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __add__(self, other):
        _same_ctx(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return Multivector(self.ctx, out)

    def __sub__(self, other):
        _same_ctx(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, -c)
        return Multivector(self.ctx, out)

    def __neg__(self):
        return Multivector(self.ctx, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = normalize_scalar(c)
        if not c:
            return self.ctx.zero()
        return Multivector(self.ctx, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return cmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __xor__(self, other):
        return wedge(self, other)

    def __str__(self):
        from .textio import multivector_text

        return multivector_text(self)

    def __repr__(self):
        return f"<{self.ctx!r} {self}>"


def _same_ctx(u, v):
    if u.ctx != v.ctx:
        raise ContextMismatch(f"operands in different contexts: {u.ctx!r} vs {v.ctx!r}")


def wedge(u, v):
    _same_ctx(u, v)
    out = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            if a & b:
                continue
            s = _merge_sign(a, b)
            _acc(out, a | b, ca * cb if s > 0 else -(ca * cb))
    return Multivector(u.ctx, out)


def left_contract(u, w):
    _same_ctx(u, w)
    ctx = u.ctx
    out = {}
    for a, ca in u.terms.items():
        for b, cb in w.terms.items():
            cab = ca * cb
            for m, c in ctx.blade_contract(a, b).items():
                _acc(out, m, cab * c)
    return Multivector(ctx, out)


def cmul(u, v):
    _same_ctx(u, v)
    ctx = u.ctx
    out = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            cab = ca * cb
            for m, c in ctx.blade_product(a, b).items():
                _acc(out, m, cab * c)
    return Multivector(ctx, out)


def grade_involution(u):
    return Multivector(
        u.ctx,
        {m: (c if m.bit_count() % 2 == 0 else -c) for m, c in u.terms.items()},
    )


def reversion(u):
    out = {}
    for m, c in u.terms.items():
        d = m.bit_count()
        out[m] = -c if (d * (d - 1) // 2) & 1 else c
    return Multivector(u.ctx, out)


def grade_project(u, k):
    if not 0 <= k <= u.ctx.n:
        raise PreconditionError(f"grade {k} out of range 0..{u.ctx.n}")
    return Multivector(
        u.ctx, {m: c for m, c in u.terms.items() if m.bit_count() == k}
    )


def permute_generators(u, perm, target):
    """Relabel generators: e_i of u.ctx becomes e_perm[i-1] of target.

    perm must be a bijection of 1..n; blades are re-sorted with the
    usual transposition parity.  This is an algebra isomorphism when
    the two forms correspond entry-by-entry under the permutation.
    """
    if len(perm) != u.ctx.n or u.ctx.n != target.n:
        raise PreconditionError("permutation length must match dimension")
    out = {}
    for mask, c in u.terms.items():
        mapped = [perm[i - 1] for i in indices_of(mask)]
        sign, sorted_ix = blade_normalize(mapped, target.n)
        _acc(out, mask_of(sorted_ix), c if sign > 0 else -c)
    return Multivector(target, out)
