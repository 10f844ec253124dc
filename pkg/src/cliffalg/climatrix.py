"""Clifford-valued matrices and the 2x2 representation of Cl(p+1,q+1).

The two extra generators of Cl(p+1,q+1) are represented over Cl(p,q) by

    E_{n+1} = [[0, Id], [Id, 0]]      squares to +ID
    E_{n+2} = [[0, -Id], [Id, 0]]     squares to -ID

and each base generator e_i by diag(e_i, -e_i).  Products of these in
ascending index order represent every ambient blade; the resulting
basis table makes phi (matrix to multivector) and evalm (multivector
to matrix) mutually inverse linear maps, with cm_matmul carried to the
Clifford product.

The table's ambient context keeps the construction's generator order:
the base signature block first, then the +1 and -1 extra generators.
For a base with q > 0 that differs from the sorted Cl(p+1,q+1) order,
so the table carries the order-preserving relabeling permutation
(to_table_basis / from_table_basis).
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .algebra import (
    Multivector,
    permute_generators,
    signature_form,
)
from .errors import ContextMismatch, ParseError, PreconditionError, TableError
from .tensor import _context_for_form, _matched_perm

__all__ = [
    "CliMatrix",
    "BasisTable",
    "generator_matrices",
    "cm_matmul",
    "build_basis_table",
    "mat_ambient_context",
    "phi",
    "evalm",
    "CM",
    "matrix_involutions",
    "iterate_rep",
    "to_table_basis",
    "from_table_basis",
    "spinor_basis_matrices",
    "save_table",
    "load_table",
]


class CliMatrix:
    """Square matrix of multivectors over one base context."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx, entries):
        rows = tuple(tuple(row) for row in entries)
        size = len(rows)
        if size == 0 or size & (size - 1):
            raise PreconditionError("matrix size must be a power of two")
        for row in rows:
            if len(row) != size:
                raise PreconditionError("matrix must be square")
            for e in row:
                if not isinstance(e, Multivector) or e.ctx != ctx:
                    raise ContextMismatch("matrix entries must share the base context")
        self.ctx = ctx
        self.entries = rows

    @property
    def size(self):
        return len(self.entries)

    @classmethod
    def identity(cls, ctx, size=2):
        one = ctx.one()
        zero = ctx.zero()
        return cls(
            ctx,
            [[one if i == j else zero for j in range(size)] for i in range(size)],
        )

    @classmethod
    def zeros(cls, ctx, size=2):
        zero = ctx.zero()
        return cls(ctx, [[zero] * size for _ in range(size)])

    def _same(self, other):
        if not isinstance(other, CliMatrix):
            raise PreconditionError("expected a Clifford-valued matrix")
        if self.ctx != other.ctx or self.size != other.size:
            raise ContextMismatch("matrix shape or base context mismatch")

    def __eq__(self, other):
        if not isinstance(other, CliMatrix):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.size == other.size
            and self.entries == other.entries
        )

    def __add__(self, other):
        self._same(other)
        return CliMatrix(
            self.ctx,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        self._same(other)
        return CliMatrix(
            self.ctx,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self):
        return CliMatrix(self.ctx, [[-a for a in row] for row in self.entries])

    def scale(self, c):
        return CliMatrix(self.ctx, [[a.scale(c) for a in row] for row in self.entries])

    def __str__(self):
        rows = " ; ".join(
            " | ".join(str(e) for e in row) for row in self.entries
        )
        return f"[{rows}]"

    def __repr__(self):
        return f"<climatrix {self}>"


def cm_matmul(a, b):
    """Matrix product with the Clifford product on entries."""
    a._same(b)
    size = a.size
    ctx = a.ctx
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = {}
            for k in range(size):
                for ma, ca in a.entries[i][k].terms.items():
                    for mb, cb in b.entries[k][j].terms.items():
                        c = ca * cb
                        for m, cc in ctx.blade_product(ma, mb).items():
                            s = acc.get(m)
                            s = c * cc if s is None else s + c * cc
                            if s:
                                acc[m] = s
                            elif m in acc:
                                del acc[m]
            row.append(Multivector(ctx, acc))
        out.append(row)
    return CliMatrix(ctx, out)


def generator_matrices(p, q):
    """The p+q+2 generator matrices of Cl(p+1,q+1) over Cl(p,q)."""
    if p < 0 or q < 0:
        raise PreconditionError("signature components must be nonnegative")
    ctx = _context_for_form(signature_form(p, q).form)
    one = ctx.one()
    zero = ctx.zero()
    gens = []
    for i in range(1, p + q + 1):
        g = ctx.generator(i)
        gens.append(CliMatrix(ctx, [[g, zero], [zero, -g]]))
    gens.append(CliMatrix(ctx, [[zero, one], [one, zero]]))
    gens.append(CliMatrix(ctx, [[zero, -one], [one, zero]]))
    return gens


def mat_ambient_context(p, q):
    """Ambient context in the table's generator order: base block, +1, -1."""
    diag = [1] * p + [-1] * q + [1, -1]
    n = p + q + 2
    return _context_for_form(
        tuple(
            tuple(Fraction(diag[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
    )


class BasisTable:
    """All 2^(p+q+2) blade matrices E_I, keyed by ambient blade mask."""

    __slots__ = (
        "base",
        "ambient",
        "standard",
        "perm",
        "entries",
        "base_signature",
        "signature",
    )

    def __init__(self, base, ambient, entries, base_signature):
        p, q = base_signature
        self.base = base
        self.ambient = ambient
        self.entries = entries
        self.base_signature = (p, q)
        self.signature = (p + 1, q + 1)
        std = _context_for_form(signature_form(p + 1, q + 1).form)
        if ambient == std:
            self.standard = std
            self.perm = None
        else:
            self.standard = std
            diag = [1] * p + [-1] * q + [1, -1]
            self.perm = _matched_perm(diag, [1] * (p + 1) + [-1] * (q + 1))

    def entry(self, mask):
        return self.entries[mask]

    def ordered_masks(self):
        return sorted(self.entries, key=lambda m: (m.bit_count(), m))

    def __eq__(self, other):
        if not isinstance(other, BasisTable):
            return NotImplemented
        return (
            self.base == other.base
            and self.signature == other.signature
            and self.entries == other.entries
        )

    def __repr__(self):
        p1, q1 = self.signature
        return f"<basistable ({p1},{q1}) {len(self.entries)} entries>"


_TABLE_CACHE = {}


def build_basis_table(p, q):
    """E_I for every ambient blade, by ascending-index generator products."""
    key = (p, q)
    hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit
    gens = generator_matrices(p, q)
    base = gens[0].ctx if gens else _context_for_form(signature_form(0, 0).form)
    n2 = p + q + 2
    entries = {0: CliMatrix.identity(base)}
    for mask in range(1, 1 << n2):
        low = mask & -mask
        rest = mask ^ low
        g = gens[low.bit_length() - 1]
        entries[mask] = g if rest == 0 else cm_matmul(g, entries[rest])
    table = BasisTable(base, mat_ambient_context(p, q), entries, (p, q))
    _TABLE_CACHE[key] = table
    return table


def to_table_basis(u, table):
    """Relabel a sorted-signature multivector into the table's order."""
    if table.perm is None:
        if u.ctx != table.ambient:
            raise ContextMismatch("multivector not in the table's ambient context")
        return u
    if u.ctx != table.standard:
        raise ContextMismatch("multivector not in the sorted ambient context")
    inv = [0] * len(table.perm)
    for pos, std_pos in enumerate(table.perm, start=1):
        inv[std_pos - 1] = pos
    return permute_generators(u, inv, table.ambient)


def from_table_basis(u, table):
    if table.perm is None:
        return u
    if u.ctx != table.ambient:
        raise ContextMismatch("multivector not in the table's ambient context")
    return permute_generators(u, table.perm, table.standard)


def evalm(u, table):
    """Linear extension of e_I -> E_I."""
    if u.ctx != table.ambient:
        raise ContextMismatch("multivector not in the table's ambient context")
    base = table.base
    acc = [[{}, {}], [{}, {}]]
    for mask, c in u.terms.items():
        m = table.entries[mask]
        for i in (0, 1):
            for j in (0, 1):
                cell = acc[i][j]
                for mb, cb in m.entries[i][j].terms.items():
                    s = cell.get(mb)
                    s = c * cb if s is None else s + c * cb
                    if s:
                        cell[mb] = s
                    elif mb in cell:
                        del cell[mb]
    return CliMatrix(
        base,
        [
            [Multivector(base, acc[0][0]), Multivector(base, acc[0][1])],
            [Multivector(base, acc[1][0]), Multivector(base, acc[1][1])],
        ],
    )


_HALF = Fraction(1, 2)


def phi(m, table):
    """Coefficients of a matrix in the blade basis {E_I}.

    Every E_I is diagonal (extra-generator part empty or full) or
    antidiagonal (exactly one extra generator), with both nonzero cells
    carrying the same base blade up to sign.  The four ambient blades
    over a given base blade therefore split into two independent 2x2
    scalar systems, one from the diagonal cells and one from the
    antidiagonal cells:

        E_(I)          = [[b, 0], [0, (-1)^d b]]
        E_(I,n+1,n+2)  = [[b, 0], [0, -(-1)^d b]]
        E_(I,n+1)      = [[0, b], [(-1)^d b, 0]]
        E_(I,n+2)      = [[0, -b], [(-1)^d b, 0]]

    with d = |I| and b the base blade e_I.  Solving per blade keeps the
    decomposition linear in the number of stored coefficients.
    """
    if m.ctx != table.base:
        raise ContextMismatch("matrix not over the table's base context")
    if m.size != 2:
        raise PreconditionError("basis-table decomposition needs a 2x2 matrix")
    n = table.base.n
    hi1 = 1 << n
    hi2 = 1 << (n + 1)
    (m11, m12), (m21, m22) = m.entries
    out = {}

    def put(mask, c):
        if c:
            out[mask] = c

    for mb in set(m11.terms) | set(m22.terms):
        neg = mb.bit_count() & 1
        x = m11.coeff(mb)
        y = m22.coeff(mb)
        y = -y if neg else y
        put(mb, (x + y) * _HALF)
        put(mb | hi1 | hi2, (x - y) * _HALF)
    for mb in set(m12.terms) | set(m21.terms):
        neg = mb.bit_count() & 1
        u = m12.coeff(mb)
        v = m21.coeff(mb)
        v = -v if neg else v
        put(mb | hi1, (u + v) * _HALF)
        put(mb | hi2, (v - u) * _HALF)
    return Multivector(table.ambient, out)


def CM(x, y, table):
    """Ambient product through the matrix representation."""
    mx = evalm(x, table) if isinstance(x, Multivector) else x
    my = evalm(y, table) if isinstance(y, Multivector) else y
    if not isinstance(mx, CliMatrix) or not isinstance(my, CliMatrix):
        raise PreconditionError("operands must be matrices or ambient multivectors")
    if mx.ctx != table.base or my.ctx != table.base:
        raise ContextMismatch("operands not over the table's base context")
    return phi(cm_matmul(mx, my), table)


def matrix_involutions(m, table, which):
    """Transport of the ambient involutions through phi."""
    from .algebra import grade_involution, reversion

    if which == "grade":
        out = grade_involution(phi(m, table))
    elif which == "reversion":
        out = reversion(phi(m, table))
    else:
        raise PreconditionError(f"unknown involution {which!r}")
    return evalm(out, table)


def iterate_rep(u, k):
    """k-fold matrix representation: Cl(p+k,q+k) as 2^k x 2^k matrices
    over Cl(p,q), outer blocks from the first application."""
    if k < 1:
        raise PreconditionError("iteration depth must be at least 1")
    sig = u.ctx.signature
    if sig is None:
        raise PreconditionError("iterated representation needs a sorted signature form")
    p2, q2 = sig
    if p2 < k or q2 < k:
        raise PreconditionError(
            f"signature ({p2},{q2}) does not admit {k} representation steps"
        )
    entries = _iterate_entries(u, k)
    base = _context_for_form(signature_form(p2 - k, q2 - k).form)
    return CliMatrix(base, entries)


def _iterate_entries(u, k):
    if k == 0:
        return [[u]]
    p2, q2 = u.ctx.signature
    table = build_basis_table(p2 - 1, q2 - 1)
    m = evalm(to_table_basis(u, table), table)
    blocks = [[_iterate_entries(e, k - 1) for e in row] for row in m.entries]
    half = len(blocks[0][0])
    size = 2 * half
    out = [[None] * size for _ in range(size)]
    for i in (0, 1):
        for j in (0, 1):
            block = blocks[i][j]
            for r in range(half):
                for c in range(half):
                    out[i * half + r][j * half + c] = block[r][c]
    return out


def spinor_basis_matrices():
    """The four scalar 2x2 matrices representing Cl(1,1) in the spinor
    basis {f, e_1 f}, keyed by blade mask."""
    table = build_basis_table(0, 0)
    return {mask: table.entries[mask] for mask in range(4)}


# -- persistence --------------------------------------------------------


def _table_lines(table):
    from .textio import blade_token, multivector_text

    p1, q1 = table.signature
    lines = [f"clifftable v1 p={p1} q={q1} rep=eq8"]
    for mask in table.ordered_masks():
        m = table.entries[mask]
        (a, b), (c, d) = m.entries
        lines.append(
            f"{blade_token(mask)} : "
            f"[{multivector_text(a)} | {multivector_text(b)} ; "
            f"{multivector_text(c)} | {multivector_text(d)}]"
        )
    return lines


def _checksum(lines):
    return hashlib.sha256(("\n".join(lines) + "\n").encode("utf-8")).hexdigest()


def table_text(table):
    lines = _table_lines(table)
    return "\n".join(lines + [f"checksum {_checksum(lines)}"]) + "\n"


def save_table(table, sink):
    text = table_text(table)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_header(line):
    parts = line.split()
    if (
        len(parts) != 5
        or parts[0] != "clifftable"
        or parts[1] != "v1"
        or not parts[2].startswith("p=")
        or not parts[3].startswith("q=")
        or not parts[4].startswith("rep=")
    ):
        raise TableError(f"malformed table header: {line!r}")
    try:
        p1 = int(parts[2][2:])
        q1 = int(parts[3][2:])
    except ValueError:
        raise TableError(f"malformed table header: {line!r}") from None
    rep = parts[4][4:]
    if rep != "eq8":
        raise TableError(f"unsupported representation tag {rep!r}")
    if p1 < 1 or q1 < 1:
        raise TableError(f"table signature ({p1},{q1}) is not a shifted signature")
    return p1, q1


def load_table(source):
    """Read a table file, verify the checksum, and revalidate the
    algebraic invariants (identity entry, generator matrices, squares,
    anticommutation)."""
    from .textio import parse_blade_token, parse_multivector

    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 2:
        raise TableError("table file too short")
    tail = lines[-1]
    body = lines[:-1]
    if not tail.startswith("checksum "):
        raise TableError("missing checksum line")
    if tail[len("checksum "):].strip() != _checksum(body):
        raise TableError("table checksum mismatch")
    p1, q1 = _parse_header(body[0])
    p, q = p1 - 1, q1 - 1
    n2 = p1 + q1
    expected = 1 << n2
    entry_lines = body[1:]
    if len(entry_lines) != expected:
        raise TableError(
            f"table has {len(entry_lines)} entries, expected {expected}"
        )
    base = _context_for_form(signature_form(p, q).form)
    entries = {}
    order = []
    for line in entry_lines:
        try:
            tok, rest = line.split(" : ", 1)
        except ValueError:
            raise TableError(f"malformed table entry: {line!r}") from None
        start = rest.find("[")
        end = rest.rfind("]")
        if start != 0 or end != len(rest) - 1:
            raise TableError(f"malformed table entry: {line!r}")
        rows = rest[1:end].split(" ; ")
        if len(rows) != 2:
            raise TableError(f"malformed table entry: {line!r}")
        cells = []
        for row in rows:
            parts = row.split(" | ")
            if len(parts) != 2:
                raise TableError(f"malformed table entry: {line!r}")
            cells.append(parts)
        try:
            mask = parse_blade_token(tok, n2)
            mat = CliMatrix(
                base,
                [[parse_multivector(t, base) for t in row] for row in cells],
            )
        except (ParseError, PreconditionError) as exc:
            raise TableError(f"bad table entry {tok!r}: {exc}") from None
        if mask in entries:
            raise TableError(f"duplicate table entry {tok!r}")
        entries[mask] = mat
        order.append(mask)
    if order != sorted(order, key=lambda m: (m.bit_count(), m)):
        raise TableError("table entries out of canonical order")
    table = BasisTable(base, mat_ambient_context(p, q), entries, (p, q))
    _revalidate(table)
    return table


def _revalidate(table):
    if table.entries[0] != CliMatrix.identity(table.base):
        raise TableError("identity entry is not the identity matrix")
    gens = generator_matrices(*table.base_signature)
    n2 = table.ambient.n
    loaded = []
    for i in range(n2):
        g = table.entries[1 << i]
        if g != gens[i]:
            raise TableError(f"generator entry {i + 1} does not match the representation")
        loaded.append(g)
    one = CliMatrix.identity(table.base)
    diag = table.ambient.diagonal()
    for i in range(n2):
        sq = cm_matmul(loaded[i], loaded[i])
        if sq != one.scale(diag[i]):
            raise TableError(f"generator {i + 1} square violates the signature")
        for j in range(i + 1, n2):
            anti = cm_matmul(loaded[i], loaded[j]) + cm_matmul(loaded[j], loaded[i])
            if anti != CliMatrix.zeros(table.base):
                raise TableError(
                    f"generators {i + 1} and {j + 1} do not anticommute"
                )
