"""Expression grammar and canonical text forms.

Grammar (all whitespace-insensitive, offsets reported 1-based):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := ['+' | '-'] primary
    primary := RATIONAL | 'Id' | BLADE | NAME '[' INT ',' INT ']'
             | FUNC '(' args ')' | '(' expr ')'

Blade tokens are ascending generator lists like e1we2we3; Id is the
scalar unit.  Functions: cmul(,), wedge(,), lc(,), rev(), gi(),
gp(,k) with a literal integer grade, t(,) building a graded tensor
pair.  Infix '*' is scalar scaling only; a product of two multivectors
must be written through cmul or wedge.

Canonical text sorts blades by ascending mask (degree-compatible
inverse lexicographic order), prints the coefficient magnitude before
the blade with '*', expands polynomial coefficients one monomial per
term, and joins terms with ' + ' / ' - '.  The zero element prints as
'0'.  Parsing canonical text reproduces the element exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import (
    Multivector,
    cmul,
    grade_involution,
    grade_project,
    left_contract,
    reversion,
    wedge,
)
from .errors import ParseError, PreconditionError
from .scalars import Poly

__all__ = [
    "parse_expr",
    "evaluate",
    "parse_multivector",
    "multivector_text",
    "tensor_text",
    "scalar_text",
    "blade_token",
    "parse_blade_token",
    "parse_form_text",
    "read_form_file",
]


_BLADE_RE = re.compile(r"e(\d+)(?:we(\d+))*\Z")
_FUNCS = {"cmul": 2, "wedge": 2, "lc": 2, "rev": 1, "gi": 1, "gp": 2, "t": 2}


def _tokens(text):
    toks = []
    i = 0
    size = len(text)
    while i < size:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        start = i + 1
        if c.isdigit():
            j = i
            while j < size and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], start))
            i = j
        elif c.isalpha():
            j = i
            while j < size and text[j].isalnum():
                j += 1
            toks.append(("name", text[i:j], start))
            i = j
        elif c in "()[],+-*/":
            toks.append((c, c, start))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", start)
    toks.append(("eof", "", size + 1))
    return toks


class _Parser:
    def __init__(self, text, ctx):
        self.toks = _tokens(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}", tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-":
            op = self.next()[0]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.next()
            rhs = self.factor()
            node = ("mul", node, rhs)
        return node

    def factor(self):
        tok = self.peek()
        if tok[0] in "+-":
            self.next()
            node = self.factor()
            return node if tok[0] == "+" else ("neg", node)
        return self.primary()

    def int_literal(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "-":
            self.next()
            sign = -1
        tok = self.expect("int", "an integer")
        return sign * int(tok[1])

    def primary(self):
        tok = self.next()
        kind, text, pos = tok
        if kind == "int":
            value = Fraction(int(text))
            if self.peek()[0] == "/":
                self.next()
                den = self.expect("int", "a denominator")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                value = value / int(den[1])
            return ("rat", value)
        if kind == "(":
            node = self.expr()
            self.expect(")", "')'")
            return node
        if kind == "name":
            if text == "Id":
                return ("blade", 0)
            if text in _FUNCS and self.peek()[0] == "(":
                return self.call(text, pos)
            if self.peek()[0] == "[":
                self.next()
                row = self.int_literal()
                self.expect(",", "','")
                col = self.int_literal()
                self.expect("]", "']'")
                return ("sym", f"{text}[{row},{col}]")
            if _BLADE_RE.match(text):
                return ("blade", self.blade_mask(text, pos))
            if text in _FUNCS:
                raise ParseError(f"expected '(' after {text}", self.peek()[2])
            raise ParseError(f"unknown name {text!r}", pos)
        raise ParseError(f"expected an expression, got {text!r}" if text else "unexpected end of input", pos)

    def call(self, name, pos):
        self.expect("(", "'('")
        args = []
        if name == "gp":
            args.append(self.expr())
            self.expect(",", "','")
            args.append(self.int_literal())
        else:
            args.append(self.expr())
            for _ in range(_FUNCS[name] - 1):
                self.expect(",", "','")
                args.append(self.expr())
        self.expect(")", "')'")
        return (name, *args)

    def blade_mask(self, text, pos):
        indices = [int(s) for s in text.replace("we", " ")[1:].split()]
        mask = 0
        prev = 0
        for idx in indices:
            if idx <= prev:
                raise ParseError(
                    f"blade indices must be strictly ascending in {text!r}", pos
                )
            if self.ctx is not None and idx > self.ctx.n:
                raise ParseError(
                    f"generator e{idx} outside a {self.ctx.n}-dimensional context", pos
                )
            mask |= 1 << (idx - 1)
            prev = idx
        return mask


def parse_expr(text, ctx=None):
    """Parse to a tree; blade indices are validated against ctx if given."""
    return _Parser(text, ctx).parse()


def _is_scalar(v):
    return isinstance(v, (Fraction, Poly))


def evaluate(tree, ctx, product=None):
    """Evaluate a tree in ctx.  cmul nodes go through `product`, which
    defaults to the direct Clifford product; everything else is fixed."""
    from .tensor import TensorElement, t_grade_involution, t_reversion, tensor

    if product is None:
        product = cmul

    def promote(v):
        return ctx.scalar(v) if _is_scalar(v) else v

    def need_mv(v, what):
        v = promote(v)
        if not isinstance(v, Multivector):
            raise PreconditionError(f"{what} needs multivector arguments")
        return v

    def walk(node):
        op = node[0]
        if op == "rat":
            return node[1]
        if op == "sym":
            return Poly.atom(node[1])
        if op == "blade":
            return ctx.basis_blade(node[1])
        if op == "neg":
            return -walk(node[1])
        if op in ("add", "sub"):
            a, b = walk(node[1]), walk(node[2])
            if _is_scalar(a) and _is_scalar(b):
                return a + b if op == "add" else a - b
            if isinstance(a, TensorElement) or isinstance(b, TensorElement):
                if not (isinstance(a, TensorElement) and isinstance(b, TensorElement)):
                    raise PreconditionError("cannot add a tensor and a non-tensor")
                return a + b if op == "add" else a - b
            a, b = promote(a), promote(b)
            return a + b if op == "add" else a - b
        if op == "mul":
            a, b = walk(node[1]), walk(node[2])
            if _is_scalar(a) and _is_scalar(b):
                return a * b
            if _is_scalar(a):
                return b.scale(a)
            if _is_scalar(b):
                return a.scale(b)
            raise PreconditionError(
                "'*' only scales by scalars; use cmul or wedge for multivector products"
            )
        if op == "cmul":
            return product(need_mv(walk(node[1]), "cmul"), need_mv(walk(node[2]), "cmul"))
        if op == "wedge":
            return wedge(need_mv(walk(node[1]), "wedge"), need_mv(walk(node[2]), "wedge"))
        if op == "lc":
            return left_contract(need_mv(walk(node[1]), "lc"), need_mv(walk(node[2]), "lc"))
        if op == "rev":
            v = walk(node[1])
            if isinstance(v, TensorElement):
                return t_reversion(v)
            return reversion(need_mv(v, "rev"))
        if op == "gi":
            v = walk(node[1])
            if isinstance(v, TensorElement):
                return t_grade_involution(v)
            return grade_involution(need_mv(v, "gi"))
        if op == "gp":
            return grade_project(need_mv(walk(node[1]), "gp"), node[2])
        if op == "t":
            return tensor(need_mv(walk(node[1]), "t"), need_mv(walk(node[2]), "t"))
        raise PreconditionError(f"cannot evaluate node {op!r}")

    return walk(tree)


def parse_multivector(text, ctx):
    """Parse and evaluate with the direct product; result must be a
    multivector (scalars are promoted)."""
    value = evaluate(parse_expr(text, ctx), ctx)
    if _is_scalar(value):
        return ctx.scalar(value)
    if not isinstance(value, Multivector):
        raise ParseError("expression is not a multivector")
    return value


# -- canonical printing -------------------------------------------------


def blade_token(mask):
    if mask == 0:
        return "Id"
    return "w".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


def parse_blade_token(token, n):
    if token == "Id":
        return 0
    if not _BLADE_RE.match(token):
        raise ParseError(f"not a blade token: {token!r}")
    mask = 0
    prev = 0
    for s in token.replace("we", " ")[1:].split():
        idx = int(s)
        if idx <= prev or idx > n:
            raise ParseError(f"bad blade token for dimension {n}: {token!r}")
        mask |= 1 << (idx - 1)
        prev = idx
    return mask


def _monomial_parts(mono):
    parts = []
    for name, exp in mono:
        parts.extend([name] * exp)
    return parts


def _coeff_monomials(c):
    """Split a coefficient into (Fraction, symbolic-factor-list) pieces,
    constants first, then atoms in sorted order."""
    if isinstance(c, Poly):
        return [(f, _monomial_parts(m)) for m, f in sorted(c.terms.items())]
    return [(c, [])]


def _term_text(f, parts, token):
    mag = abs(f)
    factors = []
    if mag != 1:
        factors.append(str(mag))
    factors.extend(parts)
    factors.append(token)
    return "*".join(factors)


def _join_terms(pieces):
    if not pieces:
        return "0"
    out = []
    for i, (f, text) in enumerate(pieces):
        if i == 0:
            out.append(("-" if f < 0 else "") + text)
        else:
            out.append((" - " if f < 0 else " + ") + text)
    return "".join(out)


def multivector_text(mv):
    pieces = []
    for mask in sorted(mv.terms):
        token = blade_token(mask)
        for f, parts in _coeff_monomials(mv.terms[mask]):
            pieces.append((f, _term_text(f, parts, token)))
    return _join_terms(pieces)


def tensor_text(t):
    pieces = []
    for a, b in sorted(t.terms):
        token = f"t({blade_token(a)},{blade_token(b)})"
        for f, parts in _coeff_monomials(t.terms[(a, b)]):
            pieces.append((f, _term_text(f, parts, token)))
    return _join_terms(pieces)


def scalar_text(c):
    pieces = []
    for f, parts in _coeff_monomials(c):
        if parts:
            mag = abs(f)
            factors = ([str(mag)] if mag != 1 else []) + parts
            pieces.append((f, "*".join(factors)))
        else:
            pieces.append((f, str(abs(f))))
    return _join_terms(pieces)


# -- bilinear form files ------------------------------------------------

_ENTRY_RE = re.compile(r"(-?\d+(?:/\d+)?)|(-?[A-Za-z][A-Za-z0-9]*\[\d+,\d+\])")


def parse_form_text(text):
    """n x n scalar grid, one row per line; entries are rationals or
    symbolic NAME[i,j] atoms."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for cell in line.split():
            m = _ENTRY_RE.fullmatch(cell)
            if m is None:
                raise ParseError(f"bad form entry {cell!r} on line {lineno}")
            if m.group(1) is not None:
                row.append(Fraction(cell))
            elif cell.startswith("-"):
                row.append(-Poly.atom(cell[1:]))
            else:
                row.append(Poly.atom(cell))
        rows.append(tuple(row))
    n = len(rows)
    if n == 0:
        raise ParseError("empty form file")
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise ParseError(f"form row {i} has {len(row)} entries, expected {n}")
    return tuple(rows)


def read_form_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_form_text(fh.read())
