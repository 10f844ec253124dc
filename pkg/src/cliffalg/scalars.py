"""Exact scalar coefficients: rationals and multivariate polynomials.

Every coefficient in the kernel is either a `fractions.Fraction` or a
`Poly` over Fraction in named indeterminates (form entries such as
"B[1,2]").  There is no floating point anywhere.  Polynomials are kept
in a canonical sparse shape (sorted monomials, no zero coefficients)
so equality is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction

RAT_ZERO = Fraction(0)
RAT_ONE = Fraction(1)


def _rat(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not a rational: {value!r}")


class Poly:
    """Sparse multivariate polynomial over Fraction.

    Monomials are tuples of (name, exponent) pairs, sorted by name.
    The empty tuple is the constant monomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def atom(cls, name):
        return cls({((name, 1),): RAT_ONE})

    @classmethod
    def const(cls, value):
        value = _rat(value)
        return cls({(): value} if value else {})

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError(f"not a constant polynomial: {self!r}")
        return self.terms.get((), RAT_ZERO)

    def variables(self):
        seen = set()
        for mono in self.terms:
            for name, _ in mono:
                seen.add(name)
        return seen

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_const():
            return hash(self.const_value())
        return hash(tuple(sorted(self.terms.items())))

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, RAT_ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, RAT_ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out)

    __rmul__ = __mul__

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for mono, coeff in sorted(self.terms.items()):
            atoms = [name for name, exp in mono for _ in range(exp)]
            bits.append("*".join([str(coeff)] + atoms))
        return "Poly(" + " + ".join(bits) + ")"


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = {}
    for name, e in m1:
        exps[name] = exps.get(name, 0) + e
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def normalize_scalar(value):
    """Canonical scalar: ints become Fraction, constant Polys collapse."""
    if isinstance(value, Poly):
        if value.is_const():
            return value.const_value()
        return value
    return _rat(value)


def scalar_is_zero(value):
    return not value


def scalar_inverse(value):
    """1/value for invertible scalars (nonzero rationals only)."""
    value = normalize_scalar(value)
    if isinstance(value, Poly):
        raise ValueError(f"cannot invert a non-constant polynomial: {value!r}")
    if not value:
        raise ZeroDivisionError("scalar has no inverse: 0")
    return 1 / value


def scalar_half(value):
    """value / 2, valid for both rationals and polynomials."""
    return normalize_scalar(value * Fraction(1, 2))
