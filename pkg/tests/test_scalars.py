import random
from fractions import Fraction

import pytest

from cliffalg.scalars import (
    Poly,
    normalize_scalar,
    scalar_half,
    scalar_inverse,
    scalar_is_zero,
)


def test_atom_and_const_shapes():
    b = Poly.atom("B[1,2]")
    assert b.terms == {(("B[1,2]", 1),): Fraction(1)}
    assert Poly.const(0).terms == {}
    assert Poly.const(Fraction(3, 4)).terms == {(): Fraction(3, 4)}
    with pytest.raises(TypeError):
        Poly.const(0.5)


def test_constant_collapse_and_equality():
    assert Poly.const(7) == 7
    assert Poly.const(7) == Fraction(7)
    assert Poly.atom("x") != 7
    assert normalize_scalar(Poly.const(Fraction(2, 3))) == Fraction(2, 3)
    assert isinstance(normalize_scalar(Poly.const(5)), Fraction)
    x = Poly.atom("x")
    assert normalize_scalar(x) is x
    assert normalize_scalar(3) == Fraction(3)


def test_zero_detection():
    assert scalar_is_zero(Fraction(0))
    assert scalar_is_zero(Poly())
    assert not scalar_is_zero(Poly.atom("x"))
    assert not scalar_is_zero(Fraction(1, 9))
    assert not Poly()
    assert bool(Poly.atom("x"))


def _random_poly(rng, names=("x", "y", "z"), terms=4):
    out = Poly()
    for _ in range(terms):
        mono = Poly.const(Fraction(rng.randint(-5, 5)))
        for name in names:
            for _ in range(rng.randint(0, 2)):
                mono = mono * Poly.atom(name)
        out = out + mono
    return out


def test_ring_laws_random():
    rng = random.Random(3)
    for _ in range(40):
        a = _random_poly(rng)
        b = _random_poly(rng)
        c = _random_poly(rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == Poly()
        assert a * Poly.const(1) == a


def test_mixed_fraction_poly_arithmetic():
    x = Poly.atom("x")
    assert (x + 1) - 1 == x
    assert 2 * x == x + x
    assert Fraction(1, 2) * (x + x) == x
    assert (1 - x) + (x - 1) == Poly()
    # exponents accumulate into one monomial
    assert (x * x).terms == {(("x", 2),): Fraction(1)}


def test_monomials_sorted_by_name():
    x, y = Poly.atom("x"), Poly.atom("y")
    p = y * x
    (mono,) = p.terms
    assert mono == (("x", 1), ("y", 1))


def test_scalar_inverse():
    assert scalar_inverse(Fraction(-2, 3)) == Fraction(-3, 2)
    assert scalar_inverse(Poly.const(4)) == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        scalar_inverse(Fraction(0))
    with pytest.raises(ValueError):
        scalar_inverse(Poly.atom("x"))


def test_scalar_half():
    assert scalar_half(Fraction(5)) == Fraction(5, 2)
    assert scalar_half(Poly.atom("x") * 2) == Poly.atom("x")


def test_variables():
    p = Poly.atom("B[1,1]") * Poly.atom("C[2,2]") + Poly.const(1)
    assert p.variables() == {"B[1,1]", "C[2,2]"}
