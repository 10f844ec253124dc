import random
from fractions import Fraction

import pytest

from cliffalg.algebra import (
    cmul,
    grade_involution,
    reversion,
    signature_form,
    symbolic_form,
    zero_form,
)
from cliffalg.bench import random_multivector
from cliffalg.errors import PreconditionError
from cliffalg.scalars import Poly
from cliffalg.tensor import (
    _context_for_form,
    bas2gtbas,
    bas2tbas,
    block_diag_context,
    cmul_gtensor,
    cmul_tensor,
    form_determinant,
    from_split_basis,
    gswitch,
    gtbas2bas,
    gtensor_split,
    periodicity_split,
    switch,
    t_grade_involution,
    t_reversion,
    tbas2bas,
    tensor,
    to_split_basis,
    volume_split,
)


def _ctx(p, q):
    return _context_for_form(signature_form(p, q).form)


def _diag_ctx(*entries):
    n = len(entries)
    return _context_for_form(
        tuple(
            tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
    )


# -- elements and switches -----------------------------------------------


def test_tensor_bilinear_and_scalar_absorption():
    left, right = _ctx(1, 0), _ctx(1, 1)
    u = left.generator(1)
    v = right.generator(2)
    assert tensor(u.scale(3), v) == tensor(u, v.scale(3))
    assert tensor(u + u, v) == tensor(u, v).scale(2)
    assert tensor(left.zero(), v).is_zero()


def test_switch_and_gswitch():
    left, right = _ctx(2, 0), _ctx(1, 1)
    e12 = left.blade(1, 2)
    f1 = right.generator(1)
    t = tensor(left.generator(1), f1) + tensor(e12, f1)
    plain = switch(t)
    assert plain.coeff(1, 1) == 1  # odd(x)odd, no sign
    assert plain.coeff(1, 0b11) == 1
    signed = gswitch(t)
    assert signed.coeff(1, 1) == -1  # Koszul sign on odd-odd
    assert signed.coeff(1, 0b11) == 1  # even left factor passes through
    # both are involutions back to the original factor order
    assert switch(switch(t)) == t
    assert gswitch(gswitch(t)) == t
    with pytest.raises(PreconditionError):
        switch(t, 2)
    with pytest.raises(PreconditionError):
        gswitch(t, 0)


def test_graded_vs_ungraded_sign_fixture():
    left, right = _ctx(1, 0), _ctx(1, 0)
    x = tensor(left.one(), right.generator(1))
    y = tensor(left.generator(1), right.one())
    cross = tensor(left.generator(1), right.generator(1))
    assert cmul_gtensor(x, y) == -cross
    assert cmul_tensor(x, y) == cross
    assert cmul_gtensor(y, x) == cross


def test_gtensor_associativity_random():
    left, right = _ctx(2, 0), _ctx(1, 1)
    rng = random.Random(9)
    for _ in range(20):
        xs = [
            tensor(random_multivector(left, rng, 3), random_multivector(right, rng, 3))
            for _ in range(3)
        ]
        a, b, c = xs
        assert cmul_gtensor(cmul_gtensor(a, b), c) == cmul_gtensor(a, cmul_gtensor(b, c))
        assert cmul_tensor(cmul_tensor(a, b), c) == cmul_tensor(a, cmul_tensor(b, c))


def test_form_override_arguments():
    left, right = _ctx(1, 0), _ctx(1, 0)
    x = tensor(left.generator(1), right.one())
    # the product is taken, and returned, over the override context
    sq = cmul_gtensor(x, x, form1=signature_form(0, 1).form)
    assert sq.terms == {(0, 0): Fraction(-1)}
    assert sq.left_ctx.form == signature_form(0, 1).form
    with pytest.raises(PreconditionError):
        cmul_gtensor(x, x, form1=signature_form(2, 0).form)


def test_ungraded_requires_nondegenerate_right():
    left = _ctx(1, 0)
    right = _context_for_form(zero_form(2).form)
    x = tensor(left.one(), right.generator(1))
    with pytest.raises(PreconditionError):
        cmul_tensor(x, x)
    # graded route has no such requirement
    assert cmul_gtensor(x, x).is_zero()


# -- determinants ---------------------------------------------------------


def test_form_determinant():
    assert form_determinant(_diag_ctx(2, -3)) == -6
    assert form_determinant(_ctx(0, 0)) == 1
    skew = _context_for_form(
        ((Fraction(1), Fraction(2)), (Fraction(3), Fraction(4)))
    )
    assert form_determinant(skew) == -2
    sym = _context_for_form(symbolic_form(2, "B").form)
    det = form_determinant(sym)
    want = Poly.atom("B[1,1]") * Poly.atom("B[2,2]") - Poly.atom("B[1,2]") * Poly.atom(
        "B[2,1]"
    )
    assert det == want


# -- splits ----------------------------------------------------------------


def test_volume_split_lambda_values():
    assert volume_split(_diag_ctx(1, 1, 1, -1), 2).lam == 1
    assert volume_split(_diag_ctx(1, 1, 1, 1), 2).lam == -1
    assert volume_split(_diag_ctx(1, 1, -1, -1), 2).lam == -1
    assert volume_split(_ctx(4, 0), 0).lam == 1
    assert volume_split(_ctx(0, 4), 0).lam == 1


def test_volume_split_rejections():
    ctx = _ctx(2, 2)
    with pytest.raises(PreconditionError):
        volume_split(ctx, 1)  # odd right factor
    with pytest.raises(PreconditionError):
        volume_split(ctx, 4)  # empty right factor
    with pytest.raises(PreconditionError):
        volume_split(_context_for_form(zero_form(4).form), 2)
    with pytest.raises(PreconditionError):
        volume_split(_context_for_form(symbolic_form(4, "B").form), 2)
    # off-block entries break the split
    form = [[Fraction(0)] * 4 for _ in range(4)]
    for i in range(4):
        form[i][i] = Fraction(1)
    form[0][3] = Fraction(1)
    with pytest.raises(PreconditionError):
        gtensor_split(_context_for_form(tuple(map(tuple, form))), 2)


def test_periodicity_kinds():
    for p, q, kind in (
        (2, 2, "1+1"),
        (4, 0, "4+0"),
        (0, 4, "0+4"),
        (8, 0, "8+0"),
        (0, 8, "0+8"),
        (5, 1, "4+0"),
        (3, 3, "1+1"),
    ):
        spec = periodicity_split(p, q, kind)
        assert spec.lam == 1
        assert spec.supports_ungraded()
    with pytest.raises(PreconditionError):
        periodicity_split(2, 2, "2+2")
    with pytest.raises(PreconditionError):
        periodicity_split(3, 0, "1+1")


def test_periodicity_relabeling():
    spec = periodicity_split(2, 2, "1+1")
    # block order + - + - vs sorted + + - -: positions map 1,3,2,4
    assert spec.perm == (1, 3, 2, 4)
    assert spec.standard is not None
    rng = random.Random(4)
    std = _ctx(2, 2)
    for _ in range(20):
        u = random_multivector(std, rng, 6)
        assert from_split_basis(to_split_basis(u, spec), spec) == u
    # an aligned split needs no relabeling
    assert periodicity_split(4, 0, "4+0").perm is None


# -- graded isomorphism ----------------------------------------------------


def test_bas2gtbas_blade_pair_fixture():
    ctx = _ctx(2, 2)
    spec = gtensor_split(ctx, 2)
    img = bas2gtbas(ctx.blade(1, 3), spec)
    assert img.terms == {(0b1, 0b1): Fraction(1)}
    img = bas2gtbas(ctx.blade(2, 3, 4), spec)
    assert img.terms == {(0b10, 0b11): Fraction(1)}
    assert gtbas2bas(img, spec) == ctx.blade(2, 3, 4)


def test_bas2gtbas_is_homomorphism_random():
    ctx = _ctx(3, 2)
    spec = gtensor_split(ctx, 3)
    rng = random.Random(8)
    for _ in range(25):
        u = random_multivector(ctx, rng, 5)
        v = random_multivector(ctx, rng, 5)
        assert bas2gtbas(cmul(u, v), spec) == cmul_gtensor(
            bas2gtbas(u, spec), bas2gtbas(v, spec)
        )
        assert gtbas2bas(bas2gtbas(u, spec), spec) == u


# -- ungraded isomorphism ---------------------------------------------------


def test_bas2tbas_generator_images():
    spec = periodicity_split(2, 2, "1+1")
    amb = spec.ambient
    omega = spec.right.basis_blade(spec.omega_mask)
    for i in (1, 2):
        assert bas2tbas(amb.generator(i), spec) == tensor(spec.left.generator(i), omega)
    for i in (3, 4):
        assert bas2tbas(amb.generator(i), spec) == tensor(
            spec.left.one(), spec.right.generator(i - 2)
        )


def test_bas2tbas_round_trip_exhaustive():
    spec = periodicity_split(2, 2, "1+1")
    for mask in range(16):
        u = spec.ambient.basis_blade(mask)
        assert tbas2bas(bas2tbas(u, spec), spec) == u


def test_bas2tbas_scaled_left_form():
    # trailing factor (2,0) gives lam = -1, so the left form flips sign
    ctx = _diag_ctx(1, -1, 1, 1)
    spec = volume_split(ctx, 2)
    assert spec.lam == -1
    assert spec.left.form[0][0] == -1
    assert spec.left_raw.form[0][0] == 1
    blades = [ctx.basis_blade(m) for m in range(16)]
    for x in blades:
        for y in blades:
            assert bas2tbas(cmul(x, y), spec) == cmul_tensor(
                bas2tbas(x, spec), bas2tbas(y, spec)
            )


def test_bas2tbas_dense_inverse_path():
    # non-diagonal left block forces the dense linear solve on the way back
    form = (
        (Fraction(1), Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(0), Fraction(-1)),
    )
    ctx = _context_for_form(form)
    spec = volume_split(ctx, 2)
    assert spec.lam == 1
    blades = [ctx.basis_blade(m) for m in range(16)]
    for x in blades:
        assert tbas2bas(bas2tbas(x, spec), spec) == x
    for x in blades:
        for y in blades:
            assert bas2tbas(cmul(x, y), spec) == cmul_tensor(
                bas2tbas(x, spec), bas2tbas(y, spec)
            )


def test_empty_left_factor():
    spec = periodicity_split(1, 1, "1+1")
    assert spec.dim1 == 0
    amb = spec.ambient
    for mask in range(4):
        u = amb.basis_blade(mask)
        assert tbas2bas(bas2tbas(u, spec), spec) == u


# -- tensor involutions ------------------------------------------------------


def test_tensor_involution_fixtures():
    left, right = _ctx(2, 0), _ctx(1, 1)
    e12 = left.blade(1, 2)
    e1 = left.generator(1)
    f1 = right.generator(1)
    # even left factor: plain factorwise reversion
    assert t_reversion(tensor(e12, f1)) == tensor(e12, f1).scale(-1)
    # odd left factor: reversion of the hatted right factor
    assert t_reversion(tensor(e1, f1)) == tensor(e1, f1).scale(-1)
    assert t_grade_involution(tensor(e1, f1)) == tensor(e1, f1)
    assert t_grade_involution(tensor(e12, f1)) == tensor(e12, f1).scale(-1)


def test_tensor_involutions_involutive_and_graded_laws():
    left, right = _ctx(2, 0), _ctx(1, 1)
    rng = random.Random(12)
    for _ in range(20):
        a = tensor(random_multivector(left, rng, 3), random_multivector(right, rng, 3))
        b = tensor(random_multivector(left, rng, 3), random_multivector(right, rng, 3))
        assert t_reversion(t_reversion(a)) == a
        assert t_grade_involution(t_grade_involution(a)) == a
        p = cmul_gtensor(a, b)
        assert t_grade_involution(p) == cmul_gtensor(
            t_grade_involution(a), t_grade_involution(b)
        )
        # pair reversion anti-commutes over the graded product
        assert t_reversion(p) == cmul_gtensor(t_reversion(b), t_reversion(a))


def test_involution_transport():
    ctx = _ctx(2, 2)
    gspec = gtensor_split(ctx, 2)
    uspec = volume_split(ctx, 2)
    rng = random.Random(13)
    for _ in range(20):
        u = random_multivector(ctx, rng, 6)
        assert t_reversion(bas2gtbas(u, gspec)) == bas2gtbas(reversion(u), gspec)
        assert t_grade_involution(bas2gtbas(u, gspec)) == bas2gtbas(
            grade_involution(u), gspec
        )
        assert t_grade_involution(bas2tbas(u, uspec)) == bas2tbas(
            grade_involution(u), uspec
        )


def test_reversion_does_not_transport_ungraded():
    # the image of a left vector is x (x) w and reversion flips the
    # even volume blade, so the naive identity must fail; pin the sign
    ctx = _ctx(2, 2)
    spec = volume_split(ctx, 2)
    v = ctx.generator(1)
    img = bas2tbas(v, spec)
    assert bas2tbas(reversion(v), spec) == img
    assert t_reversion(img) == img.scale(-1)


# -- block-diagonal assembly -------------------------------------------------


def test_block_diag_context():
    c = block_diag_context(_ctx(1, 0), _ctx(0, 1))
    assert c.form == signature_form(1, 1).form
    sym = block_diag_context(
        _context_for_form(symbolic_form(1, "B").form),
        _context_for_form(symbolic_form(1, "C").form),
    )
    assert sym.form[0][0] == Poly.atom("B[1,1]")
    assert sym.form[1][1] == Poly.atom("C[1,1]")
    assert sym.form[0][1] == 0
