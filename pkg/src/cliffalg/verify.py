"""Verification suites: the worksheet-style proofs, rerun on demand.

Each suite returns a list of Check records at desk scale (seconds, not
minutes); the heavyweight acceptance runs live in the test suite.  A
failed check carries the counterexample inputs in text form so a CI
record is actionable on its own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from fractions import Fraction

from .algebra import (
    cmul,
    grade_involution,
    reversion,
    signature_form,
    symbolic_form,
    wedge,
    zero_form,
)
from .classify import classify
from .climatrix import (
    CM,
    CliMatrix,
    build_basis_table,
    cm_matmul,
    spinor_basis_matrices,
    evalm,
    iterate_rep,
    matrix_involutions,
    phi,
)
from .errors import PreconditionError
from .scalars import Poly
from .tensor import (
    TensorElement,
    _context_for_form,
    bas2gtbas,
    bas2tbas,
    block_diag_context,
    cmul_gtensor,
    cmul_tensor,
    from_split_basis,
    gtbas2bas,
    gtensor_split,
    periodicity_split,
    t_grade_involution,
    t_reversion,
    tbas2bas,
    tensor,
    to_split_basis,
    volume_split,
)

__all__ = ["Check", "SUITES", "run_suite", "SUITE_NAMES"]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    counterexample: dict = field(default=None)


def _std(p, q):
    return _context_for_form(signature_form(p, q).form)


def _text(v):
    from .textio import multivector_text, tensor_text

    if isinstance(v, TensorElement):
        return tensor_text(v)
    return multivector_text(v)


def _pair_ce(x, y, lhs, rhs):
    return {"X": _text(x), "Y": _text(y), "lhs": _text(lhs), "rhs": _text(rhs)}


def _blades(ctx):
    return [ctx.basis_blade(m) for m in range(1 << ctx.n)]


def _random_mv(ctx, rng, terms=6):
    from .bench import random_multivector

    return random_multivector(ctx, rng, terms)


# -- graded-iso ---------------------------------------------------------


def _graded_hom_check(checks, name, ambient, dim1, pairs):
    spec = gtensor_split(ambient, dim1)
    for x, y in pairs:
        lhs = bas2gtbas(cmul(x, y), spec)
        rhs = cmul_gtensor(bas2gtbas(x, spec), bas2gtbas(y, spec))
        if lhs != rhs:
            checks.append(
                Check(name, False, "homomorphism violated", _pair_ce(x, y, lhs, rhs))
            )
            return
        back = gtbas2bas(bas2gtbas(x, spec), spec)
        if back != x:
            checks.append(
                Check(name, False, "round trip violated", {"X": _text(x), "lhs": _text(back)})
            )
            return
    checks.append(Check(name, True, f"{len(pairs)} pairs"))


def suite_graded_iso(seed=0):
    rng = random.Random(seed)
    checks = []
    for p, q in ((1, 1), (2, 0), (2, 1), (2, 2)):
        ctx = _std(p, q)
        blades = _blades(ctx)
        pairs = [(x, y) for x in blades for y in blades]
        _graded_hom_check(
            checks, f"graded hom exhaustive Cl({p},{q})", ctx, ctx.n - 2, pairs
        )
    sym = block_diag_context(
        _context_for_form(symbolic_form(2, "B").form),
        _context_for_form(symbolic_form(2, "C").form),
    )
    blades = _blades(sym)
    _graded_hom_check(
        checks,
        "graded hom symbolic B1,B2 (n=4)",
        sym,
        2,
        [(x, y) for x in blades for y in blades],
    )
    ctx = _std(3, 3)
    pairs = [(_random_mv(ctx, rng), _random_mv(ctx, rng)) for _ in range(60)]
    _graded_hom_check(checks, "graded hom random Cl(3,3)", ctx, 4, pairs)

    # generator images anticommute and square to B_ii per the ambient form
    ctx = _std(2, 2)
    spec = gtensor_split(ctx, 2)
    images = [bas2gtbas(ctx.generator(i), spec) for i in range(1, 5)]
    unit = tensor(spec.left_raw.one(), spec.right.one())
    ok = True
    for i in range(4):
        sq = cmul_gtensor(images[i], images[i])
        if sq != unit.scale(ctx.form[i][i]):
            ok = False
        for j in range(i + 1, 4):
            anti = cmul_gtensor(images[i], images[j]) + cmul_gtensor(
                images[j], images[i]
            )
            if not anti.is_zero():
                ok = False
    checks.append(Check("graded image generators anticommute/square", ok))
    return checks


# -- ungraded-iso -------------------------------------------------------


def _ungraded_hom_check(checks, name, spec, pairs):
    for x, y in pairs:
        lhs = bas2tbas(cmul(x, y), spec)
        rhs = cmul_tensor(bas2tbas(x, spec), bas2tbas(y, spec))
        if lhs != rhs:
            checks.append(
                Check(name, False, "homomorphism violated", _pair_ce(x, y, lhs, rhs))
            )
            return
        back = tbas2bas(bas2tbas(x, spec), spec)
        if back != x:
            checks.append(
                Check(name, False, "round trip violated", {"X": _text(x), "lhs": _text(back)})
            )
            return
    checks.append(Check(name, True, f"{len(pairs)} pairs"))


def suite_ungraded_iso(seed=0):
    rng = random.Random(seed)
    checks = []
    for p, q, kind in ((2, 2, "1+1"), (4, 0, "4+0"), (0, 4, "0+4")):
        spec = periodicity_split(p, q, kind)
        lam_ok = spec.lam == 1
        checks.append(
            Check(
                f"volume scaling lam Cl({p},{q}) {kind}",
                lam_ok,
                f"lam={spec.lam}",
            )
        )
        blades = _blades(spec.ambient)
        _ungraded_hom_check(
            checks,
            f"ungraded hom exhaustive Cl({p},{q}) {kind}",
            spec,
            [(x, y) for x in blades for y in blades],
        )
    # relabeled split (block order differs from the sorted signature)
    spec = periodicity_split(4, 1, "4+0")
    std = spec.standard
    ok = True
    ce = None
    for _ in range(40):
        u = _random_mv(std, rng)
        v = _random_mv(std, rng)
        z = cmul_tensor(
            bas2tbas(to_split_basis(u, spec), spec),
            bas2tbas(to_split_basis(v, spec), spec),
        )
        got = from_split_basis(tbas2bas(z, spec), spec)
        want = cmul(u, v)
        if got != want:
            ok = False
            ce = _pair_ce(u, v, got, want)
            break
    checks.append(Check("ungraded route with relabeling Cl(4,1) 4+0", ok, "", ce))

    # vector-square identity: image of any ambient vector squares to B(v,v)
    for p, q, kind in ((2, 2, "1+1"), (4, 0, "4+0")):
        from .bench import random_vector

        spec = periodicity_split(p, q, kind)
        ok = True
        ce = None
        for _ in range(50):
            v = random_vector(spec.ambient, rng)
            img = bas2tbas(v, spec)
            sq = cmul_tensor(img, img)
            want = bas2tbas(cmul(v, v), spec)
            scalar = cmul(v, v)
            if sq != want or set(scalar.terms) - {0}:
                ok = False
                ce = _pair_ce(v, v, sq, want)
                break
        checks.append(Check(f"vector squares Cl({p},{q}) {kind}", ok, "", ce))

    # wedge of two mixed vectors lands on the four-term tensor shape
    spec = periodicity_split(2, 2, "1+1")
    amb = spec.ambient
    x1 = amb.generator(1) + amb.generator(3)
    x2 = amb.generator(2) + amb.generator(4)
    left = spec.left
    right = spec.right
    omega = right.basis_blade(spec.omega_mask)
    expected = (
        tensor(wedge(left.generator(1), left.generator(2)), right.one().scale(spec.lam))
        + tensor(left.generator(1), cmul(omega, right.generator(2)))
        + tensor(left.generator(2), cmul(right.generator(1), omega))
        + tensor(left.one(), wedge(right.generator(1), right.generator(2)))
    )
    got = bas2tbas(wedge(x1, x2), spec)
    checks.append(
        Check(
            "degree-2 image fixture (1+1 split)",
            got == expected,
            "",
            None if got == expected else _pair_ce(x1, x2, got, expected),
        )
    )

    # degenerate right factor must be rejected
    degen = _context_for_form(
        ((Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
         (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
         (Fraction(0), Fraction(0), Fraction(0), Fraction(0)),
         (Fraction(0), Fraction(0), Fraction(0), Fraction(0))),
    )
    try:
        volume_split(degen, 2)
        checks.append(Check("degenerate B2 rejected", False, "split accepted"))
    except PreconditionError as exc:
        checks.append(Check("degenerate B2 rejected", True, str(exc)))
    return checks


# -- involutions --------------------------------------------------------


def _symmetric_symbolic(n, name="B"):
    # entry (i,j) and (j,i) share one indeterminate
    return _context_for_form(
        tuple(
            tuple(
                Poly.atom(f"{name}[{min(i, j)},{max(i, j)}]") for j in range(1, n + 1)
            )
            for i in range(1, n + 1)
        )
    )


def suite_involutions(seed=0):
    rng = random.Random(seed)
    checks = []
    contexts = [
        ("Cl(2,1)", _std(2, 1)),
        ("Cl(2,2)", _std(2, 2)),
        ("symmetric symbolic n=3", _symmetric_symbolic(3)),
    ]
    for label, ctx in contexts:
        blades = _blades(ctx)
        ok = True
        ce = None
        for x in blades:
            if grade_involution(grade_involution(x)) != x or reversion(reversion(x)) != x:
                ok, ce = False, {"X": _text(x)}
                break
            for y in blades:
                p = cmul(x, y)
                if grade_involution(p) != cmul(grade_involution(x), grade_involution(y)):
                    ok, ce = False, _pair_ce(x, y, grade_involution(p), p)
                    break
                if reversion(p) != cmul(reversion(y), reversion(x)):
                    ok, ce = False, _pair_ce(x, y, reversion(p), p)
                    break
            if not ok:
                break
        checks.append(Check(f"involution laws exhaustive {label}", ok, "", ce))

    # reversion is defined blade-level, so against a non-symmetric form it
    # reverses products into the transposed-form algebra: rev(uv) computed
    # with B equals rev(v)rev(u) computed with B transposed
    ctx = _context_for_form(symbolic_form(3, "B").form)
    ctx_t = _context_for_form(tuple(zip(*ctx.form)))
    ok = True
    ce = None
    for x in _blades(ctx):
        for y in _blades(ctx):
            p = cmul(x, y)
            if grade_involution(p) != cmul(grade_involution(x), grade_involution(y)):
                ok, ce = False, _pair_ce(x, y, grade_involution(p), p)
                break
            lhs = ctx_t.mv(reversion(p).terms)
            rhs = cmul(ctx_t.mv(reversion(y).terms), ctx_t.mv(reversion(x).terms))
            if lhs != rhs:
                ok, ce = False, _pair_ce(x, y, lhs, rhs)
                break
        if not ok:
            break
    checks.append(
        Check("reversion maps into the transposed-form algebra (non-symmetric B)", ok, "", ce)
    )
    ctx = _std(3, 3)
    ok = True
    ce = None
    for _ in range(60):
        u = _random_mv(ctx, rng)
        v = _random_mv(ctx, rng)
        p = cmul(u, v)
        if (
            grade_involution(p) != cmul(grade_involution(u), grade_involution(v))
            or reversion(p) != cmul(reversion(v), reversion(u))
            or reversion(reversion(u)) != u
            or grade_involution(grade_involution(u)) != u
        ):
            ok, ce = False, _pair_ce(u, v, p, p)
            break
    checks.append(Check("involution laws random Cl(3,3)", ok, "", ce))

    # transport through the isomorphisms; the trailing factor of sorted
    # Cl(2,2) has lam = -1, so the scaled left form is exercised too.
    # The pair-level reversion is the image of ambient reversion under the
    # graded map, whose blade pairs carry no volume factor.  The ungraded
    # map is still parity-preserving, so the grade involution transports
    # through it as well; reversion does not (checked separately below).
    ctx = _std(2, 2)
    gspec = gtensor_split(ctx, 2)
    uspec = volume_split(ctx, 2)
    ok = True
    ce = None
    for _ in range(40):
        u = _random_mv(ctx, rng)
        if t_grade_involution(bas2gtbas(u, gspec)) != bas2gtbas(grade_involution(u), gspec):
            ok, ce = False, {"X": _text(u), "detail": "graded gi transport"}
            break
        if t_reversion(bas2gtbas(u, gspec)) != bas2gtbas(reversion(u), gspec):
            ok, ce = False, {"X": _text(u), "detail": "graded rev transport"}
            break
        if t_grade_involution(bas2tbas(u, uspec)) != bas2tbas(grade_involution(u), uspec):
            ok, ce = False, {"X": _text(u), "detail": "ungraded gi transport"}
            break
        ti = bas2tbas(u, uspec)
        if t_reversion(t_reversion(ti)) != ti or t_grade_involution(t_grade_involution(ti)) != ti:
            ok, ce = False, {"X": _text(u), "detail": "tensor involutivity"}
            break
    checks.append(Check("involution transport through both isomorphisms", ok, "", ce))

    # reversion cannot transport through the ungraded map: the image of a
    # left-factor vector is x (x) w, and reversion flips the degree-2
    # volume blade w, while the ambient reversion fixes the vector.  Pin
    # the sign so the discrepancy stays deliberate rather than silent.
    ok = True
    for i in (1, 2):
        img = bas2tbas(ctx.generator(i), uspec)
        if t_reversion(img) != img.scale(Fraction(-1)):
            ok = False
    for i in (3, 4):
        img = bas2tbas(ctx.generator(i), uspec)
        if t_reversion(img) != img:
            ok = False
    checks.append(
        Check(
            "ungraded vector images: reversion flips the volume factor",
            ok,
            "rev(x (x) w) = -x (x) w for left-factor vectors",
        )
    )

    # matrix transport: automorphism/anti-automorphism laws under cm_matmul
    table = build_basis_table(1, 1)
    ok = True
    for _ in range(25):
        u = _random_mv(table.ambient, rng)
        v = _random_mv(table.ambient, rng)
        mu, mv = evalm(u, table), evalm(v, table)
        prod = cm_matmul(mu, mv)
        gi = lambda m: matrix_involutions(m, table, "grade")
        rev = lambda m: matrix_involutions(m, table, "reversion")
        if gi(prod) != cm_matmul(gi(mu), gi(mv)):
            ok = False
            break
        if rev(prod) != cm_matmul(rev(mv), rev(mu)):
            ok = False
            break
        if gi(gi(mu)) != mu or rev(rev(mu)) != mu:
            ok = False
            break
    checks.append(Check("matrix involution laws (table (1,1))", ok))
    return checks


# -- matrix-iso ---------------------------------------------------------


def suite_matrix_iso(seed=0):
    rng = random.Random(seed)
    checks = []

    # the four scalar matrices multiply exactly as Cl(1,1) does
    mats = spinor_basis_matrices()
    base = _std(1, 1)
    ok = True
    for a in range(4):
        for b in range(4):
            want_mv = base.blade_product(a, b)
            want = None
            for mask, c in want_mv.items():
                term = mats[mask].scale(c)
                want = term if want is None else want + term
            if want is None:
                want = mats[0].scale(Fraction(0))
            if cm_matmul(mats[a], mats[b]) != want:
                ok = False
    checks.append(Check("spinor matrices reproduce the Cl(1,1) table", ok))

    # generator squares and anticommutation at the high signature
    table = build_basis_table(7, 1)
    diag = table.ambient.diagonal()
    one = CliMatrix.identity(table.base)
    ok = True
    for i in range(10):
        gi_m = table.entries[1 << i]
        if cm_matmul(gi_m, gi_m) != one.scale(diag[i]):
            ok = False
        for j in range(i + 1, 10):
            gj = table.entries[1 << j]
            if cm_matmul(gi_m, gj) + cm_matmul(gj, gi_m) != CliMatrix.zeros(table.base):
                ok = False
    checks.append(
        Check(
            "high-signature generators anticommute and square to the footnote signs",
            ok,
            "squares +ID: 1..7 and 9; -ID: 8 and 10",
        )
    )

    two_extra = table.entries[(1 << 8) | (1 << 9)]
    want = CliMatrix(
        table.base,
        [
            [table.base.one(), table.base.zero()],
            [table.base.zero(), -table.base.one()],
        ],
    )
    checks.append(Check("product of the two extra generators is diag(Id,-Id)", two_extra == want))

    # phi/evalm round trip and homomorphism at desk scale
    small = build_basis_table(1, 1)
    ok = True
    for mask in range(1 << 4):
        u = small.ambient.basis_blade(mask)
        if phi(evalm(u, small), small) != u:
            ok = False
            break
    checks.append(Check("phi(evalm) identity on all 16 blades (2,2)", ok))
    ok = True
    ce = None
    blades = _blades(small.ambient)
    for x in blades:
        for y in blades:
            got = CM(x, y, small)
            want = cmul(x, y)
            if got != want:
                ok, ce = False, _pair_ce(x, y, got, want)
                break
        if not ok:
            break
    checks.append(Check("matrix product equals cmul exhaustively at (2,2)", ok, "", ce))

    mid = build_basis_table(2, 0)
    ok = True
    ce = None
    for _ in range(50):
        u = _random_mv(mid.ambient, rng)
        v = _random_mv(mid.ambient, rng)
        got = CM(u, v, mid)
        want = cmul(u, v)
        if got != want or phi(evalm(u, mid), mid) != u:
            ok, ce = False, _pair_ce(u, v, got, want)
            break
    checks.append(Check("matrix product equals cmul randomly at (3,1)", ok, "", ce))

    # golden worked product
    from .bench import golden_expected, golden_inputs

    x, y = golden_inputs(table)
    got = CM(x, y, table)
    want = golden_expected(table)
    checks.append(
        Check(
            "golden Cl(8,2) worked product",
            got == want,
            "12-term expansion, exact",
            None if got == want else _pair_ce(x, y, got, want),
        )
    )

    # iterated representation: Cl(2,2) -> Mat(4,R), matching the classification
    ctx = _std(2, 2)
    cls = classify(2, 2)
    ok = cls.matrix_size == 4 and cls.base_ring == "R"
    ce = None
    for _ in range(25):
        u = _random_mv(ctx, rng)
        v = _random_mv(ctx, rng)
        mu = iterate_rep(u, 2)
        mv = iterate_rep(v, 2)
        if mu.size != 4:
            ok = False
            break
        got = cm_matmul(mu, mv)
        want = iterate_rep(cmul(u, v), 2)
        if got != want:
            ok, ce = False, _pair_ce(u, v, cmul(u, v), cmul(u, v))
            break
    checks.append(Check("iterated representation Cl(2,2) as 4x4 over Cl(0,0)", ok, "", ce))
    return checks


# -- wedge-limit --------------------------------------------------------


def suite_wedge_limit(seed=0):
    rng = random.Random(seed)
    checks = []
    for n in (2, 3, 4):
        ctx = _context_for_form(zero_form(n).form)
        blades = _blades(ctx)
        ok = True
        ce = None
        for x in blades:
            for y in blades:
                if cmul(x, y) != wedge(x, y):
                    ok, ce = False, _pair_ce(x, y, cmul(x, y), wedge(x, y))
                    break
            if not ok:
                break
        checks.append(Check(f"B=0 product equals wedge exhaustively (n={n})", ok, "", ce))
    ctx = _context_for_form(zero_form(5).form)
    ok = True
    ce = None
    for _ in range(100):
        u = _random_mv(ctx, rng)
        v = _random_mv(ctx, rng)
        if cmul(u, v) != wedge(u, v):
            ok, ce = False, _pair_ce(u, v, cmul(u, v), wedge(u, v))
            break
    checks.append(Check("B=0 product equals wedge randomly (n=5)", ok, "", ce))

    # graded route tolerates the degenerate form
    ctx = _context_for_form(zero_form(4).form)
    spec = gtensor_split(ctx, 2)
    ok = True
    ce = None
    blades = _blades(ctx)
    for x in blades:
        for y in blades:
            lhs = bas2gtbas(cmul(x, y), spec)
            rhs = cmul_gtensor(bas2gtbas(x, spec), bas2gtbas(y, spec))
            if lhs != rhs:
                ok, ce = False, _pair_ce(x, y, lhs, rhs)
                break
        if not ok:
            break
    checks.append(Check("graded route valid at B=0 (n=4)", ok, "", ce))

    # ungraded route must refuse the degenerate right factor
    try:
        volume_split(ctx, 2)
        checks.append(Check("ungraded route rejects B=0", False, "split accepted"))
    except PreconditionError as exc:
        checks.append(Check("ungraded route rejects B=0", True, str(exc)))

    # partially degenerate diagonal: still pure Chevalley, no special cases
    part = _context_for_form(
        ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
    )
    e1 = part.generator(1)
    e2 = part.generator(2)
    ok = (
        cmul(e1, e2) == wedge(e1, e2)
        and cmul(e2, e2).is_zero()
        and cmul(e1, e1) == part.one()
    )
    checks.append(Check("partially degenerate diagonal form", ok))
    return checks


SUITES = {
    "graded-iso": suite_graded_iso,
    "ungraded-iso": suite_ungraded_iso,
    "involutions": suite_involutions,
    "matrix-iso": suite_matrix_iso,
    "wedge-limit": suite_wedge_limit,
}

SUITE_NAMES = tuple(SUITES)


def run_suite(name, seed=0):
    try:
        fn = SUITES[name]
    except KeyError:
        raise PreconditionError(
            f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}"
        ) from None
    return fn(seed)
