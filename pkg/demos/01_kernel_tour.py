"""
Kernel tour: exact Clifford products over any bilinear form
===========================================================

Everything below is exact arithmetic: rational coefficients, or sparse
polynomials when the form itself is symbolic.
"""

from fractions import Fraction

from cliffalg import (
    cmul,
    grade_project,
    left_contract,
    parse_multivector,
    reversion,
    signature_form,
    symbolic_form,
    multivector_text,
    wedge,
)

# a context is an algebra: here Cl(3,1), generators e1..e4, e4^2 = -1
ctx = signature_form(3, 1)
e1, e2, e3, e4 = (ctx.generator(i) for i in range(1, 5))

u = e1 + e2.scale(2)
v = cmul(e1, e2) - e4.scale(Fraction(1, 2))
print("u      =", multivector_text(u))
print("v      =", multivector_text(v))
print("u v    =", multivector_text(cmul(u, v)))
print("u ^ v  =", multivector_text(wedge(u, v)))

# the product of a vector splits into contraction plus wedge
x = e1 + e3
w = wedge(e2, e3)
assert cmul(x, w) == left_contract(x, w) + wedge(x, w)
print("x w    =", multivector_text(cmul(x, w)), " (contraction + wedge)")

# grade projection picks out one degree
z = cmul(u, cmul(v, u))
for k in range(5):
    part = grade_project(z, k)
    if not part.is_zero():
        print(f"grade {k} of u v u =", multivector_text(part))

# involutions: reversion flips factor order, grade involution negates
# odd elements
print("rev(e1 e2 e3) =", multivector_text(reversion(cmul(cmul(e1, e2), e3))))

# a fully symbolic form: products stay polynomial in the entries B[i,j]
sym = symbolic_form(2, "B")
f1, f2 = sym.generator(1), sym.generator(2)
print("symbolic f1 f2 =", multivector_text(cmul(f1, f2)))
print("symbolic f2 f1 =", multivector_text(cmul(f2, f1)))

# the expression parser gives the same algebra as text
got = parse_multivector("cmul(e1 + 2*e2, cmul(e1,e2) - 1/2*e4)", ctx)
assert got == cmul(u, v)
print("parsed product matches:", multivector_text(got))
