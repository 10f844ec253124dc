"""
Matrix route: Cl(p+1,q+1) as 2x2 matrices over Cl(p,q)
======================================================

Every blade of the big algebra gets a matrix with entries in the small
one.  The basis table holds all of them; CM multiplies through the
matrices, phi folds a matrix back into a multivector.  Tables persist
to a checksummed text file.
"""

import tempfile
from pathlib import Path

from cliffalg import (
    CM,
    build_basis_table,
    cmul,
    evalm,
    load_table,
    multivector_text,
    phi,
    save_table,
    spinor_basis_matrices,
)

# the smallest instance: Cl(1,1) as scalar 2x2 matrices
mats = spinor_basis_matrices()
for mask, label in ((0b00, "Id   "), (0b01, "e1   "), (0b10, "e2   "), (0b11, "e1we2")):
    print(f"[{label}] = {mats[mask]}")

# a mid-size table: Cl(3,2) over the base Cl(2,1)
table = build_basis_table(2, 1)
ctx = table.ambient
print("\ntable holds", len(table.entries), "blade matrices for Cl(3,2)")

u = ctx.blade(1, 4) + ctx.generator(2).scale(2)
v = ctx.blade(2, 3, 5) - ctx.one()
print("matrix of u:", evalm(u, table))

# CM(u, v) multiplies via the representation; it matches cmul exactly
got = CM(u, v, table)
assert got == cmul(u, v)
print("u v via matrices =", multivector_text(got))

# phi inverts evalm on every element
assert phi(evalm(v, table), table) == v

# round trip through a file, checksum verified on load
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "cl32_table.txt"
    save_table(table, path)
    text = path.read_text()
    print("\nfile header      :", text.splitlines()[0])
    print("file lines       :", len(text.splitlines()))
    reloaded = load_table(path)
    assert reloaded == table
    print("reload           : checksum and every matrix square revalidated")
