"""Mod-8 classification of the real Clifford algebras Cl(p,q).

Cl(p,q) is isomorphic to a matrix algebra Mat(m, K) with K one of
R, C, H, or to a double block 2Mat(m, K) with K in {R, H}; which one
depends only on (p - q) mod 8.  The square of the volume element
e_1...e_n depends on (p - q) mod 4.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError

# (p-q) mod 8 -> (base ring, exponent offset o with size 2^((n-o)/2), simple)
_MOD8 = {
    0: ("R", 0, True),
    1: ("2R", 1, False),
    2: ("R", 0, True),
    3: ("C", 1, True),
    4: ("H", 2, True),
    5: ("2H", 3, False),
    6: ("H", 2, True),
    7: ("C", 1, True),
}

_RING_REAL_DIM = {"R": 1, "C": 2, "H": 4, "2R": 1, "2H": 4}


@dataclass(frozen=True)
class AlgebraClass:
    base_ring: str
    matrix_size: int
    simple: bool
    volume_square: int

    def label(self):
        core = f"Mat({self.matrix_size},{self.base_ring.lstrip('2')})"
        if self.base_ring.startswith("2"):
            return f"{core} + {core}"
        return core

    def real_dimension(self):
        blocks = 2 if self.base_ring.startswith("2") else 1
        return blocks * self.matrix_size ** 2 * _RING_REAL_DIM[self.base_ring]


def classify(p, q):
    if p < 0 or q < 0:
        raise PreconditionError("signature parts must be nonnegative")
    n = p + q
    ring, offset, simple = _MOD8[(p - q) % 8]
    size = 1 << ((n - offset) // 2)
    volume_square = 1 if (p - q) % 4 in (0, 1) else -1
    return AlgebraClass(ring, size, simple, volume_square)
