"""Ready-made signatures and small algebras used throughout tests and demos."""

from __future__ import annotations

import itertools

from .algebras import FiniteAlgebra, product_algebra
from .terms import OpSymbol, Signature

__all__ = [
    "GROUP_SIGNATURE",
    "SEMILATTICE_SIGNATURE",
    "cyclic_group",
    "klein_four",
    "semilattice2",
]

GROUP_SIGNATURE = Signature(
    (
        OpSymbol("+", 2, infix_prec=1),
        OpSymbol("-", 1),
        OpSymbol("0", 0),
    )
)

SEMILATTICE_SIGNATURE = Signature((OpSymbol("*", 2, infix_prec=2),))


def cyclic_group(n: int, name: str | None = None) -> FiniteAlgebra:
    """Z_n in the additive group signature (+, unary -, constant 0)."""
    add = tuple((a + b) % n for a, b in itertools.product(range(n), repeat=2))
    neg = tuple((-a) % n for a in range(n))
    return FiniteAlgebra(name or f"Z{n}", n, GROUP_SIGNATURE, {"+": add, "-": neg, "0": (0,)})


def klein_four(name: str = "Z2xZ2") -> FiniteAlgebra:
    return product_algebra(cyclic_group(2), cyclic_group(2), name)


def semilattice2(name: str = "SL2") -> FiniteAlgebra:
    """The two-element meet semilattice ({0,1}, min)."""
    meet = tuple(min(a, b) for a, b in itertools.product(range(2), repeat=2))
    return FiniteAlgebra(name, 2, SEMILATTICE_SIGNATURE, {"*": meet})
