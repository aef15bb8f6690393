"""Algebras over finite fields given by structure constants.

A `StructureAlgebra` is a d-dimensional algebra over F_q with an explicit
bilinear product on basis vectors.  `compile_algebra` folds it into a
one-sorted `FiniteAlgebra` (carrier = coordinate vectors, one unary symbol
per scalar), so the generic Galois/equivalence machinery applies verbatim;
twisting by a field automorphism then becomes a re-indexing of the scalar
symbols.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from .algebras import FiniteAlgebra
from .errors import CapExceeded
from .fields import FieldAutomorphism, FiniteField, VerificationError, automorphism_group
from .terms import OpSymbol, Signature

__all__ = [
    "StructureAlgebra",
    "structure_algebra",
    "compile_algebra",
    "twist",
    "opposite",
    "NCPoly",
    "mirror",
    "twisted_equivalent",
    "almost_equivalent",
    "AlmostVerdict",
    "scalar_symbol",
    "DEFAULT_COMPILE_CAP",
]

DEFAULT_COMPILE_CAP = 4096


def scalar_symbol(value: int) -> str:
    return f"sc{value}"


@dataclass(frozen=True)
class StructureAlgebra:
    """Structure constants c[i][j] (a d-vector each) over a finite field.

    `scalar_twist` records how the scalar action differs from the plain one:
    scalar multiplication by lambda acts as multiplication by
    scalar_twist^{-1}(lambda) on coordinates.  The identity twist is the
    untwisted algebra.
    """

    name: str
    base: FiniteField
    dim: int
    constants: tuple[tuple[tuple[int, ...], ...], ...]  # c[i][j] -> vector
    associative: bool = False
    commutative: bool = False
    lie: bool = False
    unit: tuple[int, ...] | None = None
    scalar_twist: FieldAutomorphism | None = field(default=None)
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise VerificationError("dimension must be positive")
        if len(self.constants) != self.dim or any(
            len(row) != self.dim or any(len(v) != self.dim for v in row) for row in self.constants
        ):
            raise VerificationError("structure constants must form a d x d table of d-vectors")
        for row in self.constants:
            for vec in row:
                if any(not (0 <= c < self.base.q) for c in vec):
                    raise VerificationError("structure constants out of field range")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(self.dim)))
        if self.scalar_twist is None:
            ident = automorphism_group(self.base)[0]
            object.__setattr__(self, "scalar_twist", ident)
        self._verify_flags()

    # vector arithmetic ------------------------------------------------------
    def vadd(self, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.base.addf(a, b) for a, b in zip(u, v))

    def vneg(self, u: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.base.negf(a) for a in u)

    def vscale(self, lam: int, u: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.base.mulf(lam, a) for a in u)

    def vmul(self, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        out = (0,) * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                out = self.vadd(out, self.vscale(self.base.mulf(a, b), self.constants[i][j]))
        return out

    def basis_vector(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def _verify_flags(self) -> None:
        d = self.dim
        e = [self.basis_vector(i) for i in range(d)]
        if self.associative:
            for i, j, k in itertools.product(range(d), repeat=3):
                if self.vmul(self.vmul(e[i], e[j]), e[k]) != self.vmul(e[i], self.vmul(e[j], e[k])):
                    raise VerificationError(f"associativity fails on basis triple ({i},{j},{k})")
        if self.commutative:
            for i, j in itertools.product(range(d), repeat=2):
                if self.constants[i][j] != self.constants[j][i]:
                    raise VerificationError(f"commutativity fails on basis pair ({i},{j})")
        if self.lie:
            zero = (0,) * d
            for i in range(d):
                if self.constants[i][i] != zero:
                    raise VerificationError(f"[e{i},e{i}] != 0")
            for i, j in itertools.product(range(d), repeat=2):
                if self.constants[i][j] != self.vneg(self.constants[j][i]):
                    raise VerificationError(f"antisymmetry fails on ({i},{j})")
            for i, j, k in itertools.product(range(d), repeat=3):
                s = self.vmul(e[i], self.vmul(e[j], e[k]))
                s = self.vadd(s, self.vmul(e[j], self.vmul(e[k], e[i])))
                s = self.vadd(s, self.vmul(e[k], self.vmul(e[i], e[j])))
                if s != zero:
                    raise VerificationError(f"Jacobi identity fails on ({i},{j},{k})")
        if self.unit is not None:
            if len(self.unit) != d:
                raise VerificationError("unit vector has wrong dimension")
            for i in range(d):
                if self.vmul(self.unit, e[i]) != e[i] or self.vmul(e[i], self.unit) != e[i]:
                    raise VerificationError(f"declared unit fails on basis vector e{i}")


def structure_algebra(name: str, base: FiniteField, dim: int, constants,
                      associative: bool = False, commutative: bool = False,
                      lie: bool = False, unit=None) -> StructureAlgebra:
    consts = tuple(tuple(tuple(v) for v in row) for row in constants)
    return StructureAlgebra(
        name, base, dim, consts,
        associative=associative, commutative=commutative, lie=lie,
        unit=tuple(unit) if unit is not None else None,
    )


# ---------------------------------------------------------------------------
# encoding of coordinate vectors

def vector_index(vec: tuple[int, ...], q: int) -> int:
    """Big-endian base-q value of the digit string v_0 v_1 .. v_{d-1}."""
    idx = 0
    for v in vec:
        idx = idx * q + v
    return idx


def index_vector(idx: int, q: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        out.append(idx % q)
        idx //= q
    return tuple(reversed(out))


def algebra_signature(base: FiniteField, unital: bool) -> Signature:
    symbols = [
        OpSymbol("+", 2, infix_prec=1),
        OpSymbol("*", 2, infix_prec=2),
        OpSymbol("-", 1),
        OpSymbol("0", 0),
    ]
    if unital:
        symbols.append(OpSymbol("1", 0))
    symbols.extend(OpSymbol(scalar_symbol(lam), 1) for lam in range(base.q))
    return Signature(tuple(symbols))


def compile_algebra(a: StructureAlgebra, cap: int = DEFAULT_COMPILE_CAP) -> FiniteAlgebra:
    """Flatten to a FiniteAlgebra on the q^d coordinate vectors.

    Signature: binary + and *, unary -, constant 0, one unary sc<lam> per
    field element (acting through the inverse of the scalar twist), and
    constant 1 when the algebra is unital.
    """
    q, d = a.base.q, a.dim
    size = q**d
    if size > cap:
        raise CapExceeded("structure-algebra compilation", size, cap)
    vectors = [index_vector(i, q, d) for i in range(size)]
    lookup = {v: i for i, v in enumerate(vectors)}

    add = []
    mul = []
    for u in vectors:
        for v in vectors:
            add.append(lookup[a.vadd(u, v)])
            mul.append(lookup[a.vmul(u, v)])
    neg = tuple(lookup[a.vneg(u)] for u in vectors)
    tables: dict[str, tuple[int, ...]] = {
        "+": tuple(add),
        "*": tuple(mul),
        "-": neg,
        "0": (lookup[(0,) * d],),
    }
    if a.unit is not None:
        tables["1"] = (lookup[a.unit],)
    inv = a.scalar_twist.inverse()
    for lam in range(q):
        eff = inv(lam)
        tables[scalar_symbol(lam)] = tuple(lookup[a.vscale(eff, u)] for u in vectors)
    return FiniteAlgebra(a.name, size, algebra_signature(a.base, a.unit is not None), tables)


# ---------------------------------------------------------------------------
# twist, opposite, mirror

def twist(a: StructureAlgebra, sigma: FieldAutomorphism) -> StructureAlgebra:
    """H^sigma: same carrier and product, scalar action precomposed with sigma^{-1}."""
    if sigma.field != a.base:
        raise VerificationError("automorphism is over a different field")
    new = sigma.compose(a.scalar_twist)
    suffix = "" if sigma.is_identity else f"^{sigma.name}"
    return replace(a, name=a.name + suffix, scalar_twist=new)


def opposite(a: StructureAlgebra) -> StructureAlgebra:
    """H*: multiplication reversed (associative algebras only)."""
    if not a.associative:
        raise VerificationError("opposite is defined for associative algebras only")
    consts = tuple(tuple(a.constants[j][i] for j in range(a.dim)) for i in range(a.dim))
    name = a.name[:-1] if a.name.endswith("*") else a.name + "*"
    return replace(a, name=name, constants=consts)


@dataclass(frozen=True)
class NCPoly:
    """Noncommutative polynomial: formal sum of (coefficient, word) monomials.

    Words are tuples of variable indices; monomials are kept in canonical
    (length, lexicographic) order and zero coefficients are dropped.  The
    empty word is the scalar part.
    """

    base: FiniteField
    monomials: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        acc: dict[tuple[int, ...], int] = {}
        for coeff, word in self.monomials:
            acc[word] = self.base.addf(acc.get(word, 0), coeff)
        items = tuple(
            (coeff, word)
            for word, coeff in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0]))
            if coeff != 0
        )
        object.__setattr__(self, "monomials", items)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        return NCPoly(self.base, self.monomials + other.monomials)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        out = []
        for c1, w1 in self.monomials:
            for c2, w2 in other.monomials:
                out.append((self.base.mulf(c1, c2), w1 + w2))
        return NCPoly(self.base, tuple(out))

    def is_zero(self) -> bool:
        return not self.monomials


def mirror(w: NCPoly) -> NCPoly:
    """Reverse every monomial word; coefficients are unchanged."""
    return NCPoly(w.base, tuple((c, word[::-1]) for c, word in w.monomials))


# ---------------------------------------------------------------------------
# twisted / almost geometric equivalence

def twisted_equivalent(a1: StructureAlgebra, a2: StructureAlgebra,
                       compile_cap: int = DEFAULT_COMPILE_CAP,
                       hom_cap: int = 10**6) -> FieldAutomorphism | None:
    """First sigma (in Frobenius-power order) making H1^sigma ~ H2, else None."""
    from .equivalence import geometrically_equivalent

    if a1.base != a2.base:
        raise VerificationError("algebras over different fields")
    if (a1.unit is None) != (a2.unit is None):
        return None  # different signatures: no common geometry
    h2 = compile_algebra(a2, compile_cap)
    for sigma in automorphism_group(a1.base):
        h1 = compile_algebra(twist(a1, sigma), compile_cap)
        if geometrically_equivalent(h1, h2, hom_cap=hom_cap).equivalent:
            return sigma
    return None


@dataclass(frozen=True)
class AlmostVerdict:
    equivalent: bool
    sigma: FieldAutomorphism | None
    opposite_used: bool


def almost_equivalent(a1: StructureAlgebra, a2: StructureAlgebra,
                      compile_cap: int = DEFAULT_COMPILE_CAP,
                      hom_cap: int = 10**6) -> AlmostVerdict:
    """Twisted equivalence, then the opposite branch (associative inputs only)."""
    if not (a1.associative and a2.associative):
        raise VerificationError("almost equivalence is defined for associative algebras")
    sigma = twisted_equivalent(a1, a2, compile_cap, hom_cap)
    if sigma is not None:
        return AlmostVerdict(True, sigma, False)
    sigma = twisted_equivalent(opposite(a1), a2, compile_cap, hom_cap)
    if sigma is not None:
        return AlmostVerdict(True, sigma, True)
    return AlmostVerdict(False, None, False)
