"""Explicit finite fields F_q (q = p^k <= 256) and their automorphisms.

Elements are integers 0..q-1 encoding polynomials over F_p in a generator t
(digit i, base p, is the coefficient of t^i).  Tables are built from a fixed
irreducible polynomial per (p, k) and the field axioms are verified
exhaustively at construction, so a bad polynomial cannot survive silently.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import UagError

__all__ = [
    "FiniteField",
    "FieldAutomorphism",
    "finite_field",
    "automorphism_group",
    "VerificationError",
]


class VerificationError(UagError):
    """An exhaustive axiom or flag check failed at construction time."""


MAX_ORDER = 256

_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227,
    229, 233, 239, 241, 251,
)

# monic irreducible polynomial per (p, k), coefficients ascending.
_IRREDUCIBLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


def _poly_mul_mod(a: int, b: int, p: int, k: int, red: tuple[int, ...]) -> int:
    """Multiply two base-p digit encodings modulo the irreducible polynomial.

    `red` holds, for degree k..2k-2, the encoding of t^deg reduced below k.
    """
    da = [(a // p**i) % p for i in range(k)]
    db = [(b // p**i) % p for i in range(k)]
    prod = [0] * (2 * k - 1)
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    out = [0] * k
    for deg in range(2 * k - 2, -1, -1):
        c = prod[deg]
        if not c:
            continue
        if deg < k:
            out[deg] = (out[deg] + c) % p
        else:
            rep = red[deg - k]
            for i in range(k):
                d = (rep // p**i) % p
                out[i] = (out[i] + c * d) % p
    return sum(out[i] * p**i for i in range(k))


class FiniteField:
    """F_{p^k} with explicit addition/multiplication tables over 0..q-1."""

    def __init__(self, p: int, k: int):
        if p not in _PRIMES:
            raise VerificationError(f"{p} is not a prime <= 251")
        if k < 1 or p**k > MAX_ORDER:
            raise VerificationError(f"order {p}^{k} out of the supported range (q <= {MAX_ORDER})")
        if k > 1 and (p, k) not in _IRREDUCIBLE:
            raise VerificationError(f"no irreducible polynomial recorded for ({p},{k})")
        self.p = p
        self.k = k
        self.q = q = p**k
        self.modulus = _IRREDUCIBLE.get((p, k), (0, 1))

        digits = np.array([[(e // p**i) % p for i in range(k)] for e in range(q)], dtype=np.int64)
        add_digits = (digits[:, None, :] + digits[None, :, :]) % p
        pows = p ** np.arange(k, dtype=np.int64)
        self._add = (add_digits * pows).sum(axis=2)
        self._neg = ((-digits) % p @ pows).astype(np.int64)

        if k == 1:
            mul = (np.arange(q)[:, None] * np.arange(q)[None, :]) % p
            self._mul = mul.astype(np.int64)
        else:
            red = self._reductions()
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    v = _poly_mul_mod(a, b, p, k, red)
                    mul[a, b] = v
                    mul[b, a] = v
            self._mul = mul

        self.add = tuple(int(v) for v in self._add.reshape(-1))
        self.mul = tuple(int(v) for v in self._mul.reshape(-1))
        self.neg = tuple(int(v) for v in self._neg)
        self._verify()
        self.primitive = self._smallest_generator()

    def _reductions(self) -> tuple[int, ...]:
        """Encodings of t^k .. t^(2k-2) reduced modulo the defining polynomial."""
        p, k = self.p, self.k
        coeffs = self.modulus
        base = [(-coeffs[i]) % p for i in range(k)]  # t^k = base
        reps = []
        cur = list(base)
        reps.append(sum(cur[i] * p**i for i in range(k)))
        for _ in range(k - 2):
            shifted = [0] + cur[:-1]
            overflow = cur[-1]
            if overflow:
                shifted = [(shifted[i] + overflow * base[i]) % p for i in range(k)]
            else:
                shifted = [c % p for c in shifted]
            cur = shifted
            reps.append(sum(cur[i] * p**i for i in range(k)))
        return tuple(reps)

    def _verify(self) -> None:
        q = self.q
        a = self._add
        m = self._mul
        r = np.arange(q)
        if not (a == a.T).all() or not (m == m.T).all():
            raise VerificationError("commutativity fails")
        if not (a[0] == r).all():
            raise VerificationError("0 is not an additive identity")
        if not (m[1] == r).all():
            raise VerificationError("1 is not a multiplicative identity")
        if not (a[r, self._neg] == 0).all():
            raise VerificationError("additive inverses fail")
        # associativity and distributivity, fully exhaustive over q^3 triples
        if not (a[a[:, :, None], r[None, None, :]] == a[r[:, None, None], a[None, :, :]]).all():
            raise VerificationError("addition is not associative")
        if not (m[m[:, :, None], r[None, None, :]] == m[r[:, None, None], m[None, :, :]]).all():
            raise VerificationError("multiplication is not associative")
        if not (m[r[:, None, None], a[None, :, :]] == a[m[:, :, None], m[:, None, :]]).all():
            raise VerificationError("distributivity fails")
        for x in range(1, q):
            if 1 not in self._mul[x]:
                raise VerificationError(f"{x} has no multiplicative inverse (reducible modulus?)")

    def _smallest_generator(self) -> int:
        for g in range(2, self.q):
            x, order = g, 1
            while x != 1:
                x = int(self._mul[x, g])
                order += 1
            if order == self.q - 1:
                return g
        return 1  # q = 2

    # element arithmetic -----------------------------------------------------
    def addf(self, x: int, y: int) -> int:
        return int(self._add[x, y])

    def mulf(self, x: int, y: int) -> int:
        return int(self._mul[x, y])

    def negf(self, x: int) -> int:
        return int(self._neg[x])

    def powf(self, x: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mulf(out, x)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"F{self.q}"


@functools.lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    """The field of order q (q = p^k <= 256)."""
    for p in _PRIMES:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise VerificationError(f"{q} is not a prime power")
            return FiniteField(p, k)
    raise VerificationError(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldAutomorphism:
    """A permutation of F_q preserving + and *, i.e. a Frobenius power."""

    field: FiniteField
    perm: tuple[int, ...]
    power: int  # exponent i with perm = Frobenius^i

    def __post_init__(self):
        f = self.field
        if sorted(self.perm) != list(range(f.q)):
            raise VerificationError("automorphism is not a bijection")
        perm = np.asarray(self.perm, dtype=np.int64)
        if not (perm[f._add] == f._add[perm][:, perm]).all():
            raise VerificationError("automorphism does not preserve addition")
        if not (perm[f._mul] == f._mul[perm][:, perm]).all():
            raise VerificationError("automorphism does not preserve multiplication")

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def inverse(self) -> "FieldAutomorphism":
        inv = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            inv[v] = i
        return FieldAutomorphism(self.field, tuple(inv), (-self.power) % self.field.k)

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        """self after other."""
        if other.field != self.field:
            raise VerificationError("automorphisms over different fields")
        return FieldAutomorphism(
            self.field,
            tuple(self.perm[v] for v in other.perm),
            (self.power + other.power) % self.field.k,
        )

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.perm))

    @property
    def name(self) -> str:
        return "id" if self.power % self.field.k == 0 else f"frob^{self.power % self.field.k}"


def automorphism_group(field: FiniteField) -> list[FieldAutomorphism]:
    """Aut(F_{p^k}): cyclic of order k, generated by x -> x^p."""
    frob = tuple(field.powf(x, field.p) for x in range(field.q))
    out = []
    perm = tuple(range(field.q))
    for i in range(field.k):
        out.append(FieldAutomorphism(field, perm, i))
        perm = tuple(frob[v] for v in perm)
    return out
