"""Membership-decidable congruences on the term algebra.

The congruences arising from the Galois machinery are infinite sets of term
pairs, so they are never stored extensionally.  Each oracle is backed by
finite data (a point, a point set, or an equation system over a coefficient
algebra) and answers ``decide(w, w')``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import (
    DEFAULT_ASSIGNMENT_CAP,
    FiniteAlgebra,
    Point,
    PointSet,
    eval_term,
    eval_term_rows,
    solution_points,
)
from .terms import EquationSystem, Term, substitute

__all__ = [
    "CongruenceOracle",
    "KernelOf",
    "KernelOfSet",
    "ClosureOfSystem",
    "Preimage",
    "AllPairs",
]


class CongruenceOracle:
    """Base contract: a reflexive, symmetric, transitive, op-compatible decide."""

    def decide(self, w: Term, w2: Term) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class KernelOf(CongruenceOracle):
    """Ker(mu) for a single point: terms equal iff they evaluate equally."""

    point: Point
    algebra: FiniteAlgebra

    def decide(self, w: Term, w2: Term) -> bool:
        return eval_term(w, self.point, self.algebra) == eval_term(w2, self.point, self.algebra)


class KernelOfSet(CongruenceOracle):
    """The intersection of Ker(mu) over all mu in a point set.

    An empty point set yields the all-pairs congruence.  Evaluations are
    cached per term, so repeated decisions over one window are cheap.
    """

    def __init__(self, points: PointSet, algebra: FiniteAlgebra):
        self.points = points
        self.algebra = algebra
        self._values = points.values_array()
        self._rows: dict[Term, tuple[int, ...]] = {}

    def row(self, w: Term) -> tuple[int, ...]:
        r = self._rows.get(w)
        if r is None:
            r = tuple(int(v) for v in eval_term_rows(w, self._values, self.points.vars, self.algebra))
            self._rows[w] = r
        return r

    def decide(self, w: Term, w2: Term) -> bool:
        return self.row(w) == self.row(w2)


class ClosureOfSystem(CongruenceOracle):
    """T''_H: the pairs that hold at every solution of the system T."""

    def __init__(self, system: EquationSystem, algebra: FiniteAlgebra, cap: int = DEFAULT_ASSIGNMENT_CAP):
        self.system = system
        self.algebra = algebra
        self._kernel = KernelOfSet(solution_points(system, algebra, cap), algebra)

    @property
    def solutions(self) -> PointSet:
        return self._kernel.points

    def decide(self, w: Term, w2: Term) -> bool:
        return self._kernel.decide(w, w2)


@dataclass(frozen=True)
class Preimage(CongruenceOracle):
    """s^{-1}(T): w ~ w' iff w^s ~ w'^s in the base congruence.

    The substitution is a map variable -> term (variables absent stay fixed).
    """

    mapping: tuple[tuple[str, Term], ...]
    base: CongruenceOracle

    @staticmethod
    def of(mapping: dict[str, Term], base: CongruenceOracle) -> "Preimage":
        return Preimage(tuple(sorted(mapping.items())), base)

    def decide(self, w: Term, w2: Term) -> bool:
        m = dict(self.mapping)
        return self.base.decide(substitute(w, m), substitute(w2, m))


@dataclass(frozen=True)
class AllPairs(CongruenceOracle):
    """The full relation W x W (the kernel of an empty point set)."""

    def decide(self, w: Term, w2: Term) -> bool:
        return True
