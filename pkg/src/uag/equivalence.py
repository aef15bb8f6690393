"""Geometric equivalence of finite algebras, with certificates.

Two finite algebras have identical double-closure geometry exactly when each
embeds into a finite power of the other; the embedding is witnessed by a
jointly point-separating family of homomorphisms.  (For a finite algebra the
quasivariety it generates collapses to SC(H): ultrapowers of a finite
algebra are isomorphic to it, and finiteness gives both chain conditions, so
the general decision theory applies with no infinitary residue.  The lemma
is spelled out in the README.)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebras import DEFAULT_ASSIGNMENT_CAP, FiniteAlgebra, enumerate_homs
from .errors import SignatureError, UagError
from .geometry import (
    UniverseBound,
    closure_membership,
    closure_on_universe,
    solution_set,
    system_window,
    term_universe,
    universe_equations,
)
from .algebras import check_identity
from .terms import Equation, EquationSystem, Term

__all__ = [
    "EmbeddingCertificate",
    "SeparationFailure",
    "EquivalenceVerdict",
    "FiniteClass",
    "NotDirectedError",
    "separates",
    "geometrically_equivalent",
    "CrossValidationReport",
    "cross_validate_equivalence",
    "class_closure_membership",
    "finite_basis",
    "DirectedUnionReport",
    "directed_union_demo",
    "IdentityWindowReport",
    "same_identities_window",
    "window_vars",
]

_VAR_POOL = ("x", "y", "z") + tuple(f"x{i}" for i in range(4, 27))


def window_vars(n: int) -> tuple[str, ...]:
    return _VAR_POOL[:n]


class NotDirectedError(UagError):
    """A chain handed to directed_union_demo is not increasing."""


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Homomorphisms H1 -> H2 that jointly separate the points of H1.

    Witnesses H1 embedding into H2^m for m = len(homs) via the product map.
    """

    homs: tuple[tuple[int, ...], ...]

    @property
    def exponent(self) -> int:
        return len(self.homs)

    def separating_ok(self, size: int) -> bool:
        for a, b in itertools.combinations(range(size), 2):
            if not any(f[a] != f[b] for f in self.homs):
                return False
        return True


@dataclass(frozen=True)
class SeparationFailure:
    """A pair of distinct elements no homomorphism tells apart."""

    pair: tuple[int, int]


def separates(h1: FiniteAlgebra, h2: FiniteAlgebra,
              hom_cap: int = DEFAULT_ASSIGNMENT_CAP) -> EmbeddingCertificate | SeparationFailure:
    """Certificate that the natural map H1 -> H2^Hom(H1,H2) is injective.

    On failure returns the lexicographically smallest never-separated pair,
    valid against the full homomorphism enumeration.
    """
    homs = enumerate_homs(h1, h2, hom_cap)
    pairs = [(a, b) for a in range(h1.size) for b in range(a + 1, h1.size)]
    for a, b in pairs:
        if not any(f[a] != f[b] for f in homs):
            return SeparationFailure((a, b))
    chosen: list[tuple[int, ...]] = []
    remaining = set(pairs)
    for f in homs:
        if not remaining:
            break
        hit = {pr for pr in remaining if f[pr[0]] != f[pr[1]]}
        if hit:
            chosen.append(f)
            remaining -= hit
    return EmbeddingCertificate(tuple(chosen))


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    forward: EmbeddingCertificate | SeparationFailure   # H1 into a power of H2
    backward: EmbeddingCertificate | SeparationFailure  # H2 into a power of H1


def geometrically_equivalent(h1: FiniteAlgebra, h2: FiniteAlgebra,
                             hom_cap: int = DEFAULT_ASSIGNMENT_CAP) -> EquivalenceVerdict:
    """Same double closures for every (X, T), decided by mutual embeddings."""
    if h1.signature != h2.signature:
        raise SignatureError("geometric equivalence needs a common signature")
    fwd = separates(h1, h2, hom_cap)
    bwd = separates(h2, h1, hom_cap)
    ok = isinstance(fwd, EmbeddingCertificate) and isinstance(bwd, EmbeddingCertificate)
    return EquivalenceVerdict(ok, fwd, bwd)


@dataclass(frozen=True)
class CrossValidationReport:
    agree: bool
    distinguishing: tuple[EquationSystem, Equation] | None
    systems_checked: int
    pairs_checked: int
    bound: UniverseBound
    exhausted: bool  # True when no witness was found before the window ran out

    @property
    def vars_of_witness(self) -> tuple[str, ...] | None:
        return self.distinguishing[0].vars if self.distinguishing else None


def cross_validate_equivalence(h1: FiniteAlgebra, h2: FiniteAlgebra,
                               bound: UniverseBound = UniverseBound(),
                               max_equations: int = 2,
                               cap: int = DEFAULT_ASSIGNMENT_CAP) -> CrossValidationReport:
    """Exhaustively compare T''-membership over both algebras on a window.

    Scans by window size (number of variables, then system, then pair) and
    reports the first (T, w0, w0') whose closure membership differs.  Finding
    none is a statement about the window only, never a completeness claim.
    """
    if h1.signature != h2.signature:
        raise SignatureError("cross validation needs a common signature")
    systems_checked = pairs_checked = 0
    for nvars in range(1, bound.max_vars + 1):
        vars = window_vars(nvars)
        probes = universe_equations(h1, vars, bound)
        for system in system_window(h1, vars, bound, max_equations):
            systems_checked += 1
            for eq in probes:
                pairs_checked += 1
                m1 = closure_membership(system, h1, eq.lhs, eq.rhs, cap)
                m2 = closure_membership(system, h2, eq.lhs, eq.rhs, cap)
                if m1 != m2:
                    return CrossValidationReport(False, (system, eq), systems_checked,
                                                 pairs_checked, bound, False)
    return CrossValidationReport(True, None, systems_checked, pairs_checked, bound, True)


@dataclass(frozen=True)
class FiniteClass:
    """A nonempty finite class of algebras over one signature."""

    algebras: tuple[FiniteAlgebra, ...]

    def __post_init__(self):
        if not self.algebras:
            raise SignatureError("a finite class must be nonempty")
        sig = self.algebras[0].signature
        for a in self.algebras[1:]:
            if a.signature != sig:
                raise SignatureError("class members must share a signature")


def class_closure_membership(cls: FiniteClass, system: EquationSystem, w0: Term, w0p: Term,
                             cap: int = DEFAULT_ASSIGNMENT_CAP) -> bool:
    """(w0, w0') in T^X = the intersection of T''_H over H in the class."""
    return all(closure_membership(system, h, w0, w0p, cap) for h in cls.algebras)


def finite_basis(system: EquationSystem, algebra: FiniteAlgebra,
                 cap: int = DEFAULT_ASSIGNMENT_CAP) -> EquationSystem:
    """A greedy finite T0 with the same solution set (hence the same closure).

    Equations are taken in the system's stored order; one is kept only if it
    strictly shrinks the running solution set.  Minimal in the greedy order,
    not globally minimal.
    """
    target = solution_set(system, algebra, cap).points.points
    chosen: list[Equation] = []
    current = solution_set(EquationSystem(system.vars, ()), algebra, cap).points.points
    for eq in system.equations:
        if current == target:
            break
        trial = EquationSystem(system.vars, tuple(chosen) + (eq,))
        pts = solution_set(trial, algebra, cap).points.points
        if pts != current:
            chosen.append(eq)
            current = pts
    if current != target:
        raise AssertionError("greedy basis failed to reach the target solution set")
    return EquationSystem(system.vars, tuple(chosen))


@dataclass(frozen=True)
class DirectedUnionReport:
    stabilization_index: int  # 1-based position where the union's solutions are reached
    step_bound: int           # |H|^|X|
    within_bound: bool
    union_window_closed: bool  # union's closure window equals the stable member's
    bound: UniverseBound


def directed_union_demo(chain: list[EquationSystem], algebra: FiniteAlgebra,
                        bound: UniverseBound = UniverseBound(),
                        cap: int = DEFAULT_ASSIGNMENT_CAP) -> DirectedUnionReport:
    """Finite-window content of closedness of directed unions.

    For an increasing chain over a finite algebra the solution sets descend
    and must stabilise within |H|^|X| strict drops; the union's closure
    window then coincides with the stable member's.
    """
    if not chain:
        raise NotDirectedError("empty chain")
    vars = chain[0].vars
    sols = []
    for t in chain:
        if t.vars != vars:
            raise NotDirectedError("chain members use different variable sets")
        sols.append(solution_set(t, algebra, cap).points.points)
    for earlier, later in zip(sols, sols[1:]):
        if not set(later) <= set(earlier):
            raise NotDirectedError("solution sets do not descend along the chain")
    union = chain[0]
    for t in chain[1:]:
        union = union.union(t)
    union_sol = solution_set(union, algebra, cap).points.points
    index = next(i + 1 for i, s in enumerate(sols) if s == union_sol)
    step_bound = algebra.size ** len(vars)
    w_union = closure_on_universe(union, algebra, bound, cap)
    w_stable = closure_on_universe(chain[index - 1], algebra, bound, cap)
    return DirectedUnionReport(index, step_bound, index <= step_bound,
                               w_union == w_stable, bound)


@dataclass(frozen=True)
class IdentityWindowReport:
    agree: bool
    counterexample: Equation | None
    vars: tuple[str, ...] | None
    bound: UniverseBound


def same_identities_window(h1: FiniteAlgebra, h2: FiniteAlgebra,
                           bound: UniverseBound = UniverseBound(),
                           cap: int = DEFAULT_ASSIGNMENT_CAP) -> IdentityWindowReport:
    """Check every window equation as an identity in both algebras.

    A necessary condition for geometric equivalence; the converse is not
    asserted.
    """
    if h1.signature != h2.signature:
        raise SignatureError("identity comparison needs a common signature")
    for nvars in range(1, bound.max_vars + 1):
        vars = window_vars(nvars)
        for eq in universe_equations(h1, vars, bound):
            a = check_identity(h1, eq, vars, cap)
            b = check_identity(h2, eq, vars, cap)
            if a != b:
                return IdentityWindowReport(False, eq, vars, bound)
    return IdentityWindowReport(True, None, None, bound)
