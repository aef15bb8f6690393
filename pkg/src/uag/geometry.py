"""The Galois correspondence between equation systems and point sets.

Solution sets, kernel congruences, double closures, algebraicity tests and
full lattices of algebraic sets over a finite coefficient algebra.  Double
closure of a point set uses subalgebra generation in H^(|A|+1) with conflict
witnesses (exact and terminating); lattices are built from term-function
clones or interpolation witnesses (see `clone`), which realises the
exhaustive closed-subset scan without per-subset generation.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .algebras import (
    DEFAULT_ASSIGNMENT_CAP,
    FiniteAlgebra,
    Point,
    PointSet,
    enumerate_points,
    eval_term,
    solution_points,
)
from .clone import (
    DEFAULT_CLONE_CAP,
    agreement_masks,
    generate_clone,
    interpolation_witness,
    intersection_closure,
)
from .congruences import ClosureOfSystem, KernelOfSet
from .errors import CapExceeded
from .terms import Equation, EquationSystem, Term, enumerate_terms

__all__ = [
    "UniverseBound",
    "SolutionOf",
    "ClosureOf",
    "AlgebraicSet",
    "AlgebraicSetLattice",
    "solution_set",
    "kernel_congruence",
    "closure_membership",
    "closure_oracle",
    "double_closure_points",
    "closure_of",
    "is_algebraic",
    "lattice",
    "closure_on_universe",
    "term_universe",
    "universe_equations",
    "system_window",
    "DEFAULT_LATTICE_POINT_CAP",
]

DEFAULT_LATTICE_POINT_CAP = 16


@dataclass(frozen=True)
class UniverseBound:
    """Finite window onto the (infinite) term and congruence universe.

    Results computed "on a universe" are exact restrictions of infinite
    objects and always carry their bound.
    """

    depth: int = 2
    max_vars: int = 2
    max_pairs: int = 72

    def __post_init__(self):
        if self.depth < 0 or self.max_vars <= 0 or self.max_pairs <= 0:
            raise ValueError("universe bounds must be positive")

    def as_dict(self) -> dict[str, int]:
        return {"depth": self.depth, "max_vars": self.max_vars, "max_pairs": self.max_pairs}


@dataclass(frozen=True)
class SolutionOf:
    system: EquationSystem


@dataclass(frozen=True)
class ClosureOf:
    source: PointSet


@dataclass(frozen=True)
class AlgebraicSet:
    """A point set fixed under double closure, with its provenance.

    `hint`, when present, is an equation system whose solution set is
    exactly `points`; the factoring algorithm uses it to produce conflict
    certificates without regenerating them.
    """

    vars: tuple[str, ...]
    algebra: FiniteAlgebra
    points: PointSet
    provenance: SolutionOf | ClosureOf
    hint: EquationSystem | None = field(default=None, compare=False, repr=False)


def solution_set(system: EquationSystem, algebra: FiniteAlgebra,
                 cap: int = DEFAULT_ASSIGNMENT_CAP) -> AlgebraicSet:
    """T'_H: the points whose kernel contains every equation of T."""
    pts = solution_points(system, algebra, cap)
    return AlgebraicSet(system.vars, algebra, pts, SolutionOf(system), hint=system)


def kernel_congruence(points: PointSet, algebra: FiniteAlgebra) -> KernelOfSet:
    """A'_W: terms are congruent iff they agree on every point of A."""
    return KernelOfSet(points, algebra)


@functools.lru_cache(maxsize=4096)
def closure_oracle(system: EquationSystem, algebra: FiniteAlgebra,
                   cap: int = DEFAULT_ASSIGNMENT_CAP) -> ClosureOfSystem:
    """Cached T''_H oracle (repeated windows hit the same systems)."""
    return ClosureOfSystem(system, algebra, cap)


def closure_membership(system: EquationSystem, algebra: FiniteAlgebra, w0: Term, w0p: Term,
                       cap: int = DEFAULT_ASSIGNMENT_CAP) -> bool:
    """(w0, w0') in T''_H, decided through the solution set of T."""
    return closure_oracle(system, algebra, cap).decide(w0, w0p)


# ---------------------------------------------------------------------------
# double closure by subalgebra generation (the factoring algorithm)

class _Conflict(Exception):
    pass


def _factoring_member(a_values: list[tuple[int, ...]], candidate: tuple[int, ...],
                      algebra: FiniteAlgebra, cap: int) -> bool:
    """Is the candidate point in A''?

    Generates the subalgebra of H^(k+1) from the per-variable row tuples
    r_i = (mu_1(x_i),..,mu_k(x_i), candidate(x_i)) plus constants; membership
    fails exactly when two generated tuples agree on the first k coordinates
    but differ in the last.
    """
    k = len(a_values)
    n = algebra.size
    elems: list[tuple[int, ...]] = []
    last_by_key: dict[tuple[int, ...], int] = {}
    seen: set[tuple[int, ...]] = set()

    def add(t: tuple[int, ...]) -> None:
        if t in seen:
            return
        key, last = t[:-1], t[-1]
        prev = last_by_key.get(key)
        if prev is not None and prev != last:
            raise _Conflict
        if len(elems) >= cap:
            raise CapExceeded("double-closure subalgebra generation", len(elems) + 1, cap)
        seen.add(t)
        last_by_key[key] = last
        elems.append(t)

    try:
        for i in range(len(candidate)):
            add(tuple(row[i] for row in a_values) + (candidate[i],))
        for sym in algebra.signature.constants:
            add((algebra.tables[sym.name][0],) * (k + 1))
        ops = [s for s in algebra.signature.symbols if s.arity >= 1]
        t = 0
        while t < len(elems):
            cur = elems[t]
            for sym in ops:
                tbl = algebra.tables[sym.name]
                if sym.arity == 1:
                    add(tuple(tbl[x] for x in cur))
                elif sym.arity == 2:
                    for j in range(t + 1):
                        other = elems[j]
                        add(tuple(tbl[a * n + b] for a, b in zip(cur, other)))
                        if j < t:
                            add(tuple(tbl[a * n + b] for a, b in zip(other, cur)))
                else:
                    for combo in itertools.product(range(t + 1), repeat=sym.arity):
                        if max(combo) != t:
                            continue
                        cols = [elems[j] for j in combo]
                        out = []
                        for coords in zip(*cols):
                            idx = 0
                            for a in coords:
                                idx = idx * n + a
                            out.append(tbl[idx])
                        add(tuple(out))
            t += 1
    except _Conflict:
        return False
    return True


def double_closure_points(points: PointSet, algebra: FiniteAlgebra,
                          cap: int = DEFAULT_ASSIGNMENT_CAP,
                          hint: EquationSystem | None = None) -> AlgebraicSet:
    """A'' = { mu : Ker mu contains A' }.

    When `hint` is a system whose solution set equals A (verified here), a
    candidate outside A is rejected by the failing hint equation itself:
    its two term rows are generated tuples that agree on A and differ at the
    candidate, i.e. a ready-made conflict certificate.
    """
    vars = points.vars
    space = enumerate_points(vars, algebra, cap)
    member_values = {p.values for p in points}
    a_values = [p.values for p in points]

    hint_ok = False
    if hint is not None:
        hint_ok = solution_points(hint, algebra, cap).points == points.points

    out: list[Point] = []
    for p in space:
        if p.values in member_values:
            out.append(p)
            continue
        if hint_ok:
            failing = any(
                eval_term(eq.lhs, p, algebra) != eval_term(eq.rhs, p, algebra)
                for eq in hint.equations
            )
            if failing:
                continue
        if _factoring_member(a_values, p.values, algebra, cap):
            out.append(p)

    result = PointSet(vars, tuple(out))
    carried = hint if (hint_ok and result.points == points.points) else None
    return AlgebraicSet(vars, algebra, result, ClosureOf(points), hint=carried)


def closure_of(aset: AlgebraicSet, cap: int = DEFAULT_ASSIGNMENT_CAP) -> AlgebraicSet:
    """Double closure of an algebraic-set candidate, reusing its hint."""
    return double_closure_points(aset.points, aset.algebra, cap, hint=aset.hint)


def is_algebraic(points: PointSet, algebra: FiniteAlgebra,
                 cap: int = DEFAULT_ASSIGNMENT_CAP,
                 hint: EquationSystem | None = None) -> bool:
    return double_closure_points(points, algebra, cap, hint).points.points == points.points


# ---------------------------------------------------------------------------
# term universes and windows

def term_universe(algebra: FiniteAlgebra, vars: tuple[str, ...], bound: UniverseBound) -> list[Term]:
    if len(vars) > bound.max_vars:
        raise CapExceeded("universe variables", len(vars), bound.max_vars)
    return enumerate_terms(algebra.signature, vars, bound.depth)


def universe_equations(algebra: FiniteAlgebra, vars: tuple[str, ...], bound: UniverseBound,
                       include_diagonal: bool = False) -> list[Equation]:
    """The first `max_pairs` equations over the bounded universe.

    Pairs (t_i, t_j) are ordered by (j, i), so any prefix is the complete
    pair set over a prefix of the depth-then-lexicographic term list.
    """
    terms = term_universe(algebra, vars, bound)
    out: list[Equation] = []
    for j in range(len(terms)):
        rng = range(j + 1) if include_diagonal else range(j)
        for i in rng:
            out.append(Equation(terms[i], terms[j]))
            if len(out) >= bound.max_pairs:
                return out
    return out


def system_window(algebra: FiniteAlgebra, vars: tuple[str, ...], bound: UniverseBound,
                  max_equations: int = 2) -> list[EquationSystem]:
    """Every system of at most `max_equations` equations from the window."""
    eqs = universe_equations(algebra, vars, bound)
    out: list[EquationSystem] = []
    for k in range(max_equations + 1):
        for combo in itertools.combinations(eqs, k):
            out.append(EquationSystem(vars, combo))
    return out


def closure_on_universe(system: EquationSystem, algebra: FiniteAlgebra, bound: UniverseBound,
                        cap: int = DEFAULT_ASSIGNMENT_CAP) -> tuple[Equation, ...]:
    """The restriction of T''_H to pairs of terms inside the bounded universe."""
    terms = term_universe(algebra, system.vars, bound)
    oracle = closure_oracle(system, algebra, cap)
    out: list[Equation] = []
    count = 0
    for j in range(len(terms)):
        for i in range(j + 1):
            if count >= bound.max_pairs:
                return tuple(out)
            count += 1
            if oracle.decide(terms[i], terms[j]):
                out.append(Equation(terms[i], terms[j]))
    return tuple(out)


# ---------------------------------------------------------------------------
# lattices of algebraic sets

class AlgebraicSetLattice:
    """All algebraic subsets of H^X, as bitmasks over the lexicographic grid.

    Meet is intersection; join is the double closure of the union.  Closed
    sets are ordered by (size, mask), so the bottom comes first and the full
    space last.
    """

    def __init__(self, vars: tuple[str, ...], algebra: FiniteAlgebra, masks: list[int],
                 kind: str, emasks=None, witness=None):
        self.vars = vars
        self.algebra = algebra
        self.kind = kind  # "clone" | "powerset"
        self.space = [p.values for p in enumerate_points(vars, algebra)]
        self.masks = tuple(sorted(masks, key=lambda m: (bin(m).count("1"), m)))
        self._index = {m: i for i, m in enumerate(self.masks)}
        self._emasks = emasks
        self._witness = witness
        self.full_mask = (1 << len(self.space)) - 1

    def __len__(self) -> int:
        return len(self.masks)

    def index_of(self, mask: int) -> int:
        return self._index[mask]

    def is_closed_mask(self, mask: int) -> bool:
        return mask in self._index

    def mask_of_points(self, values) -> int:
        lookup = {v: i for i, v in enumerate(self.space)}
        mask = 0
        for v in values:
            mask |= 1 << lookup[tuple(v)]
        return mask

    def points_of(self, i: int) -> list[tuple[int, ...]]:
        mask = self.masks[i]
        return [v for j, v in enumerate(self.space) if mask >> j & 1]

    def algebraic_set(self, i: int) -> AlgebraicSet:
        system = self.defining_system(i)
        pts = PointSet(self.vars, tuple(Point(self.vars, v) for v in self.points_of(i)))
        return AlgebraicSet(self.vars, self.algebra, pts, SolutionOf(system), hint=system)

    @property
    def sets(self) -> list[AlgebraicSet]:
        return [self.algebraic_set(i) for i in range(len(self.masks))]

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def meet(self, i: int, j: int) -> int:
        return self._index[self.masks[i] & self.masks[j]]

    def closure_mask(self, mask: int) -> int:
        if mask in self._index:
            return mask
        out = self.full_mask
        for c in self.masks:
            if mask & ~c == 0:
                out &= c
        return out

    def join(self, i: int, j: int) -> int:
        return self._index[self.closure_mask(self.masks[i] | self.masks[j])]

    def top_index(self) -> int:
        return self._index[self.full_mask]

    def bottom_index(self) -> int:
        return 0

    def covering_edges(self) -> list[tuple[int, int]]:
        """(i, j) with masks[j] covering masks[i]."""
        if self.kind == "powerset":
            out = []
            bits = len(self.space)
            for mask in self.masks:
                for b in range(bits):
                    if not mask >> b & 1:
                        out.append((self._index[mask], self._index[mask | (1 << b)]))
            return sorted(out)
        out = []
        for i, small in enumerate(self.masks):
            parents: list[int] = []
            for j, big in enumerate(self.masks):
                if small == big or small & ~big != 0:
                    continue
                if any(p & ~big == 0 for p in parents):
                    continue
                parents = [p for p in parents if big & ~p != 0]
                parents.append(big)
            out.extend((i, self._index[p]) for p in parents)
        return sorted(out)

    def meet_table(self, cap: int = 128) -> list[list[int]]:
        if len(self.masks) > cap:
            raise CapExceeded("meet table", len(self.masks), cap)
        return [[self.meet(i, j) for j in range(len(self.masks))] for i in range(len(self.masks))]

    def join_table(self, cap: int = 128) -> list[list[int]]:
        if len(self.masks) > cap:
            raise CapExceeded("join table", len(self.masks), cap)
        return [[self.join(i, j) for j in range(len(self.masks))] for i in range(len(self.masks))]

    def defining_system(self, i: int) -> EquationSystem:
        """A finite system whose solution set is exactly the i-th closed set."""
        mask = self.masks[i]
        if mask == self.full_mask:
            return EquationSystem(self.vars, ())
        if self.kind == "powerset":
            wit = self._witness
            zero = wit.zero_term(self.vars)
            if mask == 0:
                return EquationSystem(self.vars, (Equation(wit.one_term(self.vars), zero),))
            eqs = [
                Equation(wit.point_term(self.vars, v), zero)
                for j, v in enumerate(self.space)
                if not mask >> j & 1
            ]
            return EquationSystem(self.vars, tuple(eqs))
        chosen: list[Equation] = []
        cur = self.full_mask
        for em in sorted(self._emasks):
            if mask & ~em == 0 and cur & em != cur:
                chosen.append(self._emasks[em])
                cur &= em
                if cur == mask:
                    break
        if cur != mask:
            raise AssertionError("closed mask not reachable from agreement masks")
        return EquationSystem(self.vars, tuple(chosen))


def lattice(vars: tuple[str, ...], algebra: FiniteAlgebra,
            point_cap: int = DEFAULT_LATTICE_POINT_CAP,
            clone_cap: int = DEFAULT_CLONE_CAP) -> AlgebraicSetLattice:
    """All subsets of H^X fixed under double closure.

    Two exact routes: an interpolation witness proves every subset is a
    solution set (full powerset); otherwise the term-function clone is
    enumerated and closed sets are the intersections of single-equation
    agreement masks.
    """
    if not vars:
        raise CapExceeded("lattice variables", 0, 1)
    m = algebra.size ** len(vars)
    if m > point_cap:
        raise CapExceeded("lattice subset scan", 2**m, 2**point_cap)
    wit = interpolation_witness(algebra, need_conj=len(vars) >= 2)
    if wit is not None:
        return AlgebraicSetLattice(vars, algebra, list(range(1 << m)), "powerset", witness=wit)
    cl = generate_clone(vars, algebra, clone_cap)
    emasks = agreement_masks(cl)
    masks = intersection_closure(emasks.keys(), (1 << m) - 1)
    return AlgebraicSetLattice(vars, algebra, masks, "clone", emasks=emasks)
