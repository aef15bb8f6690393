"""Finite algebras as explicit operation tables, points, and evaluation.

Carrier elements are the integers 0..n-1.  Tables are flat row-major tuples
(index of ``f(a_1,..,a_k)`` is the mixed-radix number ``a_1..a_k`` base n),
which keeps algebras hashable; numpy views are attached lazily for the
vectorised evaluation paths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, SignatureError
from .terms import App, Equation, EquationSystem, Signature, Term, Var, free_vars

__all__ = [
    "FiniteAlgebra",
    "Point",
    "PointSet",
    "eval_term",
    "eval_term_rows",
    "enumerate_points",
    "is_homomorphism",
    "enumerate_homs",
    "check_identity",
    "check_quasiidentity",
    "product_algebra",
    "power_algebra",
    "solution_points",
    "DEFAULT_ASSIGNMENT_CAP",
]

DEFAULT_ASSIGNMENT_CAP = 10**6


class FiniteAlgebra:
    """A finite algebra: named carrier {0..size-1} with one table per symbol.

    Equality and hashing are structural (signature + tables); the name is a
    label only.
    """

    def __init__(self, name: str, size: int, signature: Signature, tables: dict[str, tuple[int, ...]]):
        if size <= 0:
            raise SignatureError("carrier must be nonempty")
        for sym in signature.symbols:
            table = tables.get(sym.name)
            if table is None:
                raise SignatureError(f"missing table for {sym.name!r}")
            if len(table) != size**sym.arity:
                raise SignatureError(
                    f"table for {sym.name!r} has {len(table)} entries, expected {size**sym.arity}"
                )
            if any(not (0 <= v < size) for v in table):
                raise SignatureError(f"table for {sym.name!r} has out-of-range entries")
        extra = set(tables) - {s.name for s in signature.symbols}
        if extra:
            raise SignatureError(f"tables for undeclared symbols {sorted(extra)}")
        self.name = name
        self.size = size
        self.signature = signature
        self.tables = {k: tuple(v) for k, v in tables.items()}
        self._np_tables: dict[str, np.ndarray] = {}
        self._hash = hash((size, signature, tuple(sorted(self.tables.items()))))

    def apply(self, op: str, args: tuple[int, ...]) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.tables[op][idx]

    def np_table(self, op: str) -> np.ndarray:
        t = self._np_tables.get(op)
        if t is None:
            t = np.asarray(self.tables[op], dtype=np.int64)
            self._np_tables[op] = t
        return t

    def carrier(self) -> range:
        return range(self.size)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteAlgebra)
            and self.size == other.size
            and self.signature == other.signature
            and self.tables == other.tables
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name!r}, size={self.size})"


@dataclass(frozen=True)
class Point:
    """A variable assignment X -> carrier(H); the coordinates of mu."""

    vars: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.vars) != len(self.values):
            raise SignatureError("assignment must be total on X")

    def __getitem__(self, var: str) -> int:
        return self.values[self.vars.index(var)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.vars, self.values))


@dataclass(frozen=True)
class PointSet:
    """A finite set of points over one (X, H), kept lexicographically sorted."""

    vars: tuple[str, ...]
    points: tuple[Point, ...]

    def __post_init__(self):
        for p in self.points:
            if p.vars != self.vars:
                raise SignatureError("points over different variable sets")
        ordered = tuple(sorted(set(self.points), key=lambda p: p.values))
        object.__setattr__(self, "points", ordered)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p: Point) -> bool:
        return p in set(self.points)

    def values_array(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, len(self.vars)), dtype=np.int64)
        return np.asarray([p.values for p in self.points], dtype=np.int64)

    def as_lists(self) -> list[list[int]]:
        return [list(p.values) for p in self.points]


def eval_term(t: Term, p: Point, algebra: FiniteAlgebra) -> int:
    if isinstance(t, Var):
        return p[t.name]
    return algebra.apply(t.op, tuple(eval_term(a, p, algebra) for a in t.args))


def eval_term_rows(t: Term, values: np.ndarray, vars: tuple[str, ...], algebra: FiniteAlgebra) -> np.ndarray:
    """Evaluate `t` at every row of `values` (shape (m, |X|)) at once."""
    if isinstance(t, Var):
        return values[:, vars.index(t.name)]
    if not t.args:
        return np.full(values.shape[0], algebra.tables[t.op][0], dtype=np.int64)
    idx = eval_term_rows(t.args[0], values, vars, algebra)
    for a in t.args[1:]:
        idx = idx * algebra.size + eval_term_rows(a, values, vars, algebra)
    return algebra.np_table(t.op)[idx]


def enumerate_points(vars: tuple[str, ...], algebra: FiniteAlgebra, cap: int = DEFAULT_ASSIGNMENT_CAP) -> PointSet:
    """All |H|^|X| assignments in lexicographic order."""
    count = algebra.size ** len(vars)
    if count > cap:
        raise CapExceeded("point enumeration", count, cap)
    pts = tuple(Point(vars, vals) for vals in itertools.product(algebra.carrier(), repeat=len(vars)))
    return PointSet(vars, pts)


def solution_points(system: EquationSystem, algebra: FiniteAlgebra, cap: int = DEFAULT_ASSIGNMENT_CAP) -> PointSet:
    """Points satisfying every equation of the system (the raw point set)."""
    count = algebra.size ** len(system.vars)
    if count > cap:
        raise CapExceeded("point enumeration", count, cap)
    if count == 0:
        return PointSet(system.vars, ())
    grid = np.asarray(
        list(itertools.product(algebra.carrier(), repeat=len(system.vars))), dtype=np.int64
    ).reshape(count, len(system.vars))
    keep = np.ones(count, dtype=bool)
    for eq in system.equations:
        lhs = eval_term_rows(eq.lhs, grid, system.vars, algebra)
        rhs = eval_term_rows(eq.rhs, grid, system.vars, algebra)
        keep &= lhs == rhs
    pts = tuple(Point(system.vars, tuple(int(v) for v in row)) for row in grid[keep])
    return PointSet(system.vars, pts)


def is_homomorphism(f: dict[int, int] | list[int], a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    if a.signature != b.signature:
        raise SignatureError("homomorphisms need a common signature")
    fm = [f[i] for i in range(a.size)]
    if any(not (0 <= v < b.size) for v in fm):
        return False
    for sym in a.signature.symbols:
        for args in itertools.product(range(a.size), repeat=sym.arity):
            if fm[a.apply(sym.name, args)] != b.apply(sym.name, tuple(fm[x] for x in args)):
                return False
    return True


def enumerate_homs(a: FiniteAlgebra, b: FiniteAlgebra, cap: int = DEFAULT_ASSIGNMENT_CAP) -> list[tuple[int, ...]]:
    """All homomorphisms a -> b as image tuples, lexicographically ordered.

    Backtracking over f(0), f(1), ...; a constraint is checked as soon as
    the images of its argument tuple and of its value are all decided, so
    images of generated elements are pruned immediately.  The cap bounds
    visited search nodes rather than the closed-form |B|^|A|.
    """
    if a.signature != b.signature:
        raise SignatureError("homomorphisms need a common signature")

    # constraints indexed by the last element (in assignment order) they touch
    by_last: dict[int, list[tuple[str, tuple[int, ...], int]]] = {i: [] for i in range(a.size)}
    for sym in a.signature.symbols:
        for args in itertools.product(range(a.size), repeat=sym.arity):
            value = a.apply(sym.name, args)
            last = max(args + (value,)) if args else value
            by_last[last].append((sym.name, args, value))

    out: list[tuple[int, ...]] = []
    image = [0] * a.size
    nodes = 0

    def extend(k: int):
        nonlocal nodes
        if k == a.size:
            out.append(tuple(image))
            return
        for v in range(b.size):
            nodes += 1
            if nodes > cap:
                raise CapExceeded("homomorphism search", nodes, cap)
            image[k] = v
            ok = True
            for op, args, value in by_last[k]:
                if image[value] != b.apply(op, tuple(image[x] for x in args)):
                    ok = False
                    break
            if ok:
                extend(k + 1)

    extend(0)
    return out


def check_identity(algebra: FiniteAlgebra, eq: Equation, vars: tuple[str, ...] | None = None,
                   cap: int = DEFAULT_ASSIGNMENT_CAP) -> bool:
    """True iff the equation holds under every assignment of its variables."""
    if vars is None:
        vars = tuple(sorted(free_vars(eq.lhs) | free_vars(eq.rhs)))
    count = algebra.size ** len(vars)
    if count > cap:
        raise CapExceeded("identity check", count, cap)
    for vals in itertools.product(algebra.carrier(), repeat=len(vars)):
        p = Point(vars, vals)
        if eval_term(eq.lhs, p, algebra) != eval_term(eq.rhs, p, algebra):
            return False
    return True


def check_quasiidentity(algebra: FiniteAlgebra, premises: EquationSystem, conclusion: Equation,
                        cap: int = DEFAULT_ASSIGNMENT_CAP) -> bool:
    """True iff every assignment satisfying all premises satisfies the conclusion."""
    vars = premises.vars
    extra = (free_vars(conclusion.lhs) | free_vars(conclusion.rhs)) - set(vars)
    if extra:
        vars = vars + tuple(sorted(extra))
    count = algebra.size ** len(vars)
    if count > cap:
        raise CapExceeded("quasiidentity check", count, cap)
    for vals in itertools.product(algebra.carrier(), repeat=len(vars)):
        p = Point(vars, vals)
        if all(eval_term(e.lhs, p, algebra) == eval_term(e.rhs, p, algebra) for e in premises.equations):
            if eval_term(conclusion.lhs, p, algebra) != eval_term(conclusion.rhs, p, algebra):
                return False
    return True


def product_algebra(a: FiniteAlgebra, b: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Direct product; carrier index of (x, y) is x*|B| + y."""
    if a.signature != b.signature:
        raise SignatureError("product needs a common signature")
    size = a.size * b.size
    tables = {}
    for sym in a.signature.symbols:
        table = []
        for args in itertools.product(range(size), repeat=sym.arity):
            xs = tuple(v // b.size for v in args)
            ys = tuple(v % b.size for v in args)
            table.append(a.apply(sym.name, xs) * b.size + b.apply(sym.name, ys))
        tables[sym.name] = tuple(table)
    return FiniteAlgebra(name or f"{a.name}x{b.name}", size, a.signature, tables)


def power_algebra(a: FiniteAlgebra, k: int, name: str | None = None) -> FiniteAlgebra:
    if k < 1:
        raise SignatureError("power must be >= 1")
    out = a
    for _ in range(k - 1):
        out = product_algebra(out, a)
    out.name = name or f"{a.name}^{k}"
    return out
