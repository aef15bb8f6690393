"""Term-function clones over finite point grids, with witness terms.

A term in variables X induces a function H^X -> H; the set of all such
functions is the subalgebra of H^(H^X) generated by the coordinate
projections and the nullary constants.  Lattices of algebraic sets are
computed from these clones: every algebraic set is an intersection of
single-equation solution sets, and those are exactly the agreement masks of
clone pairs.

For algebras whose clone is too large to enumerate, a constructive
interpolation witness (per-element indicator functions plus a conjunction
pattern) proves that *every* subset of the point grid is a solution set, so
the closure system is the full powerset.  Both routes are exact; nothing is
approximated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebras import FiniteAlgebra
from .errors import CapExceeded
from .terms import App, Equation, Term, Var, substitute

__all__ = [
    "FunctionClone",
    "generate_clone",
    "InterpolationWitness",
    "interpolation_witness",
    "agreement_masks",
    "intersection_closure",
    "DEFAULT_CLONE_CAP",
]

DEFAULT_CLONE_CAP = 4096


def point_grid(vars: tuple[str, ...], algebra: FiniteAlgebra) -> np.ndarray:
    """Lexicographic assignment grid of shape (|H|^|X|, |X|)."""
    rows = list(itertools.product(range(algebra.size), repeat=len(vars)))
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), len(vars))


@dataclass
class FunctionClone:
    """All term functions on a grid, one witness term per function."""

    vars: tuple[str, ...]
    algebra: FiniteAlgebra
    grid: np.ndarray
    columns: np.ndarray  # (N, m)
    terms: list[Term]

    def __len__(self) -> int:
        return len(self.terms)


def _generate_columns(seeds: list[tuple[np.ndarray, Term]], algebra: FiniteAlgebra,
                      cap: int, what: str) -> tuple[list[np.ndarray], list[Term]]:
    n = algebra.size
    cols: list[np.ndarray] = []
    terms: list[Term] = []
    index: dict[bytes, int] = {}

    def add(col: np.ndarray, term: Term) -> None:
        key = col.tobytes()
        if key in index:
            return
        if len(cols) >= cap:
            raise CapExceeded(what, len(cols) + 1, cap)
        index[key] = len(cols)
        cols.append(col)
        terms.append(term)

    for col, term in seeds:
        add(np.asarray(col, dtype=np.int64), term)
    if not cols:
        return cols, terms

    ops = [s for s in algebra.signature.symbols if s.arity >= 1]
    t = 0
    while t < len(cols):
        ct = cols[t]
        for sym in ops:
            tbl = algebra.np_table(sym.name)
            if sym.arity == 1:
                add(tbl[ct], App(sym.name, (terms[t],)))
            elif sym.arity == 2:
                block = np.stack(cols[: t + 1])
                for row, res in enumerate(tbl[ct * n + block]):
                    add(res, App(sym.name, (terms[t], terms[row])))
                for row, res in enumerate(tbl[block * n + ct]):
                    if row < t:
                        add(res, App(sym.name, (terms[row], terms[t])))
            else:
                for combo in itertools.product(range(t + 1), repeat=sym.arity):
                    if max(combo) != t:
                        continue
                    idx = cols[combo[0]].copy()
                    for j in combo[1:]:
                        idx = idx * n + cols[j]
                    add(tbl[idx], App(sym.name, tuple(terms[j] for j in combo)))
        t += 1
    return cols, terms


def generate_clone(vars: tuple[str, ...], algebra: FiniteAlgebra,
                   cap: int = DEFAULT_CLONE_CAP) -> FunctionClone:
    """Exhaustively generate the term functions H^X -> H (raises CapExceeded)."""
    grid = point_grid(vars, algebra)
    m = grid.shape[0]
    seeds: list[tuple[np.ndarray, Term]] = []
    for j, v in enumerate(vars):
        seeds.append((grid[:, j], Var(v)))
    for sym in algebra.signature.constants:
        seeds.append((np.full(m, algebra.tables[sym.name][0], dtype=np.int64), App(sym.name, ())))
    cols, terms = _generate_columns(seeds, algebra, cap, "clone generation")
    columns = np.stack(cols) if cols else np.zeros((0, m), dtype=np.int64)
    return FunctionClone(vars, algebra, grid, columns, terms)


# ---------------------------------------------------------------------------
# interpolation witnesses (the powerset route)

_U = "_z"
_U1, _U2 = "_z1", "_z2"


@dataclass
class InterpolationWitness:
    """Terms proving every subset of H^X is a solution set.

    ``indicator[c]`` is a unary term u (in the placeholder variable) with
    u(c) = 1 and u(e) = 0 for e != c; ``conj`` is a binary term with the
    AND pattern on {0,1} inputs; ``zero``/``one`` are constant terms.  For a
    point p, the product of indicators composed through ``conj`` is 1 at p
    and 0 elsewhere, so {that term = zero} cuts out exactly H^X minus p.
    """

    algebra: FiniteAlgebra
    indicator: dict[int, Term]
    conj: Term | None  # None is fine when |X| = 1
    zero: Term
    one: Term

    def indicator_term(self, var: str, value: int) -> Term:
        return substitute(self.indicator[value], {_U: Var(var)})

    def point_term(self, vars: tuple[str, ...], values: tuple[int, ...]) -> Term:
        """A term equal to 1 at the given point and 0 at every other point."""
        t = self.indicator_term(vars[0], values[0])
        for var, val in zip(vars[1:], values[1:]):
            if self.conj is None:
                raise CapExceeded("interpolation", 2, 1)
            t = substitute(self.conj, {_U1: t, _U2: self.indicator_term(var, val)})
        return t

    def zero_term(self, vars: tuple[str, ...]) -> Term:
        return substitute(self.zero, {_U: Var(vars[0])})

    def one_term(self, vars: tuple[str, ...]) -> Term:
        return substitute(self.one, {_U: Var(vars[0])})


def _unary_functions(algebra: FiniteAlgebra, cap: int) -> tuple[list[np.ndarray], list[Term]]:
    ident = np.arange(algebra.size, dtype=np.int64)
    seeds: list[tuple[np.ndarray, Term]] = [(ident, Var(_U))]
    for sym in algebra.signature.constants:
        seeds.append((np.full(algebra.size, algebra.tables[sym.name][0], dtype=np.int64), App(sym.name, ())))
    return _generate_columns(seeds, algebra, cap, "unary clone generation")


def interpolation_witness(algebra: FiniteAlgebra, need_conj: bool = True) -> InterpolationWitness | None:
    """Search for indicator/conjunction witness terms; None if absent.

    The search is exact on its own terms: any returned witness is verified
    by construction (the generated columns *are* the functions).  Absence of
    a witness does not claim the clone is small; callers fall back to
    exhaustive clone generation.
    """
    if algebra.size < 2:
        return None
    cap = min(algebra.size**algebra.size, 65536)
    try:
        cols, terms = _unary_functions(algebra, cap)
    except CapExceeded:
        return None
    table = {tuple(int(x) for x in c): t for c, t in zip(cols, terms)}
    indicator: dict[int, Term] = {}
    for c in range(algebra.size):
        want = tuple(1 if e == c else 0 for e in range(algebra.size))
        if want not in table:
            return None
        indicator[c] = table[want]
    zero = table.get(tuple([0] * algebra.size))
    one = table.get(tuple([1] * algebra.size))
    if zero is None or one is None:
        return None

    conj = None
    if need_conj:
        # functions of two {0,1}-valued arguments, restricted to that grid
        grid = np.asarray([(0, 0), (0, 1), (1, 0), (1, 1)], dtype=np.int64)
        seeds = [(grid[:, 0], Var(_U1)), (grid[:, 1], Var(_U2))]
        for sym in algebra.signature.constants:
            seeds.append((np.full(4, algebra.tables[sym.name][0], dtype=np.int64), App(sym.name, ())))
        try:
            cols2, terms2 = _generate_columns(seeds, algebra, min(algebra.size**4, 65536), "conjunction search")
        except CapExceeded:
            return None
        for c, t in zip(cols2, terms2):
            if tuple(int(x) for x in c) == (0, 0, 0, 1):
                conj = t
                break
        if conj is None:
            return None
    return InterpolationWitness(algebra, indicator, conj, zero, one)


# ---------------------------------------------------------------------------
# agreement masks and intersection closure

def agreement_masks(clone: FunctionClone) -> dict[int, Equation]:
    """Distinct single-equation solution masks with one witness equation each.

    Bit i of a mask corresponds to row i of the grid.  The full mask (from
    trivial equations) is included.
    """
    n_cols, m = clone.columns.shape
    weights = 1 << np.arange(m, dtype=np.uint64)
    out: dict[int, Equation] = {}
    for i in range(n_cols):
        eq = (clone.columns[i + 1 :] == clone.columns[i]).astype(np.uint64)
        masks = eq @ weights
        for off, mask in enumerate(masks):
            mask = int(mask)
            if mask not in out:
                out[mask] = Equation(clone.terms[i], clone.terms[i + 1 + off])
    return out


def intersection_closure(masks, full_mask: int) -> list[int]:
    """All intersections of the given masks together with the full mask."""
    closed = {full_mask}
    for e in sorted(masks):
        closed |= {e & c for c in closed}
    return sorted(closed)
