import itertools

import numpy as np
import pytest

from uag.algebras import Point, enumerate_points, eval_term
from uag.clone import (
    agreement_masks,
    generate_clone,
    interpolation_witness,
    intersection_closure,
)
from uag.errors import CapExceeded
from uag.geometry import term_universe, UniverseBound
from uag.standard import cyclic_group, semilattice2

X = ("x", "y")


def test_clone_columns_are_term_functions(z4):
    cl = generate_clone(X, z4, cap=1000)
    pts = list(enumerate_points(X, z4))
    for col, term in zip(cl.columns, cl.terms):
        vals = [eval_term(term, p, z4) for p in pts]
        assert vals == [int(v) for v in col]


def test_clone_exhausts_deep_term_functions(z3):
    """Every function induced by a depth-4 term already appears in the clone."""
    cl = generate_clone(X, z3, cap=1000)
    known = {tuple(int(v) for v in c) for c in cl.columns}
    pts = list(enumerate_points(X, z3))
    terms = term_universe(z3, X, UniverseBound(3, 2, 10**9))
    for t in terms[::7]:
        vals = tuple(eval_term(t, p, z3) for p in pts)
        assert vals in known


def test_clone_sizes_small_fixtures(z2, sl2):
    assert len(generate_clone(("x",), z2, cap=100)) == 2  # {x, 0}
    assert len(generate_clone(X, sl2, cap=100)) == 3  # {x, y, x*y}
    assert len(generate_clone(X, z2, cap=100)) == 8  # {ax+by+c}? no c: plus 0 -> {0,x,y,x+y} and negations coincide


def test_clone_cap(f4self):
    with pytest.raises(CapExceeded):
        generate_clone(X, f4self, cap=500)


def test_interpolation_witness_f4(f4self):
    wit = interpolation_witness(f4self)
    assert wit is not None
    pts = list(enumerate_points(X, f4self))
    for p in pts[:6]:
        t = wit.point_term(X, p.values)
        vals = [eval_term(t, q, f4self) for q in pts]
        want = [1 if q.values == p.values else 0 for q in pts]
        assert vals == want
    zero = wit.zero_term(X)
    assert all(eval_term(zero, q, f4self) == 0 for q in pts)
    one = wit.one_term(X)
    assert all(eval_term(one, q, f4self) == 1 for q in pts)


def test_interpolation_witness_absent_for_groups(z2, z4, sl2, f2eps):
    for a in (z2, z4, sl2, f2eps):
        assert interpolation_witness(a) is None


def test_agreement_masks_are_solution_masks(z4):
    cl = generate_clone(X, z4, cap=1000)
    masks = agreement_masks(cl)
    pts = list(enumerate_points(X, z4))
    for mask, eq in list(masks.items())[:40]:
        want = 0
        for i, p in enumerate(pts):
            if eval_term(eq.lhs, p, z4) == eval_term(eq.rhs, p, z4):
                want |= 1 << i
        assert want == mask


def test_intersection_closure_is_meet_closed():
    masks = [0b1110, 0b0111, 0b1011]
    closed = intersection_closure(masks, 0b1111)
    for a, b in itertools.combinations(closed, 2):
        assert a & b in closed
    assert 0b1111 in closed
