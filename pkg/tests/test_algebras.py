import itertools

import pytest

from uag.algebras import (
    Point,
    check_identity,
    check_quasiidentity,
    enumerate_homs,
    enumerate_points,
    eval_term,
    is_homomorphism,
    power_algebra,
    product_algebra,
)
from uag.errors import CapExceeded
from uag.standard import GROUP_SIGNATURE as SIG
from uag.terms import EquationSystem, parse_equation, parse_term

X = ("x", "y")


def test_eval_addition_z2(z2):
    t = parse_term("x+y", SIG, X)
    assert eval_term(t, Point(X, (1, 1)), z2) == 0


def test_eval_variable_case(z4):
    t = parse_term("x", SIG, X)
    for a in range(4):
        assert eval_term(t, Point(X, (a, 0)), z4) == a


def test_eval_constant_ignores_point(z4):
    t = parse_term("0", SIG, X)
    for vals in itertools.product(range(4), repeat=2):
        assert eval_term(t, Point(X, vals), z4) == 0


def test_enumerate_points_counts(z2, z3):
    assert enumerate_points(("x",), z2).as_lists() == [[0], [1]]
    assert len(enumerate_points(X, z2)) == 4
    assert len(enumerate_points(("x", "y", "z"), z3)) == 27


def test_enumerate_points_cap(z4):
    with pytest.raises(CapExceeded):
        enumerate_points(("a", "b", "c"), z4, cap=10)


def test_identity_hom(z2):
    assert is_homomorphism([0, 1], z2, z2)


def test_mod2_is_homomorphism(z4, z2):
    # oracle: check all 16 sums, negation and the constant directly
    f = [0, 1, 0, 1]
    for a, b in itertools.product(range(4), repeat=2):
        assert f[(a + b) % 4] == (f[a] + f[b]) % 2
    assert is_homomorphism(f, z4, z2)


def test_swap_violates_constant(z2):
    assert not is_homomorphism([1, 0], z2, z2)


def test_enumerate_homs_z2_z2(z2):
    assert enumerate_homs(z2, z2) == [(0, 0), (0, 1)]


def test_enumerate_homs_z4_z2(z4, z2):
    # oracle: filter all 16 maps by the homomorphism predicate
    brute = [
        f
        for f in itertools.product(range(2), repeat=4)
        if is_homomorphism(list(f), z4, z2)
    ]
    assert enumerate_homs(z4, z2) == brute == [(0, 0, 0, 0), (0, 1, 0, 1)]


def test_enumerate_homs_z3_z2(z3, z2):
    assert enumerate_homs(z3, z2) == [(0, 0, 0)]


def test_homs_all_pass_and_none_missed(z4, k4):
    homs = set(enumerate_homs(z4, k4))
    for f in itertools.product(range(4), repeat=4):
        assert (f in homs) == is_homomorphism(list(f), z4, k4)


def test_check_identity_examples(z2, z4):
    comm = parse_equation("x+y=y+x", SIG, X)
    assert check_identity(z4, comm)
    twice = parse_equation("x+x=0", SIG, ("x",))
    assert check_identity(z2, twice)
    assert not check_identity(z4, twice)
    assert check_identity(z4, parse_equation("x=x", SIG, ("x",)))


def test_check_quasiidentity_examples(z2, z4):
    prem = EquationSystem(X, (parse_equation("x+y=0", SIG, X),))
    concl = parse_equation("x=y", SIG, X)
    assert check_quasiidentity(z2, prem, concl)
    assert not check_quasiidentity(z4, prem, concl)
    empty = EquationSystem(X, ())
    assert check_quasiidentity(z4, empty, parse_equation("x=x", SIG, X))


def test_quasiidentity_with_empty_premises_is_identity(z4):
    eq = parse_equation("x+y=y+x", SIG, X)
    empty = EquationSystem(X, ())
    assert check_quasiidentity(z4, empty, eq) == check_identity(z4, eq, X)
    eq2 = parse_equation("x+x=0", SIG, ("x",))
    empty1 = EquationSystem(("x",), ())
    assert check_quasiidentity(z4, empty1, eq2) == check_identity(z4, eq2, ("x",))


def test_product_and_power(z2):
    k4 = product_algebra(z2, z2)
    assert k4.size == 4
    assert k4.apply("+", (1, 2)) == 3  # (0,1)+(1,0) = (1,1)
    assert power_algebra(z2, 3).size == 8


def test_structural_equality_ignores_name(z2):
    other = product_algebra(z2, z2, "anything")
    assert other == product_algebra(z2, z2, "different")
    assert z2 != other
