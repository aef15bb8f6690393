import itertools
import random

from uag.algebras import Point, PointSet, enumerate_points, eval_term
from uag.congruences import AllPairs, ClosureOfSystem, KernelOf, KernelOfSet, Preimage
from uag.geometry import term_universe, UniverseBound
from uag.standard import GROUP_SIGNATURE as SIG
from uag.terms import App, EquationSystem, parse_equation, parse_term

X = ("x", "y")


def test_kernel_of_point(z2):
    k = KernelOf(Point(X, (1, 1)), z2)
    assert k.decide(parse_term("x", SIG, X), parse_term("y", SIG, X))
    assert not k.decide(parse_term("x", SIG, X), parse_term("0", SIG, X))


def test_kernel_of_set_examples(z2):
    a = PointSet(X, (Point(X, (0, 0)), Point(X, (1, 1))))
    k = KernelOfSet(a, z2)
    assert k.decide(parse_term("x", SIG, X), parse_term("y", SIG, X))
    assert not k.decide(parse_term("x", SIG, X), parse_term("x+y", SIG, X))


def test_kernel_of_full_space_is_identity_check(z4):
    a = enumerate_points(X, z4)
    k = KernelOfSet(a, z4)
    assert k.decide(parse_term("x+y", SIG, X), parse_term("y+x", SIG, X))
    assert not k.decide(parse_term("x+x", SIG, X), parse_term("0", SIG, X))


def test_kernel_matches_direct_loop(z4):
    a = PointSet(X, tuple(Point(X, (v, (3 * v) % 4)) for v in range(4)))
    k = KernelOfSet(a, z4)
    terms = term_universe(z4, X, UniverseBound(2, 2, 10**9))[:25]
    for w, w2 in itertools.combinations(terms, 2):
        direct = all(eval_term(w, p, z4) == eval_term(w2, p, z4) for p in a)
        assert k.decide(w, w2) == direct


def test_empty_point_set_gives_all_pairs(z2):
    k = KernelOfSet(PointSet(X, ()), z2)
    assert k.decide(parse_term("x", SIG, X), parse_term("0", SIG, X))
    assert AllPairs().decide(parse_term("x", SIG, X), parse_term("y", SIG, X))


def test_closure_of_system_contains_generators(z4):
    t = EquationSystem(X, (parse_equation("x+y=0", SIG, X),))
    c = ClosureOfSystem(t, z4)
    for eq in t.equations:
        assert c.decide(eq.lhs, eq.rhs)
    assert not c.decide(parse_term("x", SIG, X), parse_term("y", SIG, X))


def test_preimage_decides_through_substitution(z4):
    t = EquationSystem(("x",), (parse_equation("x+x=0", SIG, ("x",)),))
    c = ClosureOfSystem(t, z4)
    s = Preimage.of({"y": parse_term("x+x", SIG, ("x",))}, c)
    # y |-> x+x: deciding (y, 0) asks whether (x+x, 0) is in the closure
    assert s.decide(parse_term("y", SIG, ("y",)), App("0", ())) == c.decide(
        parse_term("x+x", SIG, ("x",)), App("0", ())
    )


def test_congruence_laws_on_sampled_terms(z4):
    rng = random.Random(0)
    t = EquationSystem(X, (parse_equation("x+x=0", SIG, X),))
    c = ClosureOfSystem(t, z4)
    terms = term_universe(z4, X, UniverseBound(2, 2, 10**9))
    sample = rng.sample(terms, 12)
    for w in sample:
        assert c.decide(w, w)
    for w, w2 in itertools.combinations(sample, 2):
        assert c.decide(w, w2) == c.decide(w2, w)
    for w, w2, w3 in itertools.combinations(sample, 3):
        if c.decide(w, w2) and c.decide(w2, w3):
            assert c.decide(w, w3)
    for w, w2 in itertools.combinations(sample[:8], 2):
        if c.decide(w, w2):
            assert c.decide(App("-", (w,)), App("-", (w2,)))
            for other in sample[:4]:
                assert c.decide(App("+", (w, other)), App("+", (w2, other)))
