import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uag.errors import SignatureError, TermSyntaxError
from uag.standard import GROUP_SIGNATURE as SIG
from uag.terms import (
    App,
    Equation,
    EquationSystem,
    OpSymbol,
    Signature,
    Var,
    enumerate_terms,
    equation_pairs,
    free_vars,
    parse_equation,
    parse_term,
    print_term,
    substitute,
    term_depth,
    term_size,
)

X = ("x", "y")


def test_parse_infix():
    assert parse_term("x+y", SIG, X) == App("+", (Var("x"), Var("y")))


def test_parse_nested_unary():
    assert parse_term("-(x+0)", SIG, X) == App("-", (App("+", (Var("x"), App("0", ()))),))


def test_parse_unbalanced_reports_column():
    with pytest.raises(TermSyntaxError) as err:
        parse_term("f(x", Signature((OpSymbol("f", 1),)), X)
    assert err.value.column == 4


def test_parse_unknown_symbol():
    with pytest.raises(TermSyntaxError):
        parse_term("x$y", SIG, X)


def test_parse_unknown_variable():
    with pytest.raises(TermSyntaxError):
        parse_term("x+z", SIG, X)


def test_parse_arity_mismatch():
    sig = Signature((OpSymbol("f", 2),))
    with pytest.raises(TermSyntaxError):
        parse_term("f(x)", sig, X)


def test_left_associative_parsing():
    t = parse_term("x+y+x", SIG, X)
    assert t == App("+", (App("+", (Var("x"), Var("y"))), Var("x")))


def test_print_right_nesting_needs_parens():
    t = App("+", (Var("x"), App("+", (Var("y"), Var("x")))))
    s = print_term(t, SIG)
    assert s == "x+(y+x)"
    assert parse_term(s, SIG, X) == t


def test_infix_function_form_allowed():
    assert parse_term("+(x,y)", SIG, X) == parse_term("x+y", SIG, X)


def test_equation_parse_and_triviality():
    eq = parse_equation("x = x", SIG, X)
    assert eq.is_trivial()
    with pytest.raises(TermSyntaxError):
        parse_equation("x + y", SIG, X)


def test_system_deduplicates_but_keeps_order():
    a = parse_equation("x+y=0", SIG, X)
    b = parse_equation("x=y", SIG, X)
    sys_ = EquationSystem(X, (a, b, a))
    assert sys_.equations == (a, b)


def test_depth_size_and_vars():
    t = parse_term("-(x+0)", SIG, X)
    assert term_depth(t) == 2
    assert term_size(t) == 4
    assert free_vars(t) == {"x"}


def test_substitute_keeps_missing_fixed():
    t = parse_term("x+y", SIG, X)
    s = substitute(t, {"x": App("0", ())})
    assert print_term(s, SIG) == "0+y"


def test_enumerate_terms_order_and_window():
    terms = enumerate_terms(SIG, ("x",), 1)
    printed = [print_term(t, SIG) for t in terms]
    assert printed[:2] == ["0", "x"]
    assert printed == sorted(printed[:2]) + sorted(printed[2:])
    pairs = equation_pairs(terms, 3)
    assert [(p.lhs, p.rhs) for p in pairs] == [
        (terms[0], terms[1]),
        (terms[0], terms[2]),
        (terms[1], terms[2]),
    ]


def _term_strategy(depth):
    base = st.sampled_from([Var("x"), Var("y"), App("0", ())])
    if depth == 0:
        return base
    sub = _term_strategy(depth - 1)
    return st.one_of(
        base,
        st.builds(lambda a: App("-", (a,)), sub),
        st.builds(lambda a, b: App("+", (a, b)), sub, sub),
    )


@settings(max_examples=300, deadline=None)
@given(_term_strategy(4))
def test_print_parse_roundtrip(t):
    assert parse_term(print_term(t, SIG), SIG, X) == t


def test_validate_rejects_bad_terms():
    sys_ = EquationSystem(("x",), (Equation(Var("x"), Var("y")),))
    with pytest.raises(SignatureError):
        sys_.validate(SIG)
