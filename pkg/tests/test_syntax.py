import pytest

from variadic.language import Signature, std_signature
from variadic.syntax import (
    App,
    Ellipsis,
    Eq,
    Exists,
    Forall,
    IllFormed,
    NaryEllipsis,
    Numeral,
    Var,
    VarApp,
    check_term,
    complexity,
    free_vars,
    free_vars_formula,
)

x, y, z = Var("x"), Var("y"), Var("z")


def mul(a, b):
    return App("*", (a, b))


def test_free_vars_examples():
    assert free_vars(x) == {"x"}
    assert free_vars(Ellipsis("S", mul(x, y), "x", z)) == {"y", "z"}
    assert free_vars(Numeral(7)) == set()


def test_free_vars_nary():
    t = NaryEllipsis("tau", (y,), mul(x, z), "x", x)
    assert free_vars(t) == {"x", "y", "z"}


def test_free_vars_formula_examples():
    assert free_vars_formula(Eq(x, y)) == {"x", "y"}
    assert free_vars_formula(Exists("x", Eq(x, y))) == {"y"}
    # the bound occurrence of x is free in the ellipsis term, then the quantifier binds it
    phi = Forall("x", Eq(Ellipsis("S", x, "x", x), z))
    assert free_vars_formula(phi) == {"z"}
    assert free_vars(Ellipsis("S", x, "x", x)) == {"x"}


def test_complexity_examples():
    assert complexity(Numeral(100)) == 1
    assert complexity(App("+", (x, Numeral(1)))) == 3
    assert complexity(Ellipsis("S", x, "x", Numeral(5))) == 3


def test_complexity_numeral_magnitude_is_irrelevant():
    assert complexity(Numeral(10**100)) == 1


def test_numerals_are_naturals():
    with pytest.raises(ValueError):
        Numeral(-1)


def test_check_term():
    sig = std_signature()
    check_term(Ellipsis("S", x, "x", y), sig)
    with pytest.raises(IllFormed):
        check_term(App("+", (x,)), sig)
    with pytest.raises(IllFormed):
        check_term(VarApp("S", ()), sig)
    with pytest.raises(IllFormed):
        check_term(App("f", (x,)), sig)
    nsig = Signature.build(nary_by_variadic_fns={"tau": 2})
    with pytest.raises(IllFormed):
        check_term(NaryEllipsis("tau", (x,), x, "x", y), nsig)


def test_terms_are_hashable_values():
    a = Ellipsis("S", mul(x, x), "x", Numeral(10))
    b = Ellipsis("S", mul(x, x), "x", Numeral(10))
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
