import pytest

from variadic import props
from variadic.parser import parse_term
from variadic.props import formula_shrinks, run_props, shrink, term_shrinks
from variadic.syntax import Ellipsis, Numeral, VarApp, complexity


@pytest.mark.parametrize("suite", list(props.SUITES))
def test_suites_pass_small(suite):
    report = run_props(suite, 60, seed=5)
    assert report.ok, report.lines()
    assert report.cases >= 60


def test_reports_are_deterministic():
    a = run_props("subst-lemma", 200, seed=11)
    b = run_props("subst-lemma", 200, seed=11)
    assert a.lines()[:-1] == b.lines()[:-1]


def test_commute_counts_only_accepted_cases():
    report = run_props("commute", 100, seed=2)
    assert report.held == 100
    assert report.cases >= 100


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_props("nope", 1)


def test_shrink_finds_minimal_term():
    t = parse_term("+(*(S(+(x, 3)(0) ...x +(x, 3)(5)), 2), d(y, 1))")
    small = shrink(t, term_shrinks, _contains_ellipsis)
    assert isinstance(small, Ellipsis)
    assert small == Ellipsis("S", Numeral(0), "x", Numeral(0))


def _contains_ellipsis(t):
    if isinstance(t, Ellipsis):
        return True
    return any(_contains_ellipsis(k) for k in props._children(t))


def test_shrinks_are_smaller():
    t = parse_term("G(*(x, y)(0) ...x *(x, y)(+(z, 1)))")
    for s in term_shrinks(t):
        assert complexity(s) <= complexity(t)
    assert VarApp("G", (parse_term("*(x, y)"),)) in list(term_shrinks(t))


def test_shrink_reports_counterexample_for_injected_bug(monkeypatch):
    """Break the semantic interpreter on sums and check the report minimizes the term."""
    real = props.interp_semantic

    def broken(t, m, s, budget=None):
        v = real(t, m, s)
        return v + 1 if isinstance(t, Ellipsis) and t.fn == "S" else v

    monkeypatch.setattr(props, "interp_semantic", broken)
    report = run_props("interp-equiv", 300, seed=1)
    assert not report.ok
    cx = report.failures[0].counterexample
    assert cx.startswith("S(0(0) ...x 0(0))")


def test_formula_shrinks_keep_guards():
    from variadic.parser import parse_formula

    phi = parse_formula("exists x. x <= y & (x = 1 & y = 2)")
    shapes = list(formula_shrinks(phi))
    assert parse_formula("exists x. x <= y & x = 1") in shapes
    assert parse_formula("x = 1 & y = 2") in shapes
