import pytest

from variadic.errors import BudgetExceeded, Undetermined
from variadic.language import Signature
from variadic.parser import parse_formula, parse_term
from variadic.semantics import (
    Assignment,
    EvalBudget,
    GeneralizedModel,
    Model,
    Verdict,
    interp,
    interp_generalized,
    interp_semantic,
    interp_syntactic,
    satisfies,
)
from variadic.syntax import Ellipsis, Exists, Forall, Numeral, Var

INTERPRETERS = [interp_syntactic, interp_semantic, interp]


@pytest.fixture(params=INTERPRETERS, ids=lambda f: f.__name__)
def ev(request, backend):
    return request.param


S0 = Assignment()


def test_sum_to_five(ev, std):
    assert ev(parse_term("S(x(0) ...x x(5))"), std, S0) == 15


def test_sum_of_squares(ev, std):
    assert ev(parse_term("S(*(x, x)(0) ...x *(x, x)(10))"), std, S0) == 385


def test_sum_to_hundred(ev, std):
    assert ev(parse_term("S(x(0) ...x x(100))"), std, S0) == 5050


def test_same_variable_bound(ev, std):
    assert ev(parse_term("S(x(0) ...x x(x))"), std, Assignment({"x": 7})) == 28


def test_variable(ev, std):
    assert ev(Var("x"), std, Assignment({"x": 9})) == 9


def test_some_nonzero(ev, std):
    assert ev(parse_term("G(d(x, 3)(0) ...x d(x, 3)(2))"), std, S0) == 0
    assert ev(parse_term("G(d(x, 3)(0) ...x d(x, 3)(5))"), std, S0) == 1


def test_standard_tables(ev, std):
    assert ev(parse_term("d(4, 4)"), std, S0) == 1
    assert ev(parse_term("d(4, 5)"), std, S0) == 0
    assert ev(parse_term("<=(5, 4)"), std, S0) == 0
    assert ev(parse_term("<=(4, 4)"), std, S0) == 1
    assert ev(parse_term("S(1, 2, 3)"), std, S0) == 6
    assert ev(parse_term("G(0, 0, 7)"), std, S0) == 1


def test_width_budget(ev, std):
    with pytest.raises(BudgetExceeded) as e:
        ev(parse_term("S(x(0) ...x x(100))"), std, S0, EvalBudget(max_ellipsis_width=100))
    assert e.value.kind == "width"
    assert ev(parse_term("S(x(0) ...x x(99))"), std, S0, EvalBudget(max_ellipsis_width=100)) == 4950


def test_step_budget(ev, std):
    with pytest.raises(BudgetExceeded) as e:
        ev(parse_term("S(x(0) ...x x(100))"), std, S0, EvalBudget(max_total_steps=50))
    assert e.value.kind == "steps"


def test_step_counts_agree(std, backend):
    t = parse_term("S(S(*(x, y)(0) ...y *(x, y)(x))(0) ...x S(*(x, y)(0) ...y *(x, y)(x))(6))")
    ok = {f.__name__: f(t, std, S0) for f in INTERPRETERS}
    assert len(set(ok.values())) == 1
    # the smallest step budget that suffices is the same for every interpreter
    needed = {}
    for f in INTERPRETERS:
        lo, hi = 1, 10_000
        while lo < hi:
            mid = (lo + hi) // 2
            try:
                f(t, std, S0, EvalBudget(max_total_steps=mid))
                hi = mid
            except BudgetExceeded:
                lo = mid + 1
        needed[f.__name__] = lo
    assert len(set(needed.values())) == 1, needed


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        EvalBudget(max_ellipsis_width=0)


def test_big_values_do_not_overflow(backend, std):
    t = parse_term("*(*(*(1000000000, 1000000000), 1000000000), S(x(0) ...x x(10)))")
    assert interp(t, std, S0) == 10**27 * 55
    assert interp_semantic(t, std, S0) == 10**27 * 55


def test_assignment_update():
    s = Assignment({"x": 1, "y": 2})
    s2 = s.update("x", 5)
    assert s2["x"] == 5 and s2["y"] == 2 and s2["w"] == 0
    assert s["x"] == 1
    assert Assignment.parse("x=3, y=5") == Assignment({"x": 3, "y": 5})
    with pytest.raises(ValueError):
        Assignment.parse("x=-1")
    with pytest.raises(ValueError):
        Assignment.parse("x3")


def test_model_coverage():
    sig = Signature.build(fixed_fns={"f": 1})
    with pytest.raises(ValueError):
        Model(sig)
    with pytest.raises(ValueError):
        Model(sig, fixed={"f": abs, "g": abs})


def test_negative_host_values_rejected(backend):
    sig = Signature.build(fixed_fns={"f": 1})
    m = Model(sig, fixed={"f": lambda a: a - 5})
    for f in INTERPRETERS:
        with pytest.raises(ValueError):
            f(parse_term("f(1)", sig), m, S0)


def test_generalized_truncation(std):
    gm = GeneralizedModel.truncation(std)
    t = parse_term("S(x(0) ...x x(5))")
    for mode in ("semantic", "syntactic"):
        assert interp_generalized(t, gm, S0, mode=mode) == 15


def test_generalized_reads_position_zero_only():
    sig = Signature.build(variadic_fns=["H"])
    gm = GeneralizedModel(sig, variadic={"H": lambda f, v: f(0) + 1})
    for bound in (0, 5, 60_000):
        t = Ellipsis("H", Var("x"), "x", Numeral(bound))
        assert interp_generalized(t, gm, S0) == 1


def test_generalized_stream_probe_beyond_width():
    sig = Signature.build(variadic_fns=["H"])
    gm = GeneralizedModel(sig, variadic={"H": lambda f, v: f(v + 10**6)})
    with pytest.raises(BudgetExceeded):
        interp_generalized(Ellipsis("H", Var("x"), "x", Numeral(1)), gm, S0)


def test_generalized_varapp_pads_with_zero():
    sig = Signature.build(variadic_fns=["H"])
    gm = GeneralizedModel(sig, variadic={"H": lambda f, v: f(v) + 10 * f(v + 1)})
    assert interp_generalized(parse_term("H(3, 4)", sig), gm, S0) == 4


def test_halving_identity(std, backend):
    phi = parse_formula("*(2, S(x(0) ...x x(x))) = *(x, +(x, 1))")
    for k in range(51):
        assert satisfies(phi, std, Assignment({"x": k})) is Verdict.TRUE


def test_bounded_pattern_is_exact(std):
    phi = parse_formula("exists x. x <= y & +(x, x) = y")
    assert satisfies(phi, std, Assignment({"y": 4})) is Verdict.TRUE
    assert satisfies(phi, std, Assignment({"y": 3})) is Verdict.FALSE
    psi = parse_formula("forall x. x <= y -> <=(x, y) = 1")
    assert satisfies(psi, std, Assignment({"y": 9})) is Verdict.TRUE


def test_bounded_pattern_with_term_bound(std):
    phi = parse_formula("exists x. x <= +(y, 1) & x = 4")
    assert satisfies(phi, std, Assignment({"y": 3})) is Verdict.TRUE
    assert satisfies(phi, std, Assignment({"y": 2})) is Verdict.FALSE


def test_unbounded_quantifiers_are_not_exact(std):
    assert satisfies(Forall("x", parse_formula("x = x")), std, S0, quantifier_cutoff=100) is Verdict.UNKNOWN
    assert satisfies(parse_formula("exists x. x = 7"), std, S0, quantifier_cutoff=10) is Verdict.TRUE
    assert satisfies(parse_formula("exists x. x = 70"), std, S0, quantifier_cutoff=10) is Verdict.UNKNOWN
    assert satisfies(parse_formula("forall x. <=(x, 5) = 1"), std, S0, quantifier_cutoff=10) is Verdict.FALSE


def test_vacuous_quantifier(std):
    assert satisfies(Exists("x", parse_formula("y = y")), std, S0) is Verdict.TRUE
    assert satisfies(Forall("x", parse_formula("1 = 2")), std, S0) is Verdict.FALSE


def test_kleene_connectives():
    T, F, U = Verdict.TRUE, Verdict.FALSE, Verdict.UNKNOWN
    assert (F & U) is F and (T & U) is U
    assert (T | U) is T and (F | U) is U
    assert ~U is U and ~T is F
    with pytest.raises(TypeError):
        bool(U)


def test_undetermined_atoms(std):
    sig = Signature.build(fixed_fns={"f": 1})
    m = Model(sig, fixed={"f": lambda k: k if k < 3 else (_ for _ in ()).throw(Undetermined())})
    phi = parse_formula("f(5) = 1 | f(1) = 1", sig)
    assert satisfies(phi, m, S0) is Verdict.TRUE
    assert satisfies(parse_formula("f(5) = 1", sig), m, S0) is Verdict.UNKNOWN


def test_independence_of_unused_variables(std, backend):
    t = parse_term("S(*(x, y)(0) ...x *(x, y)(z))")
    base = Assignment({"y": 2, "z": 4})
    vals = {f(t, std, base.update("x", k)) for f in INTERPRETERS for k in (0, 5, 100)}
    assert vals == {20}
