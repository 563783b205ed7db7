import pytest

from variadic import kernel
from variadic.errors import BudgetExceeded
from variadic.gen import GeneratorConfig, TermGenerator, case_rng
from variadic.language import Signature, std_signature
from variadic.parser import parse_term
from variadic.semantics import Assignment, EvalBudget, Model, interp, interp_semantic, standard_model


def test_backends_listed():
    assert "python" in kernel.AVAILABLE
    with pytest.raises(ValueError):
        kernel.set_backend("fortran")


def test_program_is_reentrant(backend, std):
    """A host function may evaluate the same compiled program recursively."""
    sig = Signature.build(fixed_fns={"h": 1})
    slots = {}
    holder = {}

    def h(k):
        if k == 0:
            return 0
        return holder["prog"].run([k - 1], kernel.Meter(100, 10_000)) + 1

    m = Model(sig, fixed={"h": h})
    holder["prog"] = kernel.compile_term(parse_term("h(x)", sig), m, slots)
    assert holder["prog"].run([5], kernel.Meter(100, 10_000)) == 5


def test_overflow_falls_back(backend, std):
    t = parse_term("S(*(x, 4611686018427387904)(0) ...x *(x, 4611686018427387904)(3))")
    assert interp(t, std, Assignment()) == 6 * 2**62


def test_huge_numeral(backend, std):
    t = parse_term(f"+({2**70}, 1)")
    assert interp(t, std, Assignment()) == 2**70 + 1


def test_width_check(backend, std):
    with pytest.raises(BudgetExceeded):
        interp(parse_term("G(x(0) ...x x(y))"), std, Assignment({"y": 10}), budget=_budget(10))


def _budget(width):
    return EvalBudget(max_ellipsis_width=width)


def test_backends_agree_on_generated_terms(std):
    sig = std_signature()
    cfg = GeneratorConfig(seed=7)
    before = kernel.backend()
    try:
        for i in range(300):
            g = TermGenerator(cfg, sig, case_rng("kernel", 7, i))
            t, s = g.term(), g.assignment()
            want = interp_semantic(t, std, s)
            for name in kernel.AVAILABLE:
                kernel.set_backend(name)
                assert interp(t, std, s) == want
    finally:
        kernel.set_backend(before)


def test_custom_symbols_go_through_host_calls(backend):
    sig = Signature.build(fixed_fns={"f": 2}, variadic_fns=["M"], nary_by_variadic_fns={"T": 1}, named_constants=["c"])
    m = Model(
        sig,
        fixed={"f": lambda a, b: 10 * a + b},
        variadic={"M": max},
        nary={"T": lambda pre, tail: pre[0] * len(tail)},
        constants={"c": 4},
    )
    s = Assignment({"y": 3})
    assert interp(parse_term("f(c, y)", sig), m, s) == 43
    assert interp(parse_term("M(1, y, 2)", sig), m, s) == 3
    assert interp(parse_term("M(*(x, y)(0) ...x *(x, y)(c))", sig.merge(std_signature())), _merged(m), s) == 12
    assert interp(parse_term("T(y; x(0) ...x x(c))", sig), m, s) == 15


def _merged(m):
    sig = m.sig.merge(std_signature())
    std = standard_model()
    return Model(sig, fixed={**m.fixed, **std.fixed}, variadic={**m.variadic, **std.variadic}, nary=m.nary, constants=m.constants)
