import pytest

from variadic.gen import GeneratorConfig, TermGenerator, case_rng, gen_term
from variadic.language import Signature, std_signature
from variadic.parser import parse_term, print_term
from variadic.qelim import classify
from variadic.syntax import check_formula, check_term, complexity


def test_same_seed_same_term():
    cfg = GeneratorConfig(seed=123)
    assert gen_term(cfg, std_signature()) == gen_term(cfg, std_signature())


def test_size_bound_and_well_formed():
    sig = std_signature()
    cfg = GeneratorConfig(seed=0, max_depth=4)
    worst = 0
    for i in range(10_000):
        t = TermGenerator(cfg, sig, case_rng("size", 0, i)).term()
        worst = max(worst, complexity(t))
        if i % 10 == 0:
            check_term(t, sig)
            assert parse_term(print_term(t), sig) == t
    assert worst <= 2**5


def test_uqf_generator_is_uqf():
    sig = std_signature()
    for i in range(500):
        phi = TermGenerator(GeneratorConfig(), sig, case_rng("uqf", 0, i)).uqf_formula()
        classify(phi)
        check_formula(phi, sig)


def test_config_invariants():
    with pytest.raises(ValueError):
        GeneratorConfig(max_depth=0)
    with pytest.raises(ValueError):
        GeneratorConfig(variable_pool=())
    with pytest.raises(ValueError):
        GeneratorConfig(ellipsis_probability=1.5)
    with pytest.raises(ValueError):
        TermGenerator(GeneratorConfig(variable_pool=("S",)), std_signature())


def test_extended_signature_uses_every_kind():
    sig = std_signature().merge(Signature.build(predicates={"P": 1}, nary_by_variadic_fns={"T": 2}, named_constants=["c"]))
    seen = set()
    for i in range(400):
        g = TermGenerator(GeneratorConfig(), sig, case_rng("kinds", 0, i))
        seen.add(type(g.term()).__name__)
        seen.add(type(g.atom()).__name__)
    assert {"App", "VarApp", "Ellipsis", "NaryEllipsis", "Pred", "Eq"} <= seen
