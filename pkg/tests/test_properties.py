"""Invariants of substitution, interpretation and parsing as hypothesis properties."""

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strategies import assignments, formulas, numerals, small_terms, terms, uqf_formulas, variables
from variadic.language import Signature, std_signature, validate
from variadic.parser import parse_formula, parse_term, print_formula, print_term
from variadic.qelim import classify, eliminate, verify
from variadic.semantics import (
    Assignment,
    GeneralizedModel,
    Verdict,
    interp,
    interp_generalized,
    interp_semantic,
    interp_syntactic,
    satisfies,
    standard_model,
)
from variadic.subst import substitutable, substitutable_formula, substitute, substitute_formula
from variadic.syntax import Ellipsis, Numeral, complexity, free_vars, free_vars_formula

STD = standard_model()
GEN = GeneralizedModel.truncation(STD)

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@given(terms, variables, small_terms)
def test_not_free_means_unchanged(u, x, t):
    assume(x not in free_vars(u))
    assert substitute(u, x, t) == u


@given(terms, variables, numerals)
def test_numeral_substitution_keeps_size(u, x, c):
    assert complexity(substitute(u, x, c)) == complexity(u)


@given(terms, variables, terms, st.sampled_from(("G", "S")))
def test_ellipsis_is_bigger_than_body(u, x, v, g):
    e = Ellipsis(g, u, x, v)
    assert complexity(u) < complexity(e)
    assert complexity(e) >= complexity(u) + complexity(v) + 1


@given(terms, variables, small_terms)
def test_free_vars_after_substitution(r, x, t):
    got = free_vars(substitute(r, x, t))
    bound = (free_vars(r) - {x}) | free_vars(t)
    assert got <= bound
    # capture can swallow variables of t, so equality needs substitutability
    if x in free_vars(r) and substitutable(t, x, r):
        assert got == bound


@given(terms, variables, variables, small_terms)
def test_substitution_does_not_introduce_x(u, x, y, t):
    assume(x not in free_vars(u) and x not in free_vars(t))
    assert x not in free_vars(substitute(u, y, t))


@given(terms, variables, small_terms, variables, terms, st.sampled_from(("G", "S")))
def test_substitutable_ellipsis_parts(u, y, t, x, v, g):
    r = Ellipsis(g, u, y, v)
    if substitutable(t, x, r):
        assert substitutable(t, x, v)
        if x != y:
            assert substitutable(t, x, u)


@given(terms, variables, numerals)
def test_numerals_always_substitutable(r, x, c):
    assert substitutable(c, x, r)


@given(formulas, variables, numerals)
def test_numerals_always_substitutable_in_formulas(phi, x, c):
    assert substitutable_formula(c, x, phi)


@given(terms, variables, small_terms, variables, numerals)
def test_commutation(r, x, t, y, c):
    assume(x != y and y not in free_vars(t) and substitutable(t, x, r))
    assert substitute(substitute(r, x, t), y, c) == substitute(substitute(r, y, c), x, t)


@given(terms, assignments)
def test_interpretations_agree(t, s):
    want = interp_syntactic(t, STD, s)
    assert interp_semantic(t, STD, s) == want
    assert interp(t, STD, s) == want
    assert interp_generalized(t, GEN, s, mode="semantic") == want
    assert interp_generalized(t, GEN, s, mode="syntactic") == want


@given(terms, variables, small_terms, assignments)
def test_substitution_lemma(r, x, t, s):
    assume(substitutable(t, x, r))
    lhs = interp_syntactic(substitute(r, x, t), STD, s)
    assert lhs == interp_syntactic(r, STD, s.update(x, interp_syntactic(t, STD, s)))


@given(uqf_formulas, variables, small_terms, assignments)
def test_formula_substitution_lemma(phi, x, t, s):
    assume(substitutable_formula(t, x, phi))
    lhs = satisfies(substitute_formula(phi, x, t), STD, s)
    rhs = satisfies(phi, STD, s.update(x, interp_syntactic(t, STD, s)))
    assert lhs.definite and rhs.definite
    assert lhs is rhs


@given(terms, variables, assignments)
def test_unused_variable_is_irrelevant(u, x, s):
    assume(x not in free_vars(u))
    assert len({interp(u, STD, s.update(x, k)) for k in (0, 3, 11)}) == 1


@given(terms)
def test_term_roundtrip(t):
    assert parse_term(print_term(t)) == t


@given(formulas)
def test_formula_roundtrip(phi):
    assert parse_formula(print_formula(phi)) == phi


@given(uqf_formulas)
@settings(max_examples=60)
def test_qelim_sound(phi):
    cert = classify(phi)
    assert free_vars(eliminate(cert)) == free_vars_formula(phi)
    rep = verify(cert, 3)
    assert rep.ok, rep.failures


@given(uqf_formulas, assignments)
def test_uqf_satisfaction_is_exact(phi, s):
    assert satisfies(phi, STD, s, quantifier_cutoff=0) is not Verdict.UNKNOWN


@given(assignments, variables, st.integers(0, 100), st.lists(variables))
def test_assignment_update_is_local(s, x, n, probes):
    s2 = s.update(x, n)
    assert s2[x] == n
    for p in probes:
        if p != x:
            assert s2[p] == s[p]


@given(st.dictionaries(st.sampled_from("fgh"), st.integers(0, 3)), st.dictionaries(st.sampled_from("fgp"), st.integers(0, 3)))
def test_validate_idempotent_and_order_free(fns, preds):
    a = Signature.build(fixed_fns=fns, predicates=preds)
    b = Signature.build(predicates=dict(reversed(list(preds.items()))), fixed_fns=dict(reversed(list(fns.items()))))
    assert sorted(map(str, validate(a))) == sorted(map(str, validate(b)))
    assert validate(a) == validate(a)
    assert validate(std_signature()) == []


@given(st.integers(0, 60))
def test_halving_identity(k):
    phi = parse_formula("*(2, S(x(0) ...x x(x))) = *(x, +(x, 1))")
    assert satisfies(phi, STD, Assignment({"x": k})) is Verdict.TRUE


@given(st.lists(st.integers(0, 9), min_size=1, max_size=6))
def test_truncation_matches_finite_interpretation(seq):
    for g in ("G", "S"):
        assert GEN.variadic[g](lambda k: seq[k], len(seq) - 1) == STD.variadic[g](tuple(seq))


def test_numeral_bound_variants():
    assert substitutable(Numeral(3), "x", Ellipsis("S", parse_term("*(x, y)"), "y", Numeral(10)))
