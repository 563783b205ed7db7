"""Hypothesis strategies for terms and formulas over the standard signature."""

from hypothesis import strategies as st

from variadic.semantics import Assignment
from variadic.syntax import (
    And,
    App,
    Ellipsis,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    Not,
    Numeral,
    Or,
    Var,
    VarApp,
    leq,
)

VARS = ("x", "y", "z")

variables = st.sampled_from(VARS)
numerals = st.integers(0, 4).map(Numeral)
leaves = st.one_of(numerals, variables.map(Var))

# bounds stay small so ellipses never get wide
bounds = st.recursive(leaves, lambda b: st.tuples(b, b).map(lambda p: App("+", p)), max_leaves=2)


def _extend(children):
    return st.one_of(
        st.tuples(st.sampled_from(("+", "*", "d", "<=")), children, children).map(lambda a: App(a[0], (a[1], a[2]))),
        st.tuples(st.sampled_from(("G", "S")), st.lists(children, min_size=1, max_size=3)).map(
            lambda a: VarApp(a[0], tuple(a[1]))
        ),
        st.builds(Ellipsis, st.sampled_from(("G", "S")), children, variables, bounds),
    )


terms = st.recursive(leaves, _extend, max_leaves=10)
small_terms = st.recursive(leaves, _extend, max_leaves=3)

assignments = st.fixed_dictionaries({v: st.integers(0, 4) for v in VARS}).map(Assignment)

atoms = st.one_of(st.builds(Eq, small_terms, small_terms), st.builds(leq, small_terms, small_terms))


def _uqf_extend(children):
    def guarded(args):
        x, y, body, exists = args
        if x == y:
            y = VARS[(VARS.index(x) + 1) % len(VARS)]
        if exists:
            return Exists(x, And(leq(Var(x), Var(y)), body))
        return Forall(x, Implies(leq(Var(x), Var(y)), body))

    return st.one_of(
        children.map(Not),
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Implies, children, children),
        st.builds(Iff, children, children),
        st.tuples(variables, variables, children, st.booleans()).map(guarded),
    )


uqf_formulas = st.recursive(atoms, _uqf_extend, max_leaves=4)


def _any_extend(children):
    return st.one_of(
        _uqf_extend(children),
        st.builds(Exists, variables, children),
        st.builds(Forall, variables, children),
    )


formulas = st.recursive(atoms, _any_extend, max_leaves=5)
