"""Seeded random terms, formulas and assignments for property runs.

Every constructor has at most two children of depth one less, so a term of
depth d has at most 2**(d + 1) - 1 nodes over the standard signature.
Ellipsis bounds are kept shallow (depth <= 2, built from numerals, variables,
``+`` and small ellipses) so that evaluations stay far inside the default
budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .language import Signature
from .semantics import Assignment
from .syntax import (
    And,
    App,
    Const,
    Ellipsis,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    NaryEllipsis,
    Not,
    Numeral,
    Or,
    Pred,
    Term,
    Var,
    VarApp,
    leq,
)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int | str = 0
    max_depth: int = 4
    max_numeral: int = 5
    variable_pool: tuple[str, ...] = ("x", "y", "z")
    ellipsis_probability: float = 0.3

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not self.variable_pool:
            raise ValueError("variable pool must be nonempty")
        if not 0 <= self.ellipsis_probability <= 1:
            raise ValueError("ellipsis_probability must lie in [0, 1]")


class TermGenerator:
    def __init__(self, cfg: GeneratorConfig, sig: Signature, rng: random.Random | None = None):
        self.cfg = cfg
        self.sig = sig
        self.rng = rng or random.Random(cfg.seed)
        for v in cfg.variable_pool:
            if not sig.is_variable(v):
                raise ValueError(f"pool entry {v!r} is not a variable of the signature")
        self._binary = sorted(n for n, a in sig.fixed_fns.items() if a <= 2)
        self._fixed = sorted(sig.fixed_fns)
        self._variadic = sorted(sig.variadic_fns)
        self._nary = sorted(sig.nary_by_variadic_fns)
        self._consts = sorted(sig.named_constants)
        self._preds = sorted(sig.predicates)

    def var(self) -> str:
        return self.rng.choice(self.cfg.variable_pool)

    def leaf(self) -> Term:
        r = self.rng.random()
        if self._consts and r < 0.1:
            return Const(self.rng.choice(self._consts))
        if r < 0.45:
            return Numeral(self.rng.randint(0, self.cfg.max_numeral))
        return Var(self.var())

    def term(self, depth: int | None = None) -> Term:
        d = self.cfg.max_depth if depth is None else depth
        rng = self.rng
        if d <= 0 or rng.random() < 0.25:
            return self.leaf()
        if (self._variadic or self._nary) and rng.random() < self.cfg.ellipsis_probability:
            return self._ellipsis(d)
        choices = []
        if self._fixed:
            choices.append("app")
        if self._variadic:
            choices.append("varapp")
        if not choices:
            return self.leaf()
        if rng.choice(choices) == "app":
            fn = rng.choice(self._binary or self._fixed)
            arity = self.sig.fixed_fns[fn]
            return App(fn, tuple(self.term(d - 1) for _ in range(arity)))
        fn = rng.choice(self._variadic)
        return VarApp(fn, tuple(self.term(d - 1) for _ in range(rng.randint(1, 2))))

    def _ellipsis(self, d: int) -> Term:
        rng = self.rng
        x = self.var()
        body = self.term(d - 1)
        bound = self.bound(min(d - 1, 2))
        if self._nary and (not self._variadic or rng.random() < 0.3):
            fn = rng.choice(self._nary)
            n = self.sig.nary_by_variadic_fns[fn]
            prefix = tuple(self.term(min(d - 1, 1)) for _ in range(n))
            return NaryEllipsis(fn, prefix, body, x, bound)
        return Ellipsis(rng.choice(self._variadic), body, x, bound)

    def bound(self, depth: int) -> Term:
        """Small-valued term for an ellipsis bound."""
        rng = self.rng
        if depth <= 0 or rng.random() < 0.5:
            if rng.random() < 0.5:
                return Numeral(rng.randint(0, self.cfg.max_numeral))
            return Var(self.var())
        if self._variadic and rng.random() < 0.25:
            return Ellipsis(rng.choice(self._variadic), self.bound(0), self.var(), self.bound(0))
        if self.sig.fixed_fns.get("+") == 2:
            return App("+", (self.bound(depth - 1), self.bound(depth - 1)))
        return self.bound(0)

    def assignment(self, max_value: int | None = None) -> Assignment:
        hi = self.cfg.max_numeral if max_value is None else max_value
        return Assignment({v: self.rng.randint(0, hi) for v in self.cfg.variable_pool})

    def atom(self, term_depth: int = 2) -> Formula:
        rng = self.rng
        if self._preds and rng.random() < 0.2:
            p = rng.choice(self._preds)
            return Pred(p, tuple(self.term(term_depth) for _ in range(self.sig.predicates[p])))
        if self.sig.fixed_fns.get("<=") == 2 and rng.random() < 0.3:
            return leq(self.term(term_depth), self.term(term_depth))
        return Eq(self.term(term_depth), self.term(term_depth))

    def formula(self, depth: int = 3, term_depth: int = 2) -> Formula:
        """Any formula: connectives, free and guarded quantifiers."""
        rng = self.rng
        if depth <= 0 or rng.random() < 0.2:
            return self.atom(term_depth)
        k = rng.randrange(8)
        sub = lambda: self.formula(depth - 1, term_depth)
        if k == 0:
            return Not(sub())
        if k <= 4:
            return (And, Or, Implies, Iff)[k - 1](sub(), sub())
        x = self.var()
        if k == 5 and self.sig.fixed_fns.get("<=") == 2:
            y = rng.choice([v for v in self.cfg.variable_pool if v != x] or [x])
            if rng.random() < 0.5:
                return Exists(x, And(leq(Var(x), Var(y)), sub()))
            return Forall(x, Implies(leq(Var(x), Var(y)), sub()))
        return (Exists if k == 6 else Forall)(x, sub())

    def uqf_formula(self, depth: int = 3, term_depth: int = 1, max_quantifiers: int = 2) -> Formula:
        """Formula in the bounded fragment (needs ``<=`` and at least two pool variables)."""
        rng = self.rng
        if depth <= 0 or rng.random() < 0.25:
            if rng.random() < 0.3:
                return leq(self.term(term_depth), self.term(term_depth))
            return Eq(self.term(term_depth), self.term(term_depth))
        k = rng.randrange(7 if max_quantifiers > 0 else 5)
        if k == 0:
            return Not(self.uqf_formula(depth - 1, term_depth, max_quantifiers))
        if k <= 4:
            # max_quantifiers limits nesting depth, not the total count
            left = self.uqf_formula(depth - 1, term_depth, max_quantifiers)
            right = self.uqf_formula(depth - 1, term_depth, max_quantifiers)
            return (And, Or, Implies, Iff)[k - 1](left, right)
        x = self.var()
        y = rng.choice([v for v in self.cfg.variable_pool if v != x])
        body = self.uqf_formula(depth - 1, term_depth, max_quantifiers - 1)
        if k == 5:
            return Exists(x, And(leq(Var(x), Var(y)), body))
        return Forall(x, Implies(leq(Var(x), Var(y)), body))


def gen_term(cfg: GeneratorConfig, sig: Signature) -> Term:
    return TermGenerator(cfg, sig).term()


def case_rng(suite: str, seed: int, index: int) -> random.Random:
    """Independent, reproducible stream for one property case."""
    return random.Random(f"{suite}:{seed}:{index}")
