"""Bounded quantifier elimination.

Unbounded-quantifier-free (uqf) formulas are compiled into a characteristic
term ``t`` over ``d`` (equality test), ``+`` and the variadic ``G``
("some entry is nonzero") with ``phi <-> t = 1`` and ``~phi <-> t = 0`` in the
standard model:

    u = v                     d(u, v)
    psi & rho                 d(+(t_psi, t_rho), 2)
    ~psi                      d(t_psi, 0)
    exists x. x <= y & psi    G(t_psi(0) ...x t_psi(y))

Disjunction, implication, equivalence and the bounded universal are first
rewritten into those four shapes.  The output is not simplified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .semantics import (
    DEFAULT_BUDGET,
    Assignment,
    EvalBudget,
    FormulaEvaluator,
    Model,
    Verdict,
    standard_model,
    term_evaluator,
)
from .syntax import (
    And,
    App,
    Ellipsis,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Numeral,
    Or,
    Pred,
    Term,
    Var,
    free_vars,
    free_vars_formula,
)

DELTA, PLUS, LEQ, G = "d", "+", "<=", "G"

ONE = Numeral(1)
ZERO = Numeral(0)
TWO = Numeral(2)


class NotUqf(ValueError):
    """`location` is the offending subformula, `path` the route to it from the root."""

    def __init__(self, reason: str, location: Formula, path: tuple[str, ...] = ()):
        self.reason = reason
        self.location = location
        self.path = path
        where = "/".join(path) or "root"
        super().__init__(f"{reason} (at {where})")


@dataclass(frozen=True)
class Derivation:
    rule: str
    formula: Formula
    children: tuple[Derivation, ...] = ()


@dataclass(frozen=True)
class UqfFormula:
    formula: Formula
    certificate: Derivation


def _guard(x: str, f: Formula):
    """Return y when `f` is literally ``<=(x, y) = 1``."""
    match f:
        case Eq(App(op, (Var(v0), Var(y))), Numeral(1)) if op == LEQ and v0 == x:
            return y
    return None


def classify(phi: Formula) -> UqfFormula:
    """Certify `phi` as uqf or raise NotUqf."""
    return UqfFormula(phi, _derive(phi, ()))


def _derive(phi, path) -> Derivation:
    match phi:
        case Eq():
            return Derivation("atom", phi)
        case Pred(name, _):
            raise NotUqf(f"predicate atom {name} is not allowed", phi, path)
        case Not(body):
            return Derivation("not", phi, (_derive(body, path + ("not",)),))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            rule = type(phi).__name__.lower()
            return Derivation(rule, phi, (_derive(l, path + (rule + ".left",)), _derive(r, path + (rule + ".right",))))
        case Exists(x, body) | Forall(x, body):
            exists = isinstance(phi, Exists)
            q = "exists" if exists else "forall"
            shape = And if exists else Implies
            if not isinstance(body, shape):
                need = "x <= y & ..." if exists else "x <= y -> ..."
                raise NotUqf(f"unguarded quantifier {q} {x}: body must read {need}", phi, path)
            y = _guard(x, body.left)
            if y is None:
                raise NotUqf(f"{q} {x} is not guarded by {x} <= y for a variable y", phi, path)
            if y == x:
                raise NotUqf(f"guard {x} <= {y}: the bound must be a variable distinct from {x}", phi, path)
            sub = _derive(body.right, path + (f"{q} {x}",))
            return Derivation(f"{q}-bounded", phi, (sub,))
    raise TypeError(f"not a formula: {phi!r}")


def _delta(a: Term, b: Term) -> Term:
    return App(DELTA, (a, b))


def _not(t: Term) -> Term:
    return _delta(t, ZERO)


def _and(a: Term, b: Term) -> Term:
    return _delta(App(PLUS, (a, b)), TWO)


def _exists(x: str, y: str, t: Term) -> Term:
    return Ellipsis(G, t, x, Var(y))


def eliminate(phi: UqfFormula) -> Term:
    """The characteristic term t_phi, with exactly the free variables of phi."""
    return _elim(phi.formula)


def _elim(phi) -> Term:
    match phi:
        case Eq(u, v):
            return _delta(u, v)
        case Not(body):
            return _not(_elim(body))
        case And(l, r):
            return _and(_elim(l), _elim(r))
        case Or(l, r):
            # ~(~l & ~r)
            return _not(_and(_not(_elim(l)), _not(_elim(r))))
        case Implies(l, r):
            # ~(l & ~r)
            return _not(_and(_elim(l), _not(_elim(r))))
        case Iff(l, r):
            return _elim(And(Implies(l, r), Implies(r, l)))
        case Exists(x, And(guard, body)):
            return _exists(x, _guard(x, guard), _elim(body))
        case Forall(x, Implies(guard, body)):
            # ~exists x. x <= y & ~body
            return _not(_exists(x, _guard(x, guard), _not(_elim(body))))
    raise NotUqf("not certified uqf", phi)


def eliminate_to_formula(phi: UqfFormula) -> Formula:
    """Quantifier-free equivalent ``t_phi = 1``."""
    return Eq(eliminate(phi), ONE)


@dataclass
class VerifyReport:
    formula: Formula
    term: Term
    assignments: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify(
    phi: UqfFormula,
    values: int,
    m: Model | None = None,
    budget: EvalBudget = DEFAULT_BUDGET,
) -> VerifyReport:
    """Brute-force check of phi <-> t_phi = 1 and ~phi <-> t_phi = 0.

    Runs every assignment of 0..`values` to the free variables of phi.
    Also checks that t_phi is 0/1-valued and has the same free variables.
    """
    m = m or standard_model()
    t = eliminate(phi)
    report = VerifyReport(phi.formula, t)
    fv_phi = free_vars_formula(phi.formula)
    if free_vars(t) != fv_phi:
        report.failures.append(f"free variables differ: {sorted(free_vars(t))} vs {sorted(fv_phi)}")
    holds = FormulaEvaluator(phi.formula, m, budget)
    fails = FormulaEvaluator(Not(phi.formula), m, budget)
    value = term_evaluator(t, m, budget)
    names = sorted(fv_phi)
    for combo in itertools.product(range(values + 1), repeat=len(names)):
        s = Assignment(dict(zip(names, combo)))
        report.assignments += 1
        tv = value(s)
        pos, neg = holds(s), fails(s)
        where = ", ".join(f"{k}={v}" for k, v in zip(names, combo)) or "closed"
        if tv not in (0, 1):
            report.failures.append(f"[{where}] t_phi = {tv}, not 0/1")
        if pos is Verdict.UNKNOWN or neg is Verdict.UNKNOWN:
            report.failures.append(f"[{where}] satisfaction was not decided")
            continue
        if (pos is Verdict.TRUE) != (tv == 1):
            report.failures.append(f"[{where}] phi is {pos} but t_phi = {tv}")
        if (neg is Verdict.TRUE) != (tv == 0):
            report.failures.append(f"[{where}] ~phi is {neg} but t_phi = {tv}")
    return report
