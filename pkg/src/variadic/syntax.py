"""Term and formula ASTs.

Terms::

    Numeral(n)                          the constant symbol for n
    Const(c)                            a named constant
    Var(x)
    App(f, (u1, ..., uk))               fixed-arity application
    VarApp(G, (u1, ..., uk))            variadic symbol with explicit arguments
    Ellipsis(G, u, x, v)                G(u(0) ...x u(v))
    NaryEllipsis(T, (p1..pn), u, x, v)  T(p1, ..., pn; u(0) ...x u(v))

All nodes are immutable and compare structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .language import Signature


@dataclass(frozen=True)
class Numeral:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"numerals denote naturals, got {self.value}")


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class VarApp:
    fn: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Ellipsis:
    fn: str
    body: Term
    binder: str
    bound: Term


@dataclass(frozen=True)
class NaryEllipsis:
    fn: str
    prefix: tuple[Term, ...]
    body: Term
    binder: str
    bound: Term


Term = Union[Numeral, Const, Var, App, VarApp, Ellipsis, NaryEllipsis]


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall:
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists:
    var: str
    body: Formula


Formula = Union[Eq, Pred, Not, And, Or, Implies, Iff, Forall, Exists]

BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)
TERM_TYPES = (Numeral, Const, Var, App, VarApp, Ellipsis, NaryEllipsis)


class IllFormed(ValueError):
    pass


def num(n: int) -> Numeral:
    return Numeral(n)


def leq(u: Term, v: Term) -> Eq:
    """``u <= v``, shorthand for ``<=(u, v) = 1``."""
    return Eq(App("<=", (u, v)), Numeral(1))


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset((name,))
        case Numeral() | Const():
            return frozenset()
        case App(_, args) | VarApp(_, args):
            return frozenset().union(*map(free_vars, args))
        case Ellipsis(_, body, x, bound):
            return (free_vars(body) - {x}) | free_vars(bound)
        case NaryEllipsis(_, prefix, body, x, bound):
            out = (free_vars(body) - {x}) | free_vars(bound)
            return out.union(*map(free_vars, prefix))
    raise TypeError(f"not a term: {t!r}")


def free_vars_formula(phi: Formula) -> frozenset[str]:
    match phi:
        case Eq(lhs, rhs):
            return free_vars(lhs) | free_vars(rhs)
        case Pred(_, args):
            return frozenset().union(*map(free_vars, args))
        case Not(body):
            return free_vars_formula(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return free_vars_formula(l) | free_vars_formula(r)
        case Forall(x, body) | Exists(x, body):
            return free_vars_formula(body) - {x}
    raise TypeError(f"not a formula: {phi!r}")


def complexity(t: Term) -> int:
    """Node count; numerals are atomic whatever their magnitude."""
    match t:
        case Numeral() | Const() | Var():
            return 1
        case App(_, args) | VarApp(_, args):
            return 1 + sum(map(complexity, args))
        case Ellipsis(_, body, _, bound):
            return 1 + complexity(body) + complexity(bound)
        case NaryEllipsis(_, prefix, body, _, bound):
            return 1 + sum(map(complexity, prefix)) + complexity(body) + complexity(bound)
    raise TypeError(f"not a term: {t!r}")


def formula_size(phi: Formula) -> int:
    match phi:
        case Eq(lhs, rhs):
            return 1 + complexity(lhs) + complexity(rhs)
        case Pred(_, args):
            return 1 + sum(map(complexity, args))
        case Not(body) | Forall(_, body) | Exists(_, body):
            return 1 + formula_size(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return 1 + formula_size(l) + formula_size(r)
    raise TypeError(f"not a formula: {phi!r}")


def is_quantifier_free(phi: Formula) -> bool:
    match phi:
        case Eq() | Pred():
            return True
        case Not(body):
            return is_quantifier_free(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return is_quantifier_free(l) and is_quantifier_free(r)
    return False


def subterms(t: Term):
    """Pre-order walk over `t` and all of its subterms."""
    yield t
    match t:
        case App(_, args) | VarApp(_, args):
            for a in args:
                yield from subterms(a)
        case Ellipsis(_, body, _, bound):
            yield from subterms(body)
            yield from subterms(bound)
        case NaryEllipsis(_, prefix, body, _, bound):
            for a in prefix:
                yield from subterms(a)
            yield from subterms(body)
            yield from subterms(bound)


def formula_terms(phi: Formula):
    """Top-level terms of every atom in `phi`."""
    match phi:
        case Eq(lhs, rhs):
            yield lhs
            yield rhs
        case Pred(_, args):
            yield from args
        case Not(body) | Forall(_, body) | Exists(_, body):
            yield from formula_terms(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            yield from formula_terms(l)
            yield from formula_terms(r)


def all_vars_formula(phi: Formula) -> set[str]:
    """Every variable name occurring in `phi`, free or bound."""
    out: set[str] = set()

    def visit(f):
        match f:
            case Forall(x, body) | Exists(x, body):
                out.add(x)
                visit(body)
            case Not(body):
                visit(body)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                visit(l)
                visit(r)

    visit(phi)
    for t in formula_terms(phi):
        for s in subterms(t):
            if isinstance(s, Var):
                out.add(s.name)
            elif isinstance(s, (Ellipsis, NaryEllipsis)):
                out.add(s.binder)
    return out


def check_term(t: Term, sig: Signature) -> None:
    """Raise IllFormed unless every symbol in `t` is used as `sig` declares."""
    for s in subterms(t):
        match s:
            case Var(name):
                if not sig.is_variable(name):
                    raise IllFormed(f"{name} is declared, not a variable")
            case Const(name):
                if name not in sig.named_constants:
                    raise IllFormed(f"{name} is not a declared constant")
            case App(fn, args):
                if fn not in sig.fixed_fns:
                    raise IllFormed(f"{fn} is not a fixed-arity function symbol")
                if len(args) != sig.fixed_fns[fn]:
                    raise IllFormed(f"{fn} takes {sig.fixed_fns[fn]} arguments, got {len(args)}")
            case VarApp(fn, args):
                if fn not in sig.variadic_fns:
                    raise IllFormed(f"{fn} is not a variadic function symbol")
                if not args:
                    raise IllFormed(f"{fn} needs at least one argument")
            case Ellipsis(fn, _, x, _):
                if fn not in sig.variadic_fns:
                    raise IllFormed(f"{fn} is not a variadic function symbol")
                if not sig.is_variable(x):
                    raise IllFormed(f"ellipsis binder {x} is not a variable")
            case NaryEllipsis(fn, prefix, _, x, _):
                if fn not in sig.nary_by_variadic_fns:
                    raise IllFormed(f"{fn} is not an n-ary-by-variadic symbol")
                if len(prefix) != sig.nary_by_variadic_fns[fn]:
                    raise IllFormed(
                        f"{fn} takes {sig.nary_by_variadic_fns[fn]} prefix arguments, got {len(prefix)}"
                    )
                if not sig.is_variable(x):
                    raise IllFormed(f"ellipsis binder {x} is not a variable")


def check_formula(phi: Formula, sig: Signature) -> None:
    match phi:
        case Eq(lhs, rhs):
            check_term(lhs, sig)
            check_term(rhs, sig)
        case Pred(name, args):
            if name not in sig.predicates:
                raise IllFormed(f"{name} is not a predicate symbol")
            if len(args) != sig.predicates[name]:
                raise IllFormed(f"{name} takes {sig.predicates[name]} arguments, got {len(args)}")
            for a in args:
                check_term(a, sig)
        case Not(body):
            check_formula(body, sig)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            check_formula(l, sig)
            check_formula(r, sig)
        case Forall(x, body) | Exists(x, body):
            if not sig.is_variable(x):
                raise IllFormed(f"quantified {x} is not a variable")
            check_formula(body, sig)
        case _:
            raise TypeError(f"not a formula: {phi!r}")
