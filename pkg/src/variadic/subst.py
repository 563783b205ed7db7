"""Substitution of a term for a variable, and the substitutability checks.

Substitution is total and does not rename binders: ``substitute(r, x, t)``
may capture free variables of `t`.  Whether that is harmless is the
question answered by :func:`substitutable`.
"""

from __future__ import annotations

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
    free_vars,
    free_vars_formula,
)


def _subst_args(args, x, t):
    new = tuple(substitute(a, x, t) for a in args)
    return args if all(a is b for a, b in zip(new, args)) else new


def substitute(r: Term, x: str, t: Term) -> Term:
    """r(x|t).  Unchanged subtrees are shared with `r`."""
    match r:
        case Var(name):
            return t if name == x else r
        case Numeral() | Const():
            return r
        case App(fn, args):
            new = _subst_args(args, x, t)
            return r if new is args else App(fn, new)
        case VarApp(fn, args):
            new = _subst_args(args, x, t)
            return r if new is args else VarApp(fn, new)
        case Ellipsis(fn, body, y, bound):
            new_bound = substitute(bound, x, t)
            # the binder shadows x inside the body
            new_body = body if y == x else substitute(body, x, t)
            if new_body is body and new_bound is bound:
                return r
            return Ellipsis(fn, new_body, y, new_bound)
        case NaryEllipsis(fn, prefix, body, y, bound):
            new_prefix = _subst_args(prefix, x, t)
            new_bound = substitute(bound, x, t)
            new_body = body if y == x else substitute(body, x, t)
            if new_prefix is prefix and new_body is body and new_bound is bound:
                return r
            return NaryEllipsis(fn, new_prefix, new_body, y, new_bound)
    raise TypeError(f"not a term: {r!r}")


def substitutable(t: Term, x: str, r: Term) -> bool:
    """Is `t` substitutable for `x` in `r`?"""
    match r:
        case Var() | Numeral() | Const():
            return True
        case App(_, args) | VarApp(_, args):
            return all(substitutable(t, x, a) for a in args)
        case Ellipsis(_, body, y, bound):
            return _ellipsis_ok(t, x, r, body, y, bound)
        case NaryEllipsis(_, prefix, body, y, bound):
            return all(substitutable(t, x, p) for p in prefix) and _ellipsis_ok(
                t, x, r, body, y, bound
            )
    raise TypeError(f"not a term: {r!r}")


def _ellipsis_ok(t, x, r, body, y, bound):
    if x not in free_vars(r):
        return True
    if y == x and substitutable(t, x, bound):
        return True
    return (
        y not in free_vars(t)
        and substitutable(t, x, body)
        and substitutable(t, x, bound)
    )


def substitute_formula(phi: Formula, x: str, t: Term) -> Formula:
    match phi:
        case Eq(lhs, rhs):
            return Eq(substitute(lhs, x, t), substitute(rhs, x, t))
        case Pred(name, args):
            return Pred(name, tuple(substitute(a, x, t) for a in args))
        case Not(body):
            return Not(substitute_formula(body, x, t))
        case And(l, r):
            return And(substitute_formula(l, x, t), substitute_formula(r, x, t))
        case Or(l, r):
            return Or(substitute_formula(l, x, t), substitute_formula(r, x, t))
        case Implies(l, r):
            return Implies(substitute_formula(l, x, t), substitute_formula(r, x, t))
        case Iff(l, r):
            return Iff(substitute_formula(l, x, t), substitute_formula(r, x, t))
        case Forall(y, body):
            return phi if y == x else Forall(y, substitute_formula(body, x, t))
        case Exists(y, body):
            return phi if y == x else Exists(y, substitute_formula(body, x, t))
    raise TypeError(f"not a formula: {phi!r}")


def substitutable_formula(t: Term, x: str, phi: Formula) -> bool:
    match phi:
        case Eq(lhs, rhs):
            return substitutable(t, x, lhs) and substitutable(t, x, rhs)
        case Pred(_, args):
            return all(substitutable(t, x, a) for a in args)
        case Not(body):
            return substitutable_formula(t, x, body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return substitutable_formula(t, x, l) and substitutable_formula(t, x, r)
        case Forall(y, body) | Exists(y, body):
            if x not in free_vars_formula(phi):
                return True
            return y not in free_vars(t) and substitutable_formula(t, x, body)
    raise TypeError(f"not a formula: {phi!r}")
