"""Structures over the naturals, term interpretation and satisfaction.

Three reference interpreters walk the AST directly:

* :func:`interp_syntactic` unfolds ``G(u(0) ...x u(v))`` by substituting the
  numerals ``0..w`` for ``x`` in ``u`` and evaluating every copy under the
  same assignment;
* :func:`interp_semantic` evaluates the one body ``u`` under the shifted
  assignments ``s(x|k)``;
* :func:`interp_generalized` hands a variadic symbol a lazy stream and a
  bound instead of a finite sequence.

:func:`interp` is the fast path through :mod:`variadic.kernel` and is what
formula satisfaction uses.  All of them count one step per node visited.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import kernel, standard
from .errors import BudgetExceeded, Undetermined
from .kernel import Meter
from .language import Signature, std_signature
from .subst import substitute
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
    all_vars_formula,
    complexity,
    free_vars,
    free_vars_formula,
)

DEFAULT_WIDTH = 65_536
DEFAULT_STEPS = 10**7
DEFAULT_CUTOFF = 32


@dataclass(frozen=True)
class EvalBudget:
    max_ellipsis_width: int = DEFAULT_WIDTH
    max_total_steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if self.max_ellipsis_width < 1 or self.max_total_steps < 1:
            raise ValueError("budget limits must be positive")

    def meter(self) -> Meter:
        return Meter(self.max_ellipsis_width, self.max_total_steps)


DEFAULT_BUDGET = EvalBudget()


class Assignment:
    """Total map from variables to naturals: finitely many bindings plus a default."""

    __slots__ = ("_bindings", "default")

    def __init__(self, bindings: Mapping[str, int] | None = None, default: int = 0):
        b = dict(bindings or {})
        for name, v in b.items():
            if v < 0:
                raise ValueError(f"{name} must map to a natural, got {v}")
        if default < 0:
            raise ValueError("default must be a natural")
        self._bindings = b
        self.default = default

    def __getitem__(self, x: str) -> int:
        return self._bindings.get(x, self.default)

    def update(self, x: str, n: int) -> Assignment:
        """s(x|n)"""
        out = Assignment.__new__(Assignment)
        out._bindings = {**self._bindings, x: n}
        out.default = self.default
        return out

    @property
    def bindings(self) -> dict[str, int]:
        return dict(self._bindings)

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        keys = self._bindings.keys() | other._bindings.keys()
        return self.default == other.default and all(self[k] == other[k] for k in keys)

    def __hash__(self):
        return hash((self.default, frozenset((k, v) for k, v in self._bindings.items() if v != self.default)))

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self._bindings.items()))
        return f"Assignment({inner}; default={self.default})"

    @classmethod
    def parse(cls, text: str) -> Assignment:
        """``"x=3,y=5"``"""
        bindings = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            name, sep, value = part.partition("=")
            if not sep or not value.strip().isdigit():
                raise ValueError(f"bad binding {part!r}; expected var=nat")
            bindings[name.strip()] = int(value)
        return cls(bindings)


def _check_coverage(sig: Signature, kind: str, declared, given: Mapping):
    missing = set(declared) - set(given)
    extra = set(given) - set(declared)
    if missing:
        raise ValueError(f"no interpretation for {kind} {sorted(missing)}")
    if extra:
        raise ValueError(f"{kind} {sorted(extra)} not declared in the signature")


@dataclass(frozen=True, eq=False)
class Model:
    """A structure with universe the naturals.

    Fixed-arity symbols take their arguments positionally, variadic symbols
    a tuple, n-ary-by-variadic symbols ``(prefix_tuple, tail_tuple)``.
    """

    sig: Signature
    fixed: Mapping[str, Callable[..., int]] = field(default_factory=dict)
    variadic: Mapping[str, Callable[[tuple], int]] = field(default_factory=dict)
    nary: Mapping[str, Callable[[tuple, tuple], int]] = field(default_factory=dict)
    predicates: Mapping[str, Callable[..., bool]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        _check_coverage(self.sig, "function", self.sig.fixed_fns, self.fixed)
        _check_coverage(self.sig, "variadic function", self.sig.variadic_fns, self.variadic)
        _check_coverage(self.sig, "n-ary-by-variadic function", self.sig.nary_by_variadic_fns, self.nary)
        _check_coverage(self.sig, "predicate", self.sig.predicates, self.predicates)
        _check_coverage(self.sig, "constant", self.sig.named_constants, self.constants)
        for name, v in self.constants.items():
            if v < 0:
                raise ValueError(f"constant {name} must denote a natural")


_STD_FIXED = {"+": standard.add, "*": standard.mul, "d": standard.delta, "<=": standard.leq}
_STD_VARIADIC = {"G": standard.some_nonzero, "S": standard.total}


def standard_model(sig: Signature | None = None) -> Model:
    """The standard model; with `sig`, interpret its standard-named symbols.

    Raises ValueError if `sig` declares anything the standard model does not
    know how to interpret.
    """
    sig = sig or std_signature()
    fixed = {n: _STD_FIXED[n] for n, a in sig.fixed_fns.items() if n in _STD_FIXED and a == 2}
    variadic = {n: _STD_VARIADIC[n] for n in sig.variadic_fns if n in _STD_VARIADIC}
    return Model(sig, fixed=fixed, variadic=variadic)


@dataclass(frozen=True, eq=False)
class GeneralizedModel:
    """Variadic symbols receive ``(stream, bound)``; ``stream(k)`` is the k-th value.

    n-ary-by-variadic symbols receive ``(prefix_tuple, stream, bound)``.
    """

    sig: Signature
    fixed: Mapping[str, Callable[..., int]] = field(default_factory=dict)
    variadic: Mapping[str, Callable[[Callable[[int], int], int], int]] = field(default_factory=dict)
    nary: Mapping[str, Callable] = field(default_factory=dict)
    predicates: Mapping[str, Callable[..., bool]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def truncation(cls, m: Model) -> GeneralizedModel:
        """G(f, v) = G_m(f(0), ..., f(v))."""

        def lift(g):
            return lambda f, v: g(tuple(f(k) for k in range(v + 1)))

        def lift_nary(g):
            return lambda pre, f, v: g(pre, tuple(f(k) for k in range(v + 1)))

        return cls(
            m.sig,
            fixed=dict(m.fixed),
            variadic={n: lift(g) for n, g in m.variadic.items()},
            nary={n: lift_nary(g) for n, g in m.nary.items()},
            predicates=dict(m.predicates),
            constants=dict(m.constants),
        )


def _natural(f, r):
    if r < 0:
        raise ValueError(f"interpretation {getattr(f, '__name__', f)!r} returned {r}, not a natural")
    return r


def interp_syntactic(t: Term, m: Model, s: Assignment, budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """t^s: ellipses unfold into numeral instances of the body."""
    return _syn(t, m, s, budget.meter())


def _syn(t, m, s, meter):
    meter.tick()
    match t:
        case Numeral(v):
            return v
        case Var(x):
            return s[x]
        case Const(name):
            return m.constants[name]
        case App(fn, args):
            f = m.fixed[fn]
            return _natural(f, f(*[_syn(a, m, s, meter) for a in args]))
        case VarApp(fn, args):
            g = m.variadic[fn]
            return _natural(g, g(tuple(_syn(a, m, s, meter) for a in args)))
        case Ellipsis(fn, body, x, bound):
            vals = _syn_unfold(t, body, x, bound, m, s, meter)
            g = m.variadic[fn]
            return _natural(g, g(vals))
        case NaryEllipsis(fn, prefix, body, x, bound):
            pre = tuple(_syn(p, m, s, meter) for p in prefix)
            vals = _syn_unfold(t, body, x, bound, m, s, meter)
            g = m.nary[fn]
            return _natural(g, g(pre, vals))
    raise TypeError(f"not a term: {t!r}")


def _syn_unfold(whole, body, x, bound, m, s, meter):
    w = _syn(bound, m, s, meter)
    meter.check_width(w)
    size = complexity(whole)
    vals = []
    for k in range(w + 1):
        instance = substitute(body, x, Numeral(k))
        # termination measure: numerals are atomic, so every instance is smaller
        assert complexity(instance) < size
        vals.append(_syn(instance, m, s, meter))
    return tuple(vals)


def interp_semantic(t: Term, m: Model, s: Assignment, budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """t_s: ellipses evaluate the body under s(x|0), ..., s(x|w)."""
    return _sem(t, m, s, budget.meter())


def _sem(t, m, s, meter):
    meter.tick()
    match t:
        case Numeral(v):
            return v
        case Var(x):
            return s[x]
        case Const(name):
            return m.constants[name]
        case App(fn, args):
            f = m.fixed[fn]
            return _natural(f, f(*[_sem(a, m, s, meter) for a in args]))
        case VarApp(fn, args):
            g = m.variadic[fn]
            return _natural(g, g(tuple(_sem(a, m, s, meter) for a in args)))
        case Ellipsis(fn, body, x, bound):
            w = _sem(bound, m, s, meter)
            meter.check_width(w)
            g = m.variadic[fn]
            return _natural(g, g(tuple(_sem(body, m, s.update(x, k), meter) for k in range(w + 1))))
        case NaryEllipsis(fn, prefix, body, x, bound):
            pre = tuple(_sem(p, m, s, meter) for p in prefix)
            w = _sem(bound, m, s, meter)
            meter.check_width(w)
            g = m.nary[fn]
            vals = tuple(_sem(body, m, s.update(x, k), meter) for k in range(w + 1))
            return _natural(g, g(pre, vals))
    raise TypeError(f"not a term: {t!r}")


class _Stream:
    """Lazy, memoised k -> value of the ellipsis body."""

    __slots__ = ("_at", "_cache", "_width")

    def __init__(self, at, width):
        self._at = at
        self._cache = {}
        self._width = width

    def __call__(self, k: int) -> int:
        if k < 0:
            raise ValueError("streams are indexed by naturals")
        if k >= self._width:
            raise BudgetExceeded("width", self._width, k + 1)
        if k not in self._cache:
            self._cache[k] = self._at(k)
        return self._cache[k]


def interp_generalized(
    t: Term,
    gm: GeneralizedModel,
    s: Assignment,
    budget: EvalBudget = DEFAULT_BUDGET,
    mode: str = "semantic",
) -> int:
    """Interpretation in a generalized structure.

    ``mode="semantic"`` feeds the stream ``k -> u_{s(x|k)}``;
    ``mode="syntactic"`` feeds ``k -> u(x|k)^s``.  Explicit arguments of a
    variadic symbol become a stream that reads 0 past the last argument.
    """
    if mode not in ("semantic", "syntactic"):
        raise ValueError(f"unknown mode {mode!r}")
    return _gen(t, gm, s, budget.meter(), mode == "syntactic")


def _gen(t, gm, s, meter, syntactic):
    meter.tick()
    match t:
        case Numeral(v):
            return v
        case Var(x):
            return s[x]
        case Const(name):
            return gm.constants[name]
        case App(fn, args):
            f = gm.fixed[fn]
            return _natural(f, f(*[_gen(a, gm, s, meter, syntactic) for a in args]))
        case VarApp(fn, args):
            vals = [_gen(a, gm, s, meter, syntactic) for a in args]
            g = gm.variadic[fn]
            stream = _Stream(lambda k: vals[k] if k < len(vals) else 0, meter.max_width)
            return _natural(g, g(stream, len(vals) - 1))
        case Ellipsis(fn, body, x, bound) | NaryEllipsis(fn, _, body, x, bound):
            pre = None
            if isinstance(t, NaryEllipsis):
                pre = tuple(_gen(p, gm, s, meter, syntactic) for p in t.prefix)
            w = _gen(bound, gm, s, meter, syntactic)
            if syntactic:
                at = lambda k: _gen(substitute(body, x, Numeral(k)), gm, s, meter, True)
            else:
                at = lambda k: _gen(body, gm, s.update(x, k), meter, False)
            stream = _Stream(at, meter.max_width)
            if pre is None:
                g = gm.variadic[fn]
                return _natural(g, g(stream, w))
            g = gm.nary[fn]
            return _natural(g, g(pre, stream, w))
    raise TypeError(f"not a term: {t!r}")


def term_evaluator(t: Term, m: Model, budget: EvalBudget = DEFAULT_BUDGET) -> Callable[[Assignment], int]:
    """Compile `t` once; the result evaluates it under any assignment."""
    slots: dict[str, int] = {}
    prog = kernel.compile_term(t, m, slots)
    names = sorted(slots, key=slots.get)

    def evaluate(s: Assignment) -> int:
        return prog.run([s[x] for x in names], budget.meter())

    return evaluate


def interp(t: Term, m: Model, s: Assignment, budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """Fast interpretation through the compiled kernel; equals t^s and t_s."""
    return term_evaluator(t, m, budget)(s)


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, b: bool) -> Verdict:
        return cls.TRUE if b else cls.FALSE

    @property
    def definite(self) -> bool:
        return self is not Verdict.UNKNOWN

    def __invert__(self):
        return _NEG[self]

    def __and__(self, other):
        if self is Verdict.FALSE or other is Verdict.FALSE:
            return Verdict.FALSE
        if self is Verdict.TRUE and other is Verdict.TRUE:
            return Verdict.TRUE
        return Verdict.UNKNOWN

    def __or__(self, other):
        if self is Verdict.TRUE or other is Verdict.TRUE:
            return Verdict.TRUE
        if self is Verdict.FALSE and other is Verdict.FALSE:
            return Verdict.FALSE
        return Verdict.UNKNOWN

    def __bool__(self):
        raise TypeError("a Verdict is three-valued; compare it with Verdict.TRUE")

    def __str__(self):
        return self.value


_NEG = {Verdict.TRUE: Verdict.FALSE, Verdict.FALSE: Verdict.TRUE, Verdict.UNKNOWN: Verdict.UNKNOWN}
T, F, U = Verdict.TRUE, Verdict.FALSE, Verdict.UNKNOWN


def bounded_guard(x: str, guard: Formula, m) -> Term | None:
    """The bound `v` if `guard` is ``x <= v`` with x not free in v.

    Only meaningful when ``<=`` means less-or-equal; otherwise None.
    """
    if m.fixed.get("<=") is not standard.leq:
        return None
    match guard:
        case Eq(App("<=", (Var(v0), bound)), Numeral(1)) if v0 == x and x not in free_vars(bound):
            return bound
    return None


class FormulaEvaluator:
    """Three-valued satisfaction of one formula, compiled once.

    A quantifier whose body is ``x <= v & psi`` (for exists) or
    ``x <= v -> psi`` (for forall), with x not free in v, ranges over
    ``0..v`` exactly and yields a definite answer.  A quantifier whose
    variable is not free in its body is decided by the body alone.  Any
    other quantifier searches ``0..cutoff`` for a witness (or counterexample)
    and answers unknown when none turns up.
    """

    def __init__(self, phi: Formula, m: Model, budget: EvalBudget = DEFAULT_BUDGET, cutoff: int = DEFAULT_CUTOFF):
        self.phi = phi
        self.model = m
        self.budget = budget
        self.cutoff = cutoff
        self.slots: dict[str, int] = {x: i for i, x in enumerate(sorted(all_vars_formula(phi)))}
        self._plan = self._compile(phi)
        self._names = sorted(self.slots, key=self.slots.get)

    def _term(self, t):
        return kernel.compile_term(t, self.model, self.slots)

    def _compile(self, phi):
        match phi:
            case Eq(lhs, rhs):
                return ("eq", self._term(lhs), self._term(rhs))
            case Pred(name, args):
                return ("pred", self.model.predicates[name], [self._term(a) for a in args])
            case Not(body):
                return ("not", self._compile(body))
            case And(l, r):
                return ("and", self._compile(l), self._compile(r))
            case Or(l, r):
                return ("or", self._compile(l), self._compile(r))
            case Implies(l, r):
                return ("implies", self._compile(l), self._compile(r))
            case Iff(l, r):
                return ("iff", self._compile(l), self._compile(r))
            case Exists(x, body) | Forall(x, body):
                is_exists = isinstance(phi, Exists)
                if x not in free_vars_formula(body):
                    return ("vacuous", self._compile(body))
                shape = And if is_exists else Implies
                if isinstance(body, shape):
                    bound = bounded_guard(x, body.left, self.model)
                    if bound is not None:
                        kind = "bexists" if is_exists else "bforall"
                        return (kind, self.slots[x], self._term(bound), self._compile(body.right))
                return ("exists" if is_exists else "forall", self.slots[x], self._compile(body))
        raise TypeError(f"not a formula: {phi!r}")

    def __call__(self, s: Assignment) -> Verdict:
        env = [s[x] for x in self._names]
        return self._eval(self._plan, env, self.budget.meter())

    def _eval(self, plan, env, meter) -> Verdict:
        kind = plan[0]
        if kind == "eq":
            try:
                return Verdict.of(plan[1].run(env, meter) == plan[2].run(env, meter))
            except Undetermined:
                return U
        if kind == "not":
            return ~self._eval(plan[1], env, meter)
        if kind == "and":
            left = self._eval(plan[1], env, meter)
            if left is F:
                return F
            return left & self._eval(plan[2], env, meter)
        if kind == "or":
            left = self._eval(plan[1], env, meter)
            if left is T:
                return T
            return left | self._eval(plan[2], env, meter)
        if kind == "implies":
            left = self._eval(plan[1], env, meter)
            if left is F:
                return T
            return ~left | self._eval(plan[2], env, meter)
        if kind == "iff":
            left = self._eval(plan[1], env, meter)
            right = self._eval(plan[2], env, meter)
            if left is U or right is U:
                return U
            return Verdict.of(left is right)
        if kind == "vacuous":
            return self._eval(plan[1], env, meter)
        if kind == "pred":
            try:
                vals = [p.run(env, meter) for p in plan[2]]
            except Undetermined:
                return U
            try:
                return Verdict.of(bool(plan[1](*vals)))
            except Undetermined:
                return U
        if kind in ("bexists", "bforall"):
            _, slot, bound, body = plan
            try:
                w = bound.run(env, meter)
            except Undetermined:
                return U
            meter.check_width(w)
            return self._search(slot, range(w + 1), body, env, meter, kind == "bexists", exact=True)
        if kind in ("exists", "forall"):
            _, slot, body = plan
            return self._search(slot, range(self.cutoff + 1), body, env, meter, kind == "exists", exact=False)
        raise ValueError(f"bad plan node {kind}")

    def _search(self, slot, values, body, env, meter, existential, exact):
        decisive = T if existential else F
        saved = env[slot]
        unknown = False
        try:
            for k in values:
                env[slot] = k
                v = self._eval(body, env, meter)
                if v is decisive:
                    return decisive
                if v is U:
                    unknown = True
        finally:
            env[slot] = saved
        if exact and not unknown:
            return ~decisive
        return U


def satisfies(
    phi: Formula,
    m: Model,
    s: Assignment,
    budget: EvalBudget = DEFAULT_BUDGET,
    quantifier_cutoff: int = DEFAULT_CUTOFF,
) -> Verdict:
    """M |= phi[s] as true, false or unknown (see FormulaEvaluator)."""
    return FormulaEvaluator(phi, m, budget, quantifier_cutoff)(s)
