"""Property suites: substitution and interpretation laws checked on random cases.

Each suite draws case ``i`` from its own seeded stream (see
:func:`variadic.gen.case_rng`), so a failing case can be replayed alone.
Failures are shrunk greedily: a subterm is replaced by ``0`` or by one of
its children, or an ellipsis is dropped to a one-argument variadic
application, for as long as the property still fails.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import borel
from .errors import BudgetExceeded
from .gen import GeneratorConfig, TermGenerator, case_rng
from .language import Signature, std_signature
from .parser import ParseError, parse_formula, parse_term, print_formula, print_term
from .qelim import classify, verify
from .semantics import (
    Assignment,
    Verdict,
    interp,
    interp_semantic,
    interp_syntactic,
    satisfies,
    standard_model,
)
from .subst import substitutable, substitutable_formula, substitute, substitute_formula
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
    NaryEllipsis,
    Not,
    Numeral,
    Or,
    Pred,
    Term,
    VarApp,
    free_vars,
)

ZERO = Numeral(0)


@dataclass
class Failure:
    index: int
    message: str
    counterexample: str


@dataclass
class PropsReport:
    suite: str
    seed: int
    cases: int = 0
    held: int = 0
    skipped: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: dict[str, str] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [
            f"suite: {self.suite}",
            f"seed: {self.seed}",
            f"cases: {self.cases}",
            f"preconditions held: {self.held}",
            f"skipped (budget): {self.skipped}",
        ]
        out += [f"{k}: {v}" for k, v in self.notes.items()]
        out.append(f"failures: {len(self.failures)}")
        for f in sorted(self.failures, key=lambda f: f.index):
            out.append(f"FAIL case {f.index}: {f.message}")
            out.append(f"  counterexample: {f.counterexample}")
        out.append(f"elapsed: {self.elapsed:.2f}s")
        return out


# --- shrinking ---------------------------------------------------------------


def _children(t: Term) -> tuple[Term, ...]:
    match t:
        case App(_, args) | VarApp(_, args):
            return args
        case Ellipsis(_, body, _, bound):
            return (body, bound)
        case NaryEllipsis(_, prefix, body, _, bound):
            return (*prefix, body, bound)
    return ()


def _rebuild(t: Term, kids: tuple[Term, ...]) -> Term:
    match t:
        case App(fn, _):
            return App(fn, kids)
        case VarApp(fn, _):
            return VarApp(fn, kids)
        case Ellipsis(fn, _, x, _):
            return Ellipsis(fn, kids[0], x, kids[1])
        case NaryEllipsis(fn, prefix, _, x, _):
            n = len(prefix)
            return NaryEllipsis(fn, kids[:n], kids[n], x, kids[n + 1])
    return t


def term_shrinks(t: Term):
    """Smaller variants of `t`, most aggressive first."""
    if t != ZERO:
        yield ZERO
    yield from _children(t)
    if isinstance(t, Ellipsis):
        yield VarApp(t.fn, (t.body,))
    kids = _children(t)
    for i, kid in enumerate(kids):
        for smaller in term_shrinks(kid):
            yield _rebuild(t, kids[:i] + (smaller,) + kids[i + 1 :])


def formula_shrinks(phi: Formula):
    match phi:
        case Not(body):
            yield body
            for b in formula_shrinks(body):
                yield Not(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            yield l
            yield r
            cls = type(phi)
            for s in formula_shrinks(l):
                yield cls(s, r)
            for s in formula_shrinks(r):
                yield cls(l, s)
        case Exists(x, And(guard, body)) | Forall(x, Implies(guard, body)):
            yield body
            shape = And if isinstance(phi, Exists) else Implies
            for b in formula_shrinks(body):
                yield type(phi)(x, shape(guard, b))
        case Exists(x, body) | Forall(x, body):
            yield body
            for b in formula_shrinks(body):
                yield type(phi)(x, b)
        case Eq(u, v):
            for s in term_shrinks(u):
                yield Eq(s, v)
            for s in term_shrinks(v):
                yield Eq(u, s)
        case Pred(name, args):
            for i, a in enumerate(args):
                for s in term_shrinks(a):
                    yield Pred(name, args[:i] + (s,) + args[i + 1 :])


def _still_fails(pred: Callable[[object], bool], x) -> bool:
    try:
        return pred(x)
    except (BudgetExceeded, ValueError, KeyError):
        return False


def shrink(value, candidates, fails: Callable[[object], bool], max_rounds: int = 200):
    """Greedy descent: take the first candidate that still fails, repeat."""
    for _ in range(max_rounds):
        for c in candidates(value):
            if _still_fails(fails, c):
                value = c
                break
        else:
            return value
    return value


def _show_s(s: Assignment) -> str:
    return ",".join(f"{k}={v}" for k, v in sorted(s.bindings.items())) or "(all 0)"


# --- suites ------------------------------------------------------------------


class _Suite:
    def __init__(self, name, seed, sig: Signature | None = None, cfg: GeneratorConfig | None = None):
        self.name = name
        self.seed = seed
        self.sig = sig or std_signature()
        self.cfg = cfg or GeneratorConfig(seed=seed)
        self.model = standard_model(self.sig) if sig is None else None

    def gen(self, index: int) -> TermGenerator:
        return TermGenerator(self.cfg, self.sig, case_rng(self.name, self.seed, index))


def _interp_equiv(suite: _Suite, i: int, report: PropsReport):
    g = suite.gen(i)
    t, s = g.term(), g.assignment()
    m = suite.model

    def fails(u):
        return interp_syntactic(u, m, s) != interp_semantic(u, m, s)

    syn, sem = interp_syntactic(t, m, s), interp_semantic(t, m, s)
    fast = interp(t, m, s)
    report.held += 1
    if syn != sem or sem != fast:
        small = shrink(t, term_shrinks, fails) if syn != sem else t
        report.failures.append(
            Failure(i, f"syntactic {syn}, semantic {sem}, kernel {fast}", f"{print_term(small)} under {_show_s(s)}")
        )


def _subst_lemma(suite: _Suite, i: int, report: PropsReport):
    g = suite.gen(i)
    r, t, x, s = g.term(), g.term(2), g.var(), g.assignment()
    m = suite.model
    if not substitutable(t, x, r):
        return

    def fails(rr):
        if not substitutable(t, x, rr):
            return False
        lhs = interp_syntactic(substitute(rr, x, t), m, s)
        return lhs != interp_syntactic(rr, m, s.update(x, interp_syntactic(t, m, s)))

    failed = fails(r)
    report.held += 1
    if failed:
        small = shrink(r, term_shrinks, fails)
        report.failures.append(
            Failure(i, "r(x|t)^s differs from r^{s(x|t^s)}", f"r={print_term(small)} x={x} t={print_term(t)} s={_show_s(s)}")
        )


def _commute(suite: _Suite, i: int, report: PropsReport):
    g = suite.gen(i)
    r, t = g.term(), g.term(2)
    x = g.var()
    others = [v for v in suite.cfg.variable_pool if v != x]
    y = g.rng.choice(others)
    c = Numeral(g.rng.randint(0, suite.cfg.max_numeral))
    if not substitutable(t, x, r) or y in free_vars(t):
        return
    report.held += 1

    def fails(rr):
        if not substitutable(t, x, rr):
            return False
        return substitute(substitute(rr, x, t), y, c) != substitute(substitute(rr, y, c), x, t)

    if fails(r):
        small = shrink(r, term_shrinks, fails)
        report.failures.append(
            Failure(i, "r(x|t)(y|c) != r(y|c)(x|t)", f"r={print_term(small)} x={x} t={print_term(t)} y={y} c={c.value}")
        )


def _subst_formula(suite: _Suite, i: int, report: PropsReport):
    g = suite.gen(i)
    phi = g.uqf_formula()
    t, x, s = g.term(1), g.var(), g.assignment()
    m = suite.model
    if not substitutable_formula(t, x, phi):
        return

    def sides(f):
        lhs = satisfies(substitute_formula(f, x, t), m, s)
        rhs = satisfies(f, m, s.update(x, interp_syntactic(t, m, s)))
        return lhs, rhs

    lhs, rhs = sides(phi)
    if not (lhs.definite and rhs.definite):
        return
    report.held += 1

    def fails(f):
        if not substitutable_formula(t, x, f):
            return False
        a, b = sides(f)
        return a.definite and b.definite and a is not b

    if lhs is not rhs:
        small = shrink(phi, formula_shrinks, fails)
        report.failures.append(
            Failure(
                i,
                f"phi(x|t) is {lhs} but phi under s(x|t^s) is {rhs}",
                f"phi={print_formula(small)} x={x} t={print_term(t)} s={_show_s(s)}",
            )
        )


QE_VALUES = 6


def _qelim_sound(suite: _Suite, i: int, report: PropsReport):
    g = suite.gen(i)
    phi = g.uqf_formula()

    def fails(f):
        return not verify(classify(f), QE_VALUES, suite.model).ok

    rep = verify(classify(phi), QE_VALUES, suite.model)
    report.held += 1
    report.notes["assignments"] = str(int(report.notes.get("assignments", "0")) + rep.assignments)
    if not rep.ok:
        small = shrink(phi, formula_shrinks, fails)
        report.failures.append(Failure(i, rep.failures[0], print_formula(small)))


def roundtrip_signature() -> Signature:
    """The standard symbols plus one of each remaining kind, so every printer path runs."""
    extra = Signature.build(predicates={"P": 1}, nary_by_variadic_fns={"T": 2}, named_constants=["c"])
    return std_signature().merge(extra)


FORMULA_EVERY = 5


def _roundtrip(suite: _Suite, i: int, report: PropsReport):
    g = suite.gen(i)
    t = g.term()
    report.held += 1

    def term_fails(u):
        try:
            return parse_term(print_term(u), suite.sig) != u
        except ParseError:
            return True

    if term_fails(t):
        small = shrink(t, term_shrinks, term_fails)
        report.failures.append(Failure(i, "parse(print(t)) != t", repr(small)))
    if i % FORMULA_EVERY:
        return
    phi = g.formula()
    n = int(report.notes.get("formulas", "0")) + 1
    report.notes["formulas"] = str(n)

    def formula_fails(f):
        try:
            return parse_formula(print_formula(f), suite.sig) != f
        except ParseError:
            return True

    if formula_fails(phi):
        small = shrink(phi, formula_shrinks, formula_fails)
        report.failures.append(Failure(i, "parse(print(phi)) != phi", repr(small)))


CYLINDER = (1, 2)


def _borel_prefix(suite: _Suite, i: int, report: PropsReport):
    """Cylinder [1,2]: verdicts on a random prefix, then on an extension with a larger cutoff."""
    rng = case_rng(suite.name, suite.seed, i)
    iota = borel.IotaTable.constant(CYLINDER)
    kind = rng.choice(("sigma", "pi"))
    phi = borel.build_sentence(iota, 1, kind)
    # bias towards prefixes that start like the cylinder
    start = list(CYLINDER[: rng.randint(0, 2)])
    prefix = tuple(start + [rng.randint(0, 3) for _ in range(rng.randint(1, 4))])[: rng.randint(1, 5)]
    cutoff = rng.randint(1, 6)
    longer = prefix + tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 4)))
    bigger = cutoff + rng.randint(0, 6)
    v1 = borel.check_membership(borel.BorModel(prefix, iota), phi, cutoff)
    v2 = borel.check_membership(borel.BorModel(longer, iota), phi, bigger)
    report.held += 1
    where = f"kind={kind} prefix={prefix} cutoff={cutoff} extension={longer} cutoff'={bigger}"
    if v1.definite and v1 is not v2:
        report.failures.append(Failure(i, f"verdict {v1} changed to {v2} on extension", where))
    inside = len(prefix) >= len(CYLINDER) and prefix[: len(CYLINDER)] == CYLINDER
    expected = (Verdict.TRUE if kind == "sigma" else Verdict.FALSE) if inside else Verdict.UNKNOWN
    if v1 is not expected:
        report.failures.append(Failure(i, f"verdict {v1}, expected {expected}", where))


# name -> (case function, rejection sampling until `cases` preconditions hold)
SUITES: dict[str, tuple[Callable, bool]] = {
    "subst-lemma": (_subst_lemma, False),
    "interp-equiv": (_interp_equiv, False),
    "commute": (_commute, True),
    "subst-formula": (_subst_formula, False),
    "qelim-sound": (_qelim_sound, False),
    "roundtrip": (_roundtrip, False),
    "borel-prefix": (_borel_prefix, False),
}

MAX_ATTEMPTS_PER_CASE = 50


def run_props(suite: str, cases: int, seed: int = 0) -> PropsReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if cases < 0:
        raise ValueError("cases must be >= 0")
    fn, until_held = SUITES[suite]
    sig = roundtrip_signature() if suite == "roundtrip" else None
    ctx = _Suite(suite, seed, sig)
    report = PropsReport(suite, seed)
    started = time.perf_counter()
    i = 0
    while True:
        if until_held:
            if report.held >= cases or i >= cases * MAX_ATTEMPTS_PER_CASE:
                break
        elif i >= cases:
            break
        report.cases += 1
        try:
            fn(ctx, i, report)
        except BudgetExceeded:
            report.skipped += 1
        i += 1
    if suite in ("subst-lemma", "subst-formula"):
        rate = report.held / report.cases if report.cases else 0.0
        report.notes["substitutable rate"] = f"{rate:.3f}"
    report.elapsed = time.perf_counter() - started
    return report
