"""Compiled term evaluation.

A term is flattened into parallel integer arrays (one row per node, children
before parents) and run by one of two interchangeable backends:

``c``
    the Cython extension ``variadic._ckernel``; 64-bit arithmetic with
    overflow detection.
``python``
    ``variadic._kernel_py``, the same loop in plain Python with unbounded
    integers.

The backend is chosen at import (``c`` when the extension is importable,
unless ``VARIADIC_PURE_PYTHON=1``) and can be switched with
:func:`set_backend`.  A run that overflows 64 bits in the C backend is
replayed in Python, so both backends always return the same value.

Evaluation is the semantic one: the ellipsis binder lives in an
environment slot that is set to 0..w while the body runs.  Every node
visit costs one step, in the same order as the reference interpreters in
:mod:`variadic.semantics`, so budgets trip identically.
"""

from __future__ import annotations

import os
from array import array

from . import _kernel_py, standard
from .errors import BudgetExceeded
from .syntax import App, Const, Ellipsis, NaryEllipsis, Numeral, Term, Var, VarApp, subterms

try:
    from . import _ckernel
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

# opcodes; keep in sync with _ckernel.pyx and _kernel_py.py
NUM, VAR, ADD, MUL, LEQ, DELTA = 0, 1, 2, 3, 4, 5
CALLF, VSUM, VANY, CALLV = 6, 7, 8, 9
ESUM, EANY, CALLE, CALLN = 10, 11, 12, 13

_BINARY = {standard.add: ADD, standard.mul: MUL, standard.leq: LEQ, standard.delta: DELTA}
_VARARG = {standard.total: VSUM, standard.some_nonzero: VANY}
_ELLIPSIS = {standard.total: ESUM, standard.some_nonzero: EANY}

INT64_MAX = 2**63 - 1

AVAILABLE = ("c", "python") if _ckernel is not None else ("python",)
_backend = "python" if os.environ.get("VARIADIC_PURE_PYTHON") == "1" else AVAILABLE[0]


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} is not available (have {AVAILABLE})")
    _backend = name


class Meter:
    """Mutable step counter shared by every evaluation under one budget."""

    __slots__ = ("steps", "max_steps", "max_width")

    def __init__(self, max_width: int, max_steps: int):
        self.steps = 0
        self.max_width = max_width
        self.max_steps = max_steps

    def tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise BudgetExceeded("steps", self.max_steps)

    def check_width(self, w):
        if w + 1 > self.max_width:
            raise BudgetExceeded("width", self.max_width, w + 1)


class Program:
    __slots__ = ("op", "a", "b", "c", "d", "e", "kids", "consts", "fns", "root", "nslots", "_c")

    def __init__(self):
        self.op, self.a, self.b, self.c, self.d, self.e = [], [], [], [], [], []
        self.kids: list[int] = []
        self.consts: list[int] = []
        self.fns: list = []
        self.root = -1
        self.nslots = 0
        self._c = None

    def __len__(self):
        return len(self.op)

    def run(self, env, meter: Meter) -> int:
        if _backend == "c" and self._c is not None:
            start = meter.steps
            try:
                return self._c.run(env, meter)
            except OverflowError:
                meter.steps = start
        return _kernel_py.run(self, env, meter)


class _Compiler:
    def __init__(self, model, slots):
        self.model = model
        self.slots = slots
        self.prog = Program()
        self._const_index: dict[int, int] = {}

    def slot(self, name):
        if name not in self.slots:
            self.slots[name] = len(self.slots)
        return self.slots[name]

    def const(self, value):
        idx = self._const_index.get(value)
        if idx is None:
            idx = self._const_index[value] = len(self.prog.consts)
            self.prog.consts.append(value)
        return idx

    def fn(self, f):
        self.prog.fns.append(f)
        return len(self.prog.fns) - 1

    def kidlist(self, nodes):
        ptr = len(self.prog.kids)
        self.prog.kids.append(len(nodes))
        self.prog.kids.extend(nodes)
        return ptr

    def emit(self, op, a=0, b=0, c=0, d=0, e=0):
        p = self.prog
        p.op.append(op)
        p.a.append(a)
        p.b.append(b)
        p.c.append(c)
        p.d.append(d)
        p.e.append(e)
        return len(p.op) - 1

    def node(self, t: Term) -> int:
        m = self.model
        match t:
            case Numeral(v):
                return self.emit(NUM, self.const(v))
            case Const(name):
                return self.emit(NUM, self.const(m.constants[name]))
            case Var(name):
                return self.emit(VAR, self.slot(name))
            case App(fn, args):
                f = m.fixed[fn]
                kids = [self.node(x) for x in args]
                op = _BINARY.get(f) if len(kids) == 2 else None
                if op is not None:
                    return self.emit(op, kids[0], kids[1])
                return self.emit(CALLF, self.fn(f), self.kidlist(kids))
            case VarApp(fn, args):
                f = m.variadic[fn]
                kids = [self.node(x) for x in args]
                op = _VARARG.get(f)
                if op is not None:
                    return self.emit(op, 0, self.kidlist(kids))
                return self.emit(CALLV, self.fn(f), self.kidlist(kids))
            case Ellipsis(fn, body, x, bound):
                f = m.variadic[fn]
                bound_i = self.node(bound)
                body_i = self.node(body)
                op = _ELLIPSIS.get(f, CALLE)
                fi = self.fn(f) if op == CALLE else 0
                return self.emit(op, fi, body_i, self.slot(x), bound_i)
            case NaryEllipsis(fn, prefix, body, x, bound):
                f = m.nary[fn]
                pre = self.kidlist([self.node(p) for p in prefix])
                bound_i = self.node(bound)
                body_i = self.node(body)
                return self.emit(CALLN, self.fn(f), body_i, self.slot(x), bound_i, pre)
        raise TypeError(f"not a term: {t!r}")


def compile_term(t: Term, model, slots: dict[str, int] | None = None) -> Program:
    """Compile `t` against `model`.

    `slots` maps variable names to environment indices and is extended in
    place with any variable of `t` it lacks, so several programs can share
    one environment.
    """
    slots = {} if slots is None else slots
    comp = _Compiler(model, slots)
    for s in subterms(t):
        if isinstance(s, Var):
            comp.slot(s.name)
    prog = comp.prog
    prog.root = comp.node(t)
    prog.nslots = len(slots)
    if _ckernel is not None and all(v <= INT64_MAX for v in prog.consts):
        prog._c = _ckernel.CProgram(
            array("i", prog.op),
            array("i", prog.a),
            array("i", prog.b),
            array("i", prog.c),
            array("i", prog.d),
            array("i", prog.e),
            array("i", prog.kids) if prog.kids else array("i", [0]),
            array("q", prog.consts) if prog.consts else array("q", [0]),
            prog.fns,
            prog.root,
        )
    return prog
