"""Defining sentences for Borel sets of sequences, checked on finite prefixes.

A set built from basic open sets ``[f0]`` (all infinite extensions of a
finite sequence f0) is described by a table ``iota`` sending index tuples
to the finite sequences f0.  Over the language with

* ``f``   unary: the sequence itself,
* ``l``   n-ary: ``len(iota(a)) - 1``,
* ``tau`` n-ary-by-variadic: 1 iff the tail equals ``iota(a)``,

the term ``tau(x1..xn; f(z)(0) ...z f(z)(l(x1..xn)))`` is 1 exactly when the
sequence extends ``iota(x1..xn)``.  Quantifying over x1..xn with alternating
quantifiers gives the defining sentence.

Only a prefix of the sequence is known, so membership is three-valued: any
read of ``f`` past the prefix makes the atom unknown, and unbounded
quantifiers never produce definite answers by exhaustion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .errors import Undetermined
from .language import Signature
from .semantics import DEFAULT_BUDGET, Assignment, EvalBudget, Model, Verdict, satisfies
from .syntax import App, Eq, Exists, Forall, Formula, NaryEllipsis, Numeral, Var

F_SYM, L_SYM, TAU_SYM = "f", "l", "tau"
BINDER = "z"


class OutOfPrefix(Undetermined):
    def __init__(self, index, length):
        self.index = index
        super().__init__(f"f({index}) lies beyond the known prefix of length {length}")


@dataclass(frozen=True)
class IotaTable:
    """A finitely described map from n-tuples to nonempty sequences."""

    n: int
    default: tuple[int, ...]
    entries: Mapping[tuple[int, ...], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("iota arity must be at least 1")
        if not self.default:
            raise ValueError("iota never takes the empty sequence (default is empty)")
        for key, seq in self.entries.items():
            if len(key) != self.n:
                raise ValueError(f"entry {key} has arity {len(key)}, expected {self.n}")
            if not seq:
                raise ValueError(f"iota{key} is empty")

    @classmethod
    def constant(cls, seq, n: int = 1) -> IotaTable:
        return cls(n, tuple(seq))

    def __call__(self, *args: int) -> tuple[int, ...]:
        return self.entries.get(tuple(args), self.default)

    def signature(self) -> Signature:
        return Signature.build(fixed_fns={F_SYM: 1, L_SYM: self.n}, nary_by_variadic_fns={TAU_SYM: self.n})


_ENTRY = re.compile(r"^\(\s*([\d\s,]*)\)\s*->\s*([\d\s]+)$")
_DEFAULT = re.compile(r"^default\s*->\s*([\d\s]+)$")


def parse_iota(text: str) -> IotaTable:
    """Lines ``(a1,...,an) -> b1 ... bm`` plus one ``default -> b1 ... bm``."""
    entries = {}
    default = None
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _DEFAULT.match(line):
            if default is not None:
                raise ValueError(f"line {lineno}: second default line")
            default = tuple(int(b) for b in m.group(1).split())
            continue
        m = _ENTRY.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected '(a1,...,an) -> b1 ... bm'")
        key = tuple(int(a) for a in m.group(1).replace(",", " ").split())
        if n is None:
            n = len(key)
        elif len(key) != n:
            raise ValueError(f"line {lineno}: arity {len(key)} differs from {n}")
        entries[key] = tuple(int(b) for b in m.group(2).split())
    if default is None:
        raise ValueError("missing 'default -> ...' line")
    return IotaTable(n or 1, default, entries)


def load_iota(path, n: int | None = None) -> IotaTable:
    table = parse_iota(Path(path).read_text(encoding="utf-8"))
    if n is not None and not table.entries and table.n != n:
        table = IotaTable(n, table.default)
    return table


@dataclass(frozen=True)
class BorModel:
    f_prefix: tuple[int, ...]
    iota: IotaTable

    def __post_init__(self):
        if not self.f_prefix:
            raise ValueError("the known prefix must have length >= 1")

    def model(self) -> Model:
        prefix, iota = self.f_prefix, self.iota

        def f(k):
            if k >= len(prefix):
                raise OutOfPrefix(k, len(prefix))
            return prefix[k]

        def length_minus_one(*a):
            return len(iota(*a)) - 1

        def matches(a, b):
            return 1 if tuple(b) == iota(*a) else 0

        return Model(
            iota.signature(),
            fixed={F_SYM: f, L_SYM: length_minus_one},
            nary={TAU_SYM: matches},
        )


def quantifier_prefix(n: int, kind: str) -> list[str]:
    """Strictly alternating quantifiers, starting with exists for sigma."""
    first = {"sigma": "exists", "pi": "forall"}[kind]
    other = "forall" if first == "exists" else "exists"
    return [first if i % 2 == 0 else other for i in range(n)]


def build_sentence(iota: IotaTable, n: int, kind: str) -> Formula:
    """The sigma_n / pi_n sentence defining the set described by `iota`."""
    kind = kind.lower()
    if kind not in ("sigma", "pi"):
        raise ValueError(f"kind must be sigma or pi, got {kind!r}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if n != iota.n:
        raise ValueError(f"iota has arity {iota.n} but n = {n}")
    xs = [f"x{i}" for i in range(1, n + 1)]
    args = tuple(Var(x) for x in xs)
    inner = NaryEllipsis(
        TAU_SYM,
        args,
        App(F_SYM, (Var(BINDER),)),
        BINDER,
        App(L_SYM, args),
    )
    # sigma: odd n asks for a match, even n for a mismatch; pi is the dual
    target = 1 if n % 2 == 1 else 0
    if kind == "pi":
        target = 1 - target
    phi: Formula = Eq(inner, Numeral(target))
    for x, q in reversed(list(zip(xs, quantifier_prefix(n, kind)))):
        phi = Exists(x, phi) if q == "exists" else Forall(x, phi)
    return phi


def check_membership(
    m: BorModel,
    phi: Formula,
    cutoff: int,
    budget: EvalBudget = DEFAULT_BUDGET,
) -> Verdict:
    """Is the sequence in the set `phi` defines, judging from the prefix alone?

    A definite answer holds for every infinite extension of the prefix.
    """
    return satisfies(phi, m.model(), Assignment(), budget, cutoff)
