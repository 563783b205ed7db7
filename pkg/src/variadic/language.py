"""Signatures of variadic languages.

A signature is kept as the list of declarations it was built from, so that
clashing declarations (one name in two symbol classes, or one function
with two arities) survive long enough for :func:`validate` to report them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

FN = "fn"
VARIADIC = "variadic"
NARY = "naryvariadic"
PRED = "pred"
CONST = "const"

KINDS = (FN, VARIADIC, NARY, PRED, CONST)

_KIND_LABEL = {
    FN: "function",
    VARIADIC: "variadic function",
    NARY: "n-ary-by-variadic function",
    PRED: "predicate",
    CONST: "constant",
}

KEYWORDS = frozenset({"forall", "exists", "default"})
# Tokens the concrete syntax reserves for itself.
RESERVED = frozenset({"=", "->", "<->", "~", "&", "|", "(", ")", ",", ";", ".", "{", "}"})

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
OP_CHARS = frozenset("+-*/<>=^%!?@#$:")


class SignatureError(ValueError):
    """Malformed signature file or declaration."""


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    arity: int | None = None

    def __str__(self):
        if self.arity is None:
            return f"{self.kind} {self.name}"
        return f"{self.kind} {self.name} {self.arity}"


@dataclass(frozen=True)
class Violation:
    symbol: str
    message: str

    def __str__(self):
        return self.message


@dataclass(frozen=True, eq=False)
class Signature:
    """Symbol registry for a variadic language.

    Numerals are implicit.  Any identifier that is not declared here is a
    variable.
    """

    declarations: tuple[Declaration, ...] = ()

    @classmethod
    def build(
        cls,
        fixed_fns: Mapping[str, int] | None = None,
        variadic_fns: Iterable[str] = (),
        nary_by_variadic_fns: Mapping[str, int] | None = None,
        predicates: Mapping[str, int] | None = None,
        named_constants: Iterable[str] = (),
    ) -> Signature:
        decls: list[Declaration] = []
        decls += [Declaration(FN, n, a) for n, a in (fixed_fns or {}).items()]
        decls += [Declaration(VARIADIC, n) for n in variadic_fns]
        decls += [Declaration(NARY, n, a) for n, a in (nary_by_variadic_fns or {}).items()]
        decls += [Declaration(PRED, n, a) for n, a in (predicates or {}).items()]
        decls += [Declaration(CONST, n) for n in named_constants]
        return cls(tuple(decls))

    def merge(self, other: Signature) -> Signature:
        return Signature(self.declarations + other.declarations)

    def _by_kind(self, kind):
        return {d.name: d.arity for d in self.declarations if d.kind == kind}

    @cached_property
    def fixed_fns(self) -> dict[str, int]:
        return self._by_kind(FN)

    @cached_property
    def variadic_fns(self) -> frozenset[str]:
        return frozenset(self._by_kind(VARIADIC))

    @cached_property
    def nary_by_variadic_fns(self) -> dict[str, int]:
        return self._by_kind(NARY)

    @cached_property
    def predicates(self) -> dict[str, int]:
        return self._by_kind(PRED)

    @cached_property
    def named_constants(self) -> frozenset[str]:
        return frozenset(self._by_kind(CONST))

    @cached_property
    def _kinds(self) -> dict[str, str]:
        return {d.name: d.kind for d in self.declarations}

    def kind_of(self, name: str) -> str | None:
        """Symbol class of `name`, or None when `name` is a variable."""
        return self._kinds.get(name)

    def is_variable(self, name: str) -> bool:
        return (
            name not in self._kinds
            and name not in KEYWORDS
            and IDENT_RE.match(name) is not None
        )

    @cached_property
    def operator_symbols(self) -> frozenset[str]:
        """Declared names spelled with operator characters (e.g. ``+``, ``<=``)."""
        return frozenset(n for n in self._kinds if n and n[0] in OP_CHARS)

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return set(self.declarations) == set(other.declarations)

    def __hash__(self):
        return hash(frozenset(self.declarations))

    def to_text(self) -> str:
        return "".join(f"{d}\n" for d in self.declarations)


def _name_problem(name: str) -> str | None:
    if not name:
        return "empty symbol name"
    if name.isdigit():
        return f"{name} is a numeral and cannot be declared"
    if name in KEYWORDS or name in RESERVED:
        return f"{name} is reserved by the concrete syntax"
    if name.startswith("."):
        return f"{name} collides with the ellipsis marker"
    if IDENT_RE.match(name) or all(c in OP_CHARS for c in name):
        return None
    return f"{name} is neither an identifier nor an operator spelling"


def validate(sig: Signature) -> list[Violation]:
    """Check the unique-readability hypotheses; an empty list means ok."""
    out: list[Violation] = []
    seen: dict[str, Declaration] = {}
    for d in sig.declarations:
        problem = _name_problem(d.name)
        if problem:
            out.append(Violation(d.name, problem))
        if d.kind in (FN, PRED) and (d.arity is None or d.arity < 1):
            out.append(Violation(d.name, f"{d.name} needs arity >= 1, got {d.arity}"))
        if d.kind == NARY and (d.arity is None or d.arity < 0):
            out.append(Violation(d.name, f"{d.name} needs prefix arity >= 0, got {d.arity}"))
        prev = seen.get(d.name)
        if prev is None:
            seen[d.name] = d
            continue
        if prev.kind != d.kind:
            out.append(
                Violation(
                    d.name,
                    f"{d.name} is both {_KIND_LABEL[prev.kind]} and {_KIND_LABEL[d.kind]}",
                )
            )
        elif prev.arity != d.arity:
            out.append(Violation(d.name, f"{d.name} has arities {prev.arity} and {d.arity}"))
    return out


def std_signature() -> Signature:
    """``+``, ``*``, ``d`` (delta), ``<=`` binary; ``G`` and ``S`` (sum) variadic."""
    return Signature.build(
        fixed_fns={"+": 2, "*": 2, "d": 2, "<=": 2},
        variadic_fns=("G", "S"),
    )


def parse_signature(text: str) -> Signature:
    decls = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind not in KINDS:
            raise SignatureError(f"line {lineno}: unknown declaration {kind!r}")
        takes_arity = kind in (FN, NARY, PRED)
        if len(parts) != (3 if takes_arity else 2):
            raise SignatureError(f"line {lineno}: malformed declaration {line!r}")
        arity = None
        if takes_arity:
            try:
                arity = int(parts[2])
            except ValueError:
                raise SignatureError(f"line {lineno}: arity must be a natural") from None
        decls.append(Declaration(kind, parts[1], arity))
    return Signature(tuple(decls))


def load_signature(path: str | Path) -> Signature:
    return parse_signature(Path(path).read_text(encoding="utf-8"))
