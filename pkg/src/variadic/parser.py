"""Concrete syntax: lexer, recursive-descent parser and printer.

Canonical forms::

    f(u1, u2)                     fixed-arity or explicit variadic application
    G(u(0) ...x u(v))             ellipsis term; the body is written twice
    T(p1, p2; u(0) ...x u(v))     n-ary-by-variadic ellipsis
    =(u, v)   u = v   u <= v      atoms (the last means =(<=(u, v), 1))
    ~  &  |  ->  <->  forall x.  exists x.

``G{x=0..v}(u)`` is accepted as input sugar for ``G(u(0) ...x u(v))``.
See docs/grammar.md for the full grammar.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import language as L
from .language import Signature, std_signature
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
)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class ParseError(ValueError):
    code = "ParseError"

    def __init__(self, message: str, span: SourceSpan):
        self.message = message
        self.span = span
        super().__init__(f"{message} at {span.start}..{span.end}")


class UnknownSymbol(ParseError):
    code = "UnknownSymbol"


class ArityMismatch(ParseError):
    code = "ArityMismatch"


class BodyCopiesDiffer(ParseError):
    code = "BodyCopiesDiffer"


class MalformedBinder(ParseError):
    code = "MalformedBinder"


# token kinds
NUM, IDENT, OP, ELLIPSIS = "NUM", "IDENT", "OP", "ELLIPSIS"
LPAREN, RPAREN, COMMA, SEMI, DOT, DOTDOT = "(", ")", ",", ";", ".", ".."
LBRACE, RBRACE = "{", "}"
NOT, AND, OR, IMPLIES, IFF, EQ = "~", "&", "|", "->", "<->", "="
EOF = "EOF"

_SINGLE = {
    "(": LPAREN,
    ")": RPAREN,
    ",": COMMA,
    ";": SEMI,
    "{": LBRACE,
    "}": RBRACE,
    "~": NOT,
    "&": AND,
    "|": OR,
}

# unicode spellings accepted on input
_ALIASES = {
    "¬": (NOT, "~"),
    "∧": (AND, "&"),
    "∨": (OR, "|"),
    "→": (IMPLIES, "->"),
    "↔": (IFF, "<->"),
    "∀": (IDENT, "forall"),
    "∃": (IDENT, "exists"),
    "Σ": (IDENT, "S"),
    "δ": (IDENT, "d"),
    "·": (OP, "*"),
    "≤": (OP, "<="),
}

_CONNECTIVE_OPS = {"->": IMPLIES, "<->": IFF, "=": EQ}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int

    @property
    def span(self):
        return SourceSpan(self.start, self.end)


def _is_ident_start(c):
    return c.isascii() and (c.isalpha() or c == "_")


def _is_ident_char(c):
    return c.isascii() and (c.isalnum() or c in "_'")


def tokenize(src: str, sig: Signature) -> list[Token]:
    known_ops = sorted(set(_CONNECTIVE_OPS) | sig.operator_symbols, key=len, reverse=True)
    toks: list[Token] = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token(NUM, src[i:j], i, j))
            i = j
        elif _is_ident_start(c):
            j = i
            while j < n and _is_ident_char(src[j]):
                j += 1
            toks.append(Token(IDENT, src[i:j], i, j))
            i = j
        elif c == "." or c == "⋯":
            if src.startswith("...", i) or c == "⋯":
                j = i + (1 if c == "⋯" else 3)
                k = j
                while k < n and _is_ident_char(src[k]):
                    k += 1
                name = src[j:k]
                if not name or not _is_ident_start(name[0]):
                    raise MalformedBinder("ellipsis marker must carry a variable, e.g. ...x", SourceSpan(i, k))
                toks.append(Token(ELLIPSIS, name, i, k))
                i = k
            elif src.startswith("..", i):
                toks.append(Token(DOTDOT, "..", i, i + 2))
                i += 2
            else:
                toks.append(Token(DOT, ".", i, i + 1))
                i += 1
        elif c in _SINGLE:
            toks.append(Token(_SINGLE[c], c, i, i + 1))
            i += 1
        elif c in _ALIASES:
            kind, text = _ALIASES[c]
            toks.append(Token(kind, text, i, i + 1))
            i += 1
        elif c in L.OP_CHARS:
            for op in known_ops:
                if src.startswith(op, i):
                    kind = _CONNECTIVE_OPS.get(op, OP)
                    toks.append(Token(kind, op, i, i + len(op)))
                    i += len(op)
                    break
            else:
                j = i
                while j < n and src[j] in L.OP_CHARS:
                    j += 1
                raise UnknownSymbol(f"unknown operator {src[i:j]!r}", SourceSpan(i, j))
        else:
            raise ParseError(f"unexpected character {c!r}", SourceSpan(i, i + 1))
    toks.append(Token(EOF, "", n, n))
    return toks


class _Parser:
    def __init__(self, src: str, sig: Signature):
        self.sig = sig
        self.toks = tokenize(src, sig)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def _undeclared_call(self):
        """Raise if the current '(' follows a variable, as in ``q(x)`` with q undeclared."""
        if self.tok.kind == LPAREN and self.pos > 0:
            prev = self.toks[self.pos - 1]
            if prev.kind == IDENT and self.sig.is_variable(prev.text):
                raise UnknownSymbol(f"{prev.text!r} is not a declared function symbol", prev.span)

    def expect(self, kind, what=None) -> Token:
        t = self.tok
        if t.kind != kind:
            self._undeclared_call()
            found = t.text or "end of input"
            raise ParseError(f"expected {what or kind!r}, found {found!r}", t.span)
        return self.advance()

    def at_end(self):
        if self.tok.kind != EOF:
            self._undeclared_call()
            raise ParseError(f"unexpected trailing {self.tok.text!r}", self.tok.span)

    # terms

    def term(self) -> Term:
        t = self.tok
        if t.kind == NUM:
            self.advance()
            return Numeral(int(t.text))
        if t.kind not in (IDENT, OP):
            raise ParseError(f"expected a term, found {t.text or 'end of input'!r}", t.span)
        name = t.text
        kind = self.sig.kind_of(name)
        if kind is None:
            if t.kind == OP or not self.sig.is_variable(name):
                raise UnknownSymbol(f"{name!r} cannot start a term", t.span)
            self.advance()
            return Var(name)
        self.advance()
        if kind == L.CONST:
            return Const(name)
        if kind == L.FN:
            return self._fixed(name, t)
        if kind == L.VARIADIC:
            return self._variadic(name, t)
        if kind == L.NARY:
            return self._nary(name, t)
        raise UnknownSymbol(f"predicate {name!r} used as a term", t.span)

    def _args(self):
        args = [self.term()]
        while self.tok.kind == COMMA:
            self.advance()
            args.append(self.term())
        return args

    def _fixed(self, name, head):
        self.expect(LPAREN, "(")
        args = self._args()
        close = self.expect(RPAREN, ")")
        arity = self.sig.fixed_fns[name]
        if len(args) != arity:
            raise ArityMismatch(
                f"{name} takes {arity} arguments, got {len(args)}",
                SourceSpan(head.start, close.end),
            )
        return App(name, tuple(args))

    def _ellipsis_tail(self, first: Term):
        """Parse ``(0) ...x u(v)`` after the first copy of the body."""
        if self.tok.kind == LPAREN and self.peek().kind != NUM:
            self._undeclared_call()
        self.expect(LPAREN, "(")
        zero = self.expect(NUM, "0")
        if int(zero.text) != 0:
            raise ParseError("ellipsis must start at 0", zero.span)
        self.expect(RPAREN, ")")
        marker = self.tok
        if marker.kind != ELLIPSIS:
            raise MalformedBinder("expected an ellipsis marker ...x", marker.span)
        if not self.sig.is_variable(marker.text):
            raise MalformedBinder(f"ellipsis binder {marker.text!r} is not a variable", marker.span)
        self.advance()
        copy_start = self.tok.start
        second = self.term()
        copy_end = self.toks[self.pos - 1].end
        self.expect(LPAREN, "(")
        bound = self.term()
        self.expect(RPAREN, ")")
        if second != first:
            raise BodyCopiesDiffer(
                "the two written copies of the ellipsis body differ",
                SourceSpan(copy_start, copy_end),
            )
        return marker.text, bound

    def _variadic(self, name, head):
        if self.tok.kind == LBRACE:
            return self._sugar(name)
        self.expect(LPAREN, "(")
        first = self.term()
        if self.tok.kind == LPAREN:
            binder, bound = self._ellipsis_tail(first)
            self.expect(RPAREN, ")")
            return Ellipsis(name, first, binder, bound)
        args = [first]
        while self.tok.kind == COMMA:
            self.advance()
            args.append(self.term())
        self.expect(RPAREN, ")")
        return VarApp(name, tuple(args))

    def _sugar(self, name):
        self.expect(LBRACE, "{")
        b = self.tok
        if b.kind != IDENT or not self.sig.is_variable(b.text):
            raise MalformedBinder("expected a binder variable", b.span)
        self.advance()
        self.expect(EQ, "=")
        zero = self.expect(NUM, "0")
        if int(zero.text) != 0:
            raise ParseError("ellipsis must start at 0", zero.span)
        self.expect(DOTDOT, "..")
        bound = self.term()
        self.expect(RBRACE, "}")
        self.expect(LPAREN, "(")
        body = self.term()
        self.expect(RPAREN, ")")
        return Ellipsis(name, body, b.text, bound)

    def _nary(self, name, head):
        self.expect(LPAREN, "(")
        n = self.sig.nary_by_variadic_fns[name]
        prefix = []
        if self.tok.kind == SEMI:
            self.advance()
        else:
            first = self.term()
            if self.tok.kind == LPAREN and n == 0:
                # prefix-free form without the separator
                binder, bound = self._ellipsis_tail(first)
                self.expect(RPAREN, ")")
                return NaryEllipsis(name, (), first, binder, bound)
            prefix.append(first)
            while self.tok.kind == COMMA:
                self.advance()
                prefix.append(self.term())
            self.expect(SEMI, ";")
        if len(prefix) != n:
            raise ArityMismatch(
                f"{name} takes {n} prefix arguments, got {len(prefix)}",
                SourceSpan(head.start, self.toks[self.pos - 1].end),
            )
        body = self.term()
        binder, bound = self._ellipsis_tail(body)
        self.expect(RPAREN, ")")
        return NaryEllipsis(name, tuple(prefix), body, binder, bound)

    # formulas

    def formula(self) -> Formula:
        left = self._implies()
        if self.tok.kind == IFF:
            self.advance()
            right = self.formula()
            return Iff(left, right)
        return left

    def _implies(self):
        left = self._or()
        if self.tok.kind == IMPLIES:
            self.advance()
            return Implies(left, self._implies())
        return left

    def _or(self):
        left = self._and()
        while self.tok.kind == OR:
            self.advance()
            left = Or(left, self._and())
        return left

    def _and(self):
        left = self._unary()
        while self.tok.kind == AND:
            self.advance()
            left = And(left, self._unary())
        return left

    def _unary(self):
        t = self.tok
        if t.kind == NOT:
            self.advance()
            return Not(self._unary())
        if t.kind == IDENT and t.text in ("forall", "exists"):
            self.advance()
            v = self.tok
            if v.kind != IDENT or not self.sig.is_variable(v.text):
                raise ParseError("expected a variable after the quantifier", v.span)
            self.advance()
            self.expect(DOT, ".")
            body = self.formula()
            return (Forall if t.text == "forall" else Exists)(v.text, body)
        return self._atom()

    def _atom(self):
        t = self.tok
        if t.kind == LPAREN:
            self.advance()
            inner = self.formula()
            self.expect(RPAREN, ")")
            return inner
        if t.kind == EQ:
            self.advance()
            self.expect(LPAREN, "(")
            lhs = self.term()
            self.expect(COMMA, ",")
            rhs = self.term()
            self.expect(RPAREN, ")")
            return Eq(lhs, rhs)
        if t.kind == IDENT and self.sig.kind_of(t.text) == L.PRED:
            self.advance()
            self.expect(LPAREN, "(")
            args = self._args()
            close = self.expect(RPAREN, ")")
            arity = self.sig.predicates[t.text]
            if len(args) != arity:
                raise ArityMismatch(
                    f"{t.text} takes {arity} arguments, got {len(args)}",
                    SourceSpan(t.start, close.end),
                )
            return Pred(t.text, tuple(args))
        lhs = self.term()
        op = self.tok
        if op.kind == EQ:
            self.advance()
            return Eq(lhs, self.term())
        if op.kind == OP and op.text == "<=" and self.sig.fixed_fns.get("<=") == 2:
            self.advance()
            return Eq(App("<=", (lhs, self.term())), Numeral(1))
        self._undeclared_call()
        raise ParseError(f"expected '=' or '<=' after a term, found {op.text or 'end of input'!r}", op.span)


def parse_term(src: str, sig: Signature | None = None) -> Term:
    p = _Parser(src, sig or std_signature())
    t = p.term()
    p.at_end()
    return t


def parse_formula(src: str, sig: Signature | None = None) -> Formula:
    p = _Parser(src, sig or std_signature())
    f = p.formula()
    p.at_end()
    return f


def print_term(t: Term) -> str:
    match t:
        case Numeral(v):
            return str(v)
        case Var(name) | Const(name):
            return name
        case App(fn, args) | VarApp(fn, args):
            return f"{fn}({', '.join(map(print_term, args))})"
        case Ellipsis(fn, body, x, bound):
            u = print_term(body)
            return f"{fn}({u}(0) ...{x} {u}({print_term(bound)}))"
        case NaryEllipsis(fn, prefix, body, x, bound):
            u = print_term(body)
            pre = ", ".join(map(print_term, prefix))
            return f"{fn}({pre}; {u}(0) ...{x} {u}({print_term(bound)}))"
    raise TypeError(f"not a term: {t!r}")


_BIN_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def _open_tail(phi) -> bool:
    """Would a connective printed right after `phi` be swallowed by it?"""
    if isinstance(phi, (Forall, Exists)):
        return True
    if isinstance(phi, Not):
        return _open_tail(phi.body)
    return False


def print_formula(phi: Formula) -> str:
    match phi:
        case Eq(lhs, rhs):
            return f"=({print_term(lhs)}, {print_term(rhs)})"
        case Pred(name, args):
            return f"{name}({', '.join(map(print_term, args))})"
        case Not(body):
            return f"~{print_formula(body)}"
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            left = print_formula(l)
            if _open_tail(l):
                left = f"({left})"
            return f"({left} {_BIN_OPS[type(phi)]} {print_formula(r)})"
        case Forall(x, body):
            return f"forall {x}. {print_formula(body)}"
        case Exists(x, body):
            return f"exists {x}. {print_formula(body)}"
    raise TypeError(f"not a formula: {phi!r}")
