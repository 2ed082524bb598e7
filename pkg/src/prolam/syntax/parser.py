"""Concrete syntax.

Grammar::

    type   ::= prod ('->' type)?           arrows associate to the right
    prod   ::= tatom ('*' tatom)*          binds tighter than arrows, associates to the right
    tatom  ::= 'o' | '1' | '(' type ')'

    term   ::= ('\\' | 'λ') IDENT ':' type '.' term
             | app
    app    ::= atom atom*                  application associates to the left
    atom   ::= IDENT | '(' ')' | '(' term ')' | '(' term ',' term ')'
             | 'fst' atom | 'snd' atom

A lambda body extends as far to the right as possible.
"""

from __future__ import annotations

import re
from typing import Sequence

from ..errors import ParseError
from .terms import App, Fst, Lam, Pair, Snd, Term, UnitVal, Var, typecheck
from .types import Arrow, O, Prod, TypeExpr, UNIT

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<lam>\\|λ)|(?P<sym>[().:,*])|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<one>1))"
)
_KEYWORDS = {"fst", "snd"}


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            bad = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ParseError(f"unexpected character {src[bad]!r}", bad, src)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("eof", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        kind, val, pos = self.next()
        if val != text:
            got = val or "end of input"
            raise ParseError(f"expected {text!r}, got {got!r}", pos, self.src)

    def at(self, text: str) -> bool:
        return self.peek()[1] == text

    def done(self) -> None:
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r}", pos, self.src)

    # types

    def type(self) -> TypeExpr:
        left = self.prod()
        if self.peek()[0] == "arrow":
            self.next()
            return Arrow(left, self.type())
        return left

    def prod(self) -> TypeExpr:
        parts = [self.tatom()]
        while self.at("*"):
            self.next()
            parts.append(self.tatom())
        ty = parts[-1]
        for p in reversed(parts[:-1]):
            ty = Prod(p, ty)
        return ty

    def tatom(self) -> TypeExpr:
        kind, val, pos = self.next()
        if val == "o":
            return O
        if kind == "one":
            return UNIT
        if val == "(":
            ty = self.type()
            self.expect(")")
            return ty
        raise ParseError(f"expected a type, got {val or 'end of input'!r}", pos, self.src)

    # terms; scope is a list of names, innermost last

    def term(self, scope: list[str]) -> Term:
        if self.peek()[0] == "lam":
            self.next()
            kind, name, pos = self.next()
            if kind != "ident" or name in _KEYWORDS:
                raise ParseError(f"expected a binder name, got {name!r}", pos, self.src)
            self.expect(":")
            ty = self.type()
            self.expect(".")
            body = self.term(scope + [name])
            return Lam(ty, body, name)
        return self.app(scope)

    def starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind == "ident" or val == "("

    def app(self, scope: list[str]) -> Term:
        t = self.atom(scope)
        while self.starts_atom() or self.peek()[0] == "lam":
            if self.peek()[0] == "lam":
                t = App(t, self.term(scope))
                break
            t = App(t, self.atom(scope))
        return t

    def atom(self, scope: list[str]) -> Term:
        kind, val, pos = self.next()
        if kind == "ident":
            if val in _KEYWORDS:
                arg = self.atom(scope)
                return Fst(arg) if val == "fst" else Snd(arg)
            for i, name in enumerate(reversed(scope)):
                if name == val:
                    return Var(i)
            raise ParseError(f"unbound variable {val!r}", pos, self.src)
        if val == "(":
            if self.at(")"):
                self.next()
                return UnitVal()
            t = self.term(scope)
            if self.at(","):
                self.next()
                u = self.term(scope)
                self.expect(")")
                return Pair(t, u)
            self.expect(")")
            return t
        raise ParseError(f"expected a term, got {val or 'end of input'!r}", pos, self.src)


def parse_type(src: str) -> TypeExpr:
    p = _Parser(src)
    ty = p.type()
    p.done()
    return ty


def parse_term(src: str, ctx: Sequence[tuple[str, TypeExpr]] = ()) -> Term:
    """Parse and typecheck ``src``; ``ctx`` lists free variables outermost first."""
    p = _Parser(src)
    t = p.term([name for name, _ in ctx])
    p.done()
    typecheck(t, [ty for _, ty in ctx])
    return t


def show(t: Term, ctx_names: Sequence[str] = ()) -> str:
    """Print with fresh, non-shadowing binder names so output re-parses."""
    return _show(t, list(ctx_names), 0)


def _fresh(hint: str, scope: list[str]) -> str:
    base = hint if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", hint) and hint not in _KEYWORDS else "x"
    if base not in scope:
        return base
    n = 1
    while f"{base}{n}" in scope:
        n += 1
    return f"{base}{n}"


def _show(t: Term, scope: list[str], prec: int) -> str:
    # prec 0: anywhere, 1: function position, 2: argument position
    if isinstance(t, Var):
        if t.index < len(scope):
            return scope[-1 - t.index]
        return f"#{t.index}"
    if isinstance(t, Lam):
        name = _fresh(t.hint, scope)
        s = f"\\{name}:{t.ty}. {_show(t.body, scope + [name], 0)}"
        return f"({s})" if prec > 0 else s
    if isinstance(t, App):
        s = f"{_show(t.fun, scope, 1)} {_show(t.arg, scope, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(t, Pair):
        return f"({_show(t.left, scope, 0)}, {_show(t.right, scope, 0)})"
    if isinstance(t, (Fst, Snd)):
        kw = "fst" if isinstance(t, Fst) else "snd"
        s = f"{kw} {_show(t.pair, scope, 2)}"
        return f"({s})" if prec > 1 else s
    return "()"
