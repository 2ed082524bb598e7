"""Nameless terms.

Variables are de Bruijn indices; ``Var(0)`` is the innermost binder.  A
context is a tuple of types listed outermost first, so ``Var(i)`` in context
``ctx`` has type ``ctx[-1 - i]``.  Binder names survive only as printing
hints and never take part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from ..errors import TypeCheckError
from .types import Arrow, Prod, TypeExpr, UNIT


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Lam:
    ty: TypeExpr
    body: "Term"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Fst:
    pair: "Term"


@dataclass(frozen=True)
class Snd:
    pair: "Term"


@dataclass(frozen=True)
class UnitVal:
    pass


Term = Union[Var, Lam, App, Pair, Fst, Snd, UnitVal]


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def size(t: Term) -> int:
    """Node count; every constructor counts one."""
    if isinstance(t, (Var, UnitVal)):
        return 1
    if isinstance(t, Lam):
        return 1 + size(t.body)
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    if isinstance(t, Pair):
        return 1 + size(t.left) + size(t.right)
    return 1 + size(t.pair)


def typecheck(t: Term, ctx: Sequence[TypeExpr] = ()) -> TypeExpr:
    """Return the type of ``t`` in ``ctx`` or raise TypeCheckError."""
    return _infer(t, tuple(ctx), ())


def _infer(t: Term, ctx: tuple, path: tuple) -> TypeExpr:
    if isinstance(t, Var):
        if not 0 <= t.index < len(ctx):
            raise TypeCheckError(f"unbound variable index {t.index}", path)
        return ctx[-1 - t.index]
    if isinstance(t, Lam):
        return Arrow(t.ty, _infer(t.body, ctx + (t.ty,), path + ("body",)))
    if isinstance(t, App):
        f = _infer(t.fun, ctx, path + ("fun",))
        a = _infer(t.arg, ctx, path + ("arg",))
        if not isinstance(f, Arrow):
            raise TypeCheckError(f"applying a term of non-function type {f}", path)
        if f.dom != a:
            raise TypeCheckError(f"argument has type {a}, expected {f.dom}", path + ("arg",))
        return f.cod
    if isinstance(t, Pair):
        return Prod(_infer(t.left, ctx, path + ("left",)), _infer(t.right, ctx, path + ("right",)))
    if isinstance(t, (Fst, Snd)):
        p = _infer(t.pair, ctx, path + ("pair",))
        if not isinstance(p, Prod):
            raise TypeCheckError(f"projection from non-product type {p}", path)
        return p.left if isinstance(t, Fst) else p.right
    if isinstance(t, UnitVal):
        return UNIT
    raise TypeError(f"not a term: {t!r}")


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    if isinstance(t, Var):
        return Var(t.index + by) if t.index >= cutoff else t
    if isinstance(t, Lam):
        return Lam(t.ty, shift(t.body, by, cutoff + 1), t.hint)
    if isinstance(t, App):
        return App(shift(t.fun, by, cutoff), shift(t.arg, by, cutoff))
    if isinstance(t, Pair):
        return Pair(shift(t.left, by, cutoff), shift(t.right, by, cutoff))
    if isinstance(t, Fst):
        return Fst(shift(t.pair, by, cutoff))
    if isinstance(t, Snd):
        return Snd(shift(t.pair, by, cutoff))
    return t


def is_closed(t: Term, depth: int = 0) -> bool:
    if isinstance(t, Var):
        return t.index < depth
    if isinstance(t, Lam):
        return is_closed(t.body, depth + 1)
    if isinstance(t, App):
        return is_closed(t.fun, depth) and is_closed(t.arg, depth)
    if isinstance(t, Pair):
        return is_closed(t.left, depth) and is_closed(t.right, depth)
    if isinstance(t, (Fst, Snd)):
        return is_closed(t.pair, depth)
    return True
