"""Type-directed enumeration of beta-normal eta-long terms by node count."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .terms import App, Fst, Lam, Pair, Snd, Term, UnitVal, Var
from .types import Arrow, Base, Prod, TypeExpr, Unit


def long_normal_forms(ty: TypeExpr, size: int, ctx: tuple = ()) -> tuple[Term, ...]:
    """Every beta-normal eta-long term of ``ty`` in ``ctx`` with exactly ``size`` nodes.

    The order is deterministic: variables are tried from the outermost
    binder inwards and argument sizes in increasing order.
    """
    return _forms(ty, tuple(ctx), size)


def closed_normal_forms(ty: TypeExpr, max_size: int) -> Iterator[Term]:
    for n in range(1, max_size + 1):
        yield from _forms(ty, (), n)


@lru_cache(maxsize=None)
def _forms(ty: TypeExpr, ctx: tuple, n: int) -> tuple[Term, ...]:
    if n <= 0:
        return ()
    if isinstance(ty, Arrow):
        hint = _hint(ty.dom, len(ctx))
        return tuple(Lam(ty.dom, b, hint) for b in _forms(ty.cod, ctx + (ty.dom,), n - 1))
    if isinstance(ty, Prod):
        out = []
        for k in range(1, n - 1):
            for left in _forms(ty.left, ctx, k):
                for right in _forms(ty.right, ctx, n - 1 - k):
                    out.append(Pair(left, right))
        return tuple(out)
    if isinstance(ty, Unit):
        return (UnitVal(),) if n == 1 else ()
    assert isinstance(ty, Base)
    out = []
    for level, vty in enumerate(ctx):
        head = Var(len(ctx) - 1 - level)
        for elims in _spines(vty, ctx, n - 1):
            t: Term = head
            for e in elims:
                if e == "fst":
                    t = Fst(t)
                elif e == "snd":
                    t = Snd(t)
                else:
                    t = App(t, e)
            out.append(t)
    return tuple(out)


def _hint(ty: TypeExpr, level: int) -> str:
    names = "fgh" if isinstance(ty, Arrow) else "xyzuvw"
    return names[level % len(names)]


@lru_cache(maxsize=None)
def _spines(ty: TypeExpr, ctx: tuple, n: int) -> tuple[tuple, ...]:
    """Elimination sequences taking a head of type ``ty`` to ``o`` in ``n`` nodes."""
    if isinstance(ty, Base):
        return ((),) if n == 0 else ()
    if n <= 0:
        return ()
    if isinstance(ty, Arrow):
        out = []
        for k in range(1, n):
            for arg in _forms(ty.dom, ctx, k):
                for rest in _spines(ty.cod, ctx, n - 1 - k):
                    out.append((arg,) + rest)
        return tuple(out)
    if isinstance(ty, Prod):
        return tuple(("fst",) + r for r in _spines(ty.left, ctx, n - 1)) + tuple(
            ("snd",) + r for r in _spines(ty.right, ctx, n - 1)
        )
    return ()
