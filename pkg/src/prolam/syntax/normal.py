"""beta-normal eta-long forms by normalization by evaluation.

Semantic values: Python callables at arrow types, 2-tuples at products,
``None`` at unit and ``_Neutral`` at the base type.  Neutral syntax is kept
as a function of the current binder depth so that de Bruijn indices can be
produced without any shifting.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .terms import App, Fst, Lam, Pair, Snd, Term, UnitVal, Var, typecheck
from .types import Arrow, Base, Prod, TypeExpr, Unit

_Syn = Callable[[int], Term]


class _Neutral:
    __slots__ = ("syn",)

    def __init__(self, syn: _Syn):
        self.syn = syn


def _eval(t: Term, env: tuple):
    if isinstance(t, Var):
        return env[-1 - t.index]
    if isinstance(t, Lam):
        return lambda v, body=t.body, env=env: _eval(body, env + (v,))
    if isinstance(t, App):
        return _eval(t.fun, env)(_eval(t.arg, env))
    if isinstance(t, Pair):
        return (_eval(t.left, env), _eval(t.right, env))
    if isinstance(t, Fst):
        return _eval(t.pair, env)[0]
    if isinstance(t, Snd):
        return _eval(t.pair, env)[1]
    return None


def _reflect(ty: TypeExpr, syn: _Syn):
    if isinstance(ty, Arrow):
        return lambda v: _reflect(ty.cod, lambda d: App(syn(d), _reify(ty.dom, v, d)))
    if isinstance(ty, Prod):
        return (_reflect(ty.left, lambda d: Fst(syn(d))), _reflect(ty.right, lambda d: Snd(syn(d))))
    if isinstance(ty, Unit):
        return None
    return _Neutral(syn)


def _var_at_level(level: int) -> _Syn:
    return lambda d: Var(d - level - 1)


def _reify(ty: TypeExpr, v, d: int, hint: str = "x") -> Term:
    if isinstance(ty, Arrow):
        body = _reify(ty.cod, v(_reflect(ty.dom, _var_at_level(d))), d + 1)
        return Lam(ty.dom, body, hint)
    if isinstance(ty, Prod):
        return Pair(_reify(ty.left, v[0], d), _reify(ty.right, v[1], d))
    if isinstance(ty, Unit):
        return UnitVal()
    assert isinstance(ty, Base)
    return v.syn(d)


def normalize(t: Term, ctx: Sequence[TypeExpr] = ()) -> Term:
    """The beta-normal eta-long form of ``t`` (same context, same type)."""
    ctx = tuple(ctx)
    ty = typecheck(t, ctx)
    env = tuple(_reflect(a, _var_at_level(i)) for i, a in enumerate(ctx))
    nf = _reify(ty, _eval(t, env), len(ctx))
    return _restore_hints(t, nf)


def _restore_hints(src: Term, nf: Term) -> Term:
    """Reuse the source's outer binder names for readability."""
    hints = []
    while isinstance(src, Lam):
        hints.append(src.hint)
        src = src.body

    def go(t: Term, i: int) -> Term:
        if isinstance(t, Lam):
            hint = hints[i] if i < len(hints) else ("f" if isinstance(t.ty, Arrow) else "x")
            return Lam(t.ty, go(t.body, i + 1), hint)
        return t

    return go(nf, 0)


def beta_eta_equal(m: Term, n: Term, ctx: Sequence[TypeExpr] = ()) -> bool:
    return typecheck(m, ctx) == typecheck(n, ctx) and normalize(m, ctx) == normalize(n, ctx)
