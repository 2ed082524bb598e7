"""Simple types over the single base type ``o``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Union


@dataclass(frozen=True)
class Base:
    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True)
class Arrow:
    dom: "TypeExpr"
    cod: "TypeExpr"

    def __str__(self) -> str:
        left = str(self.dom)
        if isinstance(self.dom, Arrow):
            left = f"({left})"
        return f"{left} -> {self.cod}"


@dataclass(frozen=True)
class Prod:
    left: "TypeExpr"
    right: "TypeExpr"

    def __str__(self) -> str:
        def wrap(t: TypeExpr, left_side: bool) -> str:
            if isinstance(t, Arrow) or (left_side and isinstance(t, Prod)):
                return f"({t})"
            return str(t)

        # products associate to the right, like arrows
        return f"{wrap(self.left, True)} * {wrap(self.right, False)}"


@dataclass(frozen=True)
class Unit:
    def __str__(self) -> str:
        return "1"


TypeExpr = Union[Base, Arrow, Prod, Unit]

O = Base()
UNIT = Unit()


def arrows(*tys: TypeExpr) -> TypeExpr:
    """``arrows(A, B, C)`` is ``A -> B -> C``."""
    if not tys:
        raise ValueError("arrows() needs at least one type")
    return reduce(lambda acc, t: Arrow(t, acc), reversed(tys[:-1]), tys[-1])


def church_type(n_letters: int) -> TypeExpr:
    endo = Arrow(O, O)
    return arrows(*([endo] * n_letters), O, O)


def church_arity(ty: TypeExpr) -> int | None:
    """Number of letters if ``ty`` is a Church word type, else None.

    ``o -> o`` counts as the Church type of the empty alphabet.
    """
    endo = Arrow(O, O)
    n = 0
    while isinstance(ty, Arrow) and ty.dom == endo:
        ty, n = ty.cod, n + 1
    return n if ty == endo else None


def depth(ty: TypeExpr) -> int:
    """Height of the type tree counting only type constructors."""
    if isinstance(ty, (Base, Unit)):
        return 0
    if isinstance(ty, Arrow):
        return 1 + max(depth(ty.dom), depth(ty.cod))
    return 1 + max(depth(ty.left), depth(ty.right))


def order(ty: TypeExpr) -> int:
    if isinstance(ty, Arrow):
        return max(order(ty.dom) + 1, order(ty.cod))
    if isinstance(ty, Prod):
        return max(order(ty.left), order(ty.right))
    return 0


def uncurry(ty: TypeExpr) -> tuple[list[TypeExpr], TypeExpr]:
    args = []
    while isinstance(ty, Arrow):
        args.append(ty.dom)
        ty = ty.cod
    return args, ty


def is_first_order(ty: TypeExpr) -> bool:
    """True for ``o -> ... -> o`` with at least one argument."""
    args, res = uncurry(ty)
    return bool(args) and res == O and all(a == O for a in args)


def arrow_types(max_depth: int) -> Iterator[TypeExpr]:
    """All pure-arrow types of depth <= max_depth, smallest depth first."""
    levels: list[list[TypeExpr]] = [[O]]
    for d in range(1, max_depth + 1):
        seen = [t for lvl in levels for t in lvl]
        new = []
        for a in seen:
            for b in seen:
                t = Arrow(a, b)
                if depth(t) == d:
                    new.append(t)
        levels.append(new)
    for lvl in levels:
        yield from lvl


def is_inhabited(ty: TypeExpr) -> bool:
    """Decide whether a closed term of ``ty`` exists.

    Goal-directed proof search for intuitionistic implication/conjunction;
    a goal already on the search stack under the same hypotheses is failed,
    which keeps the search finite.
    """

    def atoms_of(hyps: frozenset, goal, stack) -> bool:
        if isinstance(goal, Unit):
            return True
        if isinstance(goal, Arrow):
            return prove(hyps | _split(goal.dom), goal.cod, stack)
        if isinstance(goal, Prod):
            return prove(hyps, goal.left, stack) and prove(hyps, goal.right, stack)
        return None  # base

    def prove(hyps: frozenset, goal, stack) -> bool:
        key = (hyps, goal)
        if key in stack:
            return False
        stack = stack | {key}
        r = atoms_of(hyps, goal, stack)
        if r is not None:
            return r
        for h in hyps:
            args, res = uncurry(h)
            if res == goal and all(prove(hyps, a, stack) for a in args):
                return True
        return False

    return prove(frozenset(), ty, frozenset())


def _split(ty: TypeExpr) -> frozenset:
    """Hypothesis ``A * B`` is as good as hypotheses ``A`` and ``B``."""
    if isinstance(ty, Prod):
        return _split(ty.left) | _split(ty.right)
    if isinstance(ty, Unit):
        return frozenset()
    args, res = uncurry(ty)
    if isinstance(res, (Prod, Unit)) and args:
        # A -> (B * C) splits into A -> B and A -> C
        out = frozenset()
        for part in _split(res):
            out |= frozenset([arrows(*args, part)])
        return out
    return frozenset([ty])
