"""The finite standard model over canonical sets ``[q] = {0, ..., q-1}``.

Element encoding:

* base type: the point of ``[q]`` itself;
* ``A -> B``: the function table read as a little-endian numeral in base
  ``|B|``, i.e. ``sum(table[x] * |B|**x)``;
* ``A * B``: ``i_A + |A| * i_B``;
* unit: 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterator, Sequence

from ._decimal import from_decimal, to_decimal
from .errors import MismatchError, SizeCapError
from .syntax import App, Arrow, Base, Fst, Lam, Pair, Prod, Snd, Term, TypeExpr, Unit, UnitVal, Var
from .syntax import parse_type, typecheck

DEFAULT_CAP = 2**20


@lru_cache(maxsize=None)
def type_size(ty: TypeExpr, q: int) -> int:
    """Exact cardinality of the denotation of ``ty`` over ``[q]``."""
    if isinstance(ty, Base):
        return q
    if isinstance(ty, Unit):
        return 1
    if isinstance(ty, Arrow):
        return type_size(ty.cod, q) ** type_size(ty.dom, q)
    return type_size(ty.left, q) * type_size(ty.right, q)


@lru_cache(maxsize=1 << 16)
def _pow(base: int, exp: int) -> int:
    return base**exp


def digit(g: int, base: int, x: int) -> int:
    """Entry ``x`` of the function table encoded by ``g``."""
    if base & (base - 1) == 0:
        if base == 1:
            return 0
        bits = base.bit_length() - 1
        return (g >> (x * bits)) & (base - 1)
    return (g // _pow(base, x)) % base


def encode(table: Sequence[int], base: int) -> int:
    if base & (base - 1) == 0 and base > 1:
        bits = base.bit_length() - 1
        acc = 0
        for v in reversed(table):
            acc = (acc << bits) | v
        return acc
    acc = 0
    for v in reversed(table):
        acc = acc * base + v
    return acc


def decode(g: int, base: int, length: int) -> list[int]:
    if base & (base - 1) == 0:
        return [digit(g, base, x) for x in range(length)]
    out = []
    for _ in range(length):
        g, r = divmod(g, base)
        out.append(r)
    return out


@dataclass(frozen=True)
class Den:
    """Descriptor of the denotation of ``type`` over ``[q]``; nothing is materialized."""

    type: TypeExpr
    q: int
    cap: int = field(default=DEFAULT_CAP, compare=False)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")

    @cached_property
    def size(self) -> int:
        return type_size(self.type, self.q)

    def _part(self, ty: TypeExpr) -> "Den":
        return Den(ty, self.q, self.cap)

    @cached_property
    def dom(self) -> "Den":
        self._need(Arrow)
        return self._part(self.type.dom)

    @cached_property
    def cod(self) -> "Den":
        self._need(Arrow)
        return self._part(self.type.cod)

    @cached_property
    def left(self) -> "Den":
        self._need(Prod)
        return self._part(self.type.left)

    @cached_property
    def right(self) -> "Den":
        self._need(Prod)
        return self._part(self.type.right)

    def _need(self, kind) -> None:
        if not isinstance(self.type, kind):
            raise MismatchError(f"type {self.type} is not a{'n arrow' if kind is Arrow else ' product'}")

    def check_cap(self, what: str = "enumerating") -> None:
        if self.size > self.cap:
            raise SizeCapError(f"{what} [[{self.type}]] at q={self.q}", self.size, self.cap)

    def check_table(self) -> None:
        """A function table of this arrow type has ``dom.size`` entries."""
        n = self.dom.size
        if n > self.cap:
            raise SizeCapError(f"tabulating [[{self.type}]] at q={self.q}", n, self.cap)

    def indices(self) -> range:
        self.check_cap()
        return range(self.size)

    def elements(self) -> Iterator["Element"]:
        for i in self.indices():
            yield Element(self, i)

    def element(self, index: int) -> "Element":
        return Element(self, index)


@dataclass(frozen=True)
class Element:
    den: Den
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.den.size:
            raise ValueError(f"index out of range for [[{self.den.type}]] at q={self.den.q}")

    @property
    def type(self) -> TypeExpr:
        return self.den.type

    @property
    def q(self) -> int:
        return self.den.q

    def table(self) -> list[int]:
        """Function-table view (arrow types only)."""
        self.den.check_table()
        return decode(self.index, self.den.cod.size, self.den.dom.size)

    def __call__(self, x: "Element") -> "Element":
        return apply(self, x)

    def to_json(self) -> dict:
        return {"type": str(self.type), "q": self.q, "index": to_decimal(self.index)}

    @classmethod
    def from_json(cls, obj: dict, cap: int = DEFAULT_CAP) -> "Element":
        return cls(Den(parse_type(obj["type"]), int(obj["q"]), cap), from_decimal(str(obj["index"])))

    def __repr__(self) -> str:
        idx = to_decimal(self.index)
        if len(idx) > 24:
            idx = idx[:10] + "..." + idx[-10:]
        return f"Element({self.type}, q={self.q}, index={idx})"


def den(ty: TypeExpr, q: int, cap: int = DEFAULT_CAP) -> Den:
    return Den(ty, q, cap)


def apply(g: Element, x: Element) -> Element:
    d = g.den
    if not isinstance(d.type, Arrow):
        raise MismatchError(f"cannot apply an element of {d.type}")
    if x.den.type != d.type.dom or x.q != d.q:
        raise MismatchError(f"argument in [[{x.type}]]_{x.q}, expected [[{d.type.dom}]]_{d.q}")
    cod = d.cod
    return Element(cod, digit(g.index, cod.size, x.index))


def tabulate(h: Callable[[Element], Element], d: Den) -> Element:
    """The element of the arrow den ``d`` whose table is ``h``."""
    d.check_table()
    cod = d.cod
    table = []
    for x in d.dom.indices():
        y = h(Element(d.dom, x))
        if y.den.type != cod.type or y.q != cod.q:
            raise MismatchError(f"tabulated function returned [[{y.type}]]_{y.q}, expected [[{cod.type}]]_{cod.q}")
        table.append(y.index)
    return Element(d, encode(table, cod.size))


def from_table(d: Den, table: Sequence[int]) -> Element:
    d.check_table()
    if len(table) != d.dom.size or any(not 0 <= v < d.cod.size for v in table):
        raise MismatchError(f"not a function table for [[{d.type}]] at q={d.q}")
    return Element(d, encode(table, d.cod.size))


def compose_elements(f: Element, g: Element) -> Element:
    """``x |-> g(f(x))`` for ``f`` at ``A -> B`` and ``g`` at ``B -> C``."""
    if not (isinstance(f.type, Arrow) and isinstance(g.type, Arrow)):
        raise MismatchError("compose_elements needs two arrow elements")
    if f.type.cod != g.type.dom or f.q != g.q:
        raise MismatchError(f"cannot compose [[{f.type}]]_{f.q} with [[{g.type}]]_{g.q}")
    d = Den(Arrow(f.type.dom, g.type.cod), f.q, f.den.cap)
    d.check_table()
    fb, gb = f.den.cod.size, g.den.cod.size
    table = [digit(g.index, gb, digit(f.index, fb, x)) for x in range(d.dom.size)]
    return Element(d, encode(table, gb))


def pair_element(a: Element, b: Element) -> Element:
    d = Den(Prod(a.type, b.type), a.q, a.den.cap)
    return Element(d, a.index + a.den.size * b.index)


def interpret(t: Term, q: int, env: Sequence[Element] = (), cap: int = DEFAULT_CAP) -> Element:
    """The semantic bracket of ``t`` over ``[q]`` in environment ``env``.

    ``env`` is listed outermost first, matching the term's context.
    """
    ctx = tuple(e.type for e in env)
    for e in env:
        if e.q != q:
            raise MismatchError(f"environment element at q={e.q}, expected q={q}")
    ty = typecheck(t, ctx)
    run = _compile(t, ctx, q, cap)
    return Element(Den(ty, q, cap), run(tuple(e.index for e in env)))


def _compile(t: Term, ctx: tuple, q: int, cap: int) -> Callable[[tuple], int]:
    """Turn ``t`` into a function from environments of indices to an index."""
    if isinstance(t, Var):
        i = -1 - t.index
        return lambda env: env[i]
    if isinstance(t, Lam):
        body_ty = typecheck(t.body, ctx + (t.ty,))
        n = type_size(t.ty, q)
        if n > cap:
            raise SizeCapError(f"tabulating [[{Arrow(t.ty, body_ty)}]] at q={q}", n, cap)
        base = type_size(body_ty, q)
        body = _compile(t.body, ctx + (t.ty,), q, cap)
        xs = range(n)
        return lambda env: encode([body(env + (x,)) for x in xs], base)
    if isinstance(t, App):
        fty = typecheck(t.fun, ctx)
        base = type_size(fty.cod, q)
        fun = _compile(t.fun, ctx, q, cap)
        arg = _compile(t.arg, ctx, q, cap)
        return lambda env: digit(fun(env), base, arg(env))
    if isinstance(t, Pair):
        lsize = type_size(typecheck(t.left, ctx), q)
        left = _compile(t.left, ctx, q, cap)
        right = _compile(t.right, ctx, q, cap)
        return lambda env: left(env) + lsize * right(env)
    if isinstance(t, (Fst, Snd)):
        pty = typecheck(t.pair, ctx)
        lsize = type_size(pty.left, q)
        inner = _compile(t.pair, ctx, q, cap)
        if isinstance(t, Fst):
            return lambda env: inner(env) % lsize
        return lambda env: inner(env) // lsize
    assert isinstance(t, UnitVal)
    return lambda env: 0
