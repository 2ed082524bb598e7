"""Relations between canonical finite sets, logical relations and partial surjections.

Sets are identified with ``range(n)``; at higher types the carrier is the
index space of a denotation (see :mod:`prolam.model`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .errors import InvariantViolation, MismatchError, SizeCapError
from .model import DEFAULT_CAP, Den, Element, decode, digit, encode, type_size
from .syntax import Arrow, Base, Prod, TypeExpr, Unit


@dataclass(frozen=True)
class Relation:
    """``pairs`` is a subset of ``range(q) x range(q2)``."""

    q: int
    q2: int
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for i, j in self.pairs:
            if not (0 <= i < self.q and 0 <= j < self.q2):
                raise ValueError(f"pair {(i, j)} out of bounds for [{self.q}] x [{self.q2}]")

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    @classmethod
    def diagonal(cls, q: int) -> "Relation":
        return cls(q, q, frozenset((i, i) for i in range(q)))

    @classmethod
    def full(cls, q: int, q2: int) -> "Relation":
        return cls(q, q2, frozenset(itertools.product(range(q), range(q2))))

    @classmethod
    def from_mask(cls, q: int, q2: int, mask: int) -> "Relation":
        """Bit ``i * q2 + j`` of ``mask`` decides the pair ``(i, j)``."""
        return cls(q, q2, frozenset((i, j) for i in range(q) for j in range(q2) if mask >> (i * q2 + j) & 1))

    @classmethod
    def all(cls, q: int, q2: int) -> Iterator["Relation"]:
        for mask in range(1 << (q * q2)):
            yield cls.from_mask(q, q2, mask)

    def to_json(self) -> dict:
        return {"q": self.q, "q2": self.q2, "pairs": [list(p) for p in self.sorted_pairs()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Relation":
        return cls(int(obj["q"]), int(obj["q2"]), frozenset(tuple(p) for p in obj["pairs"]))


@dataclass(frozen=True)
class PartialSurjection:
    """A surjective partial function ``[q] -> [q2]``; ``None`` marks undefined points."""

    q: int
    q2: int
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.q:
            raise ValueError(f"map has length {len(self.map)}, expected {self.q}")
        hit = set()
        for v in self.map:
            if v is None:
                continue
            if not 0 <= v < self.q2:
                raise ValueError(f"value {v} out of range [{self.q2}]")
            hit.add(v)
        if len(hit) != self.q2:
            raise ValueError(f"not surjective onto [{self.q2}]: image {sorted(hit)}")

    def __call__(self, x: int) -> Optional[int]:
        return self.map[x]

    @property
    def domain(self) -> list[int]:
        return [i for i, v in enumerate(self.map) if v is not None]

    def graph(self) -> Relation:
        return Relation(self.q, self.q2, frozenset((i, v) for i, v in enumerate(self.map) if v is not None))

    def span(self) -> tuple[list[tuple[int, int]], list[int], list[int]]:
        """Apex (the graph), its injective leg to ``[q]`` and surjective leg to ``[q2]``."""
        apex = sorted(self.graph().pairs)
        return apex, [i for i, _ in apex], [j for _, j in apex]

    @classmethod
    def from_relation(cls, r: Relation) -> "PartialSurjection":
        """Convert a relation that is a functional, surjective graph; ValueError otherwise."""
        m: list[Optional[int]] = [None] * r.q
        for i, j in r.sorted_pairs():
            if m[i] is not None:
                raise ValueError(f"relation is not functional at {i}")
            m[i] = j
        return cls(r.q, r.q2, tuple(m))

    @classmethod
    def identity(cls, q: int) -> "PartialSurjection":
        return cls(q, q, tuple(range(q)))

    @classmethod
    def inclusion(cls, q: int, q2: int) -> "PartialSurjection":
        """Identity on ``[q2]``, undefined on ``q2..q-1``."""
        if q2 > q:
            raise MismatchError(f"no partial surjection [{q}] -> [{q2}]")
        return cls(q, q2, tuple(range(q2)) + (None,) * (q - q2))

    @classmethod
    def coproduct_projection(cls, q1: int, q2: int, which: int) -> "PartialSurjection":
        """``[q1 + q2] -> [q_which]`` keeping one block of the coproduct."""
        if which == 0:
            return cls(q1 + q2, q1, tuple(range(q1)) + (None,) * q2)
        return cls(q1 + q2, q2, (None,) * q1 + tuple(range(q2)))

    @classmethod
    def all(cls, q: int, q2: int) -> Iterator["PartialSurjection"]:
        """Every partial surjection ``[q] -> [q2]``: domains by size then lexicographically, maps lexicographically."""
        for k in range(q2, q + 1):
            for dom in itertools.combinations(range(q), k):
                for values in itertools.product(range(q2), repeat=k):
                    if len(set(values)) != q2:
                        continue
                    m: list[Optional[int]] = [None] * q
                    for i, v in zip(dom, values):
                        m[i] = v
                    yield cls(q, q2, tuple(m))

    def to_json(self) -> dict:
        return {"q": self.q, "q2": self.q2, "map": list(self.map)}

    @classmethod
    def from_json(cls, obj: dict) -> "PartialSurjection":
        return cls(int(obj["q"]), int(obj["q2"]), tuple(obj["map"]))


# --- exponentials on raw index spaces -------------------------------------


def rel_exponential(s: Relation, r: Relation, cap: int = DEFAULT_CAP) -> Relation:
    """``S => R``: pairs of tables ``(g, h)`` with ``(g x, h y) in R`` whenever ``(x, y) in S``.

    ``g`` ranges over functions ``[s.q] -> [r.q]`` and ``h`` over
    ``[s.q2] -> [r.q2]``, both in the little-endian table encoding.
    """
    n_g, n_h = r.q**s.q, r.q2**s.q2
    if n_g * n_h > cap:
        raise SizeCapError("materializing a relation exponential", n_g * n_h, cap)
    gs = [decode(g, r.q, s.q) for g in range(n_g)]
    hs = [decode(h, r.q2, s.q2) for h in range(n_h)]
    sp = s.sorted_pairs()
    out = set()
    for g, gt in enumerate(gs):
        for h, ht in enumerate(hs):
            if all((gt[x], ht[y]) in r.pairs for x, y in sp):
                out.add((g, h))
    return Relation(n_g, n_h, frozenset(out))


def psurj_exponential(e: PartialSurjection, f: PartialSurjection, cap: int = DEFAULT_CAP) -> PartialSurjection:
    """``e => f`` computed as a partial function.

    ``g`` is in the domain iff ``f(g(x))`` is defined for every ``x`` in
    ``dom(e)`` and only depends on ``e(x)``; the image ``h`` is then forced
    on all of ``[e.q2]`` because ``e`` is surjective.
    """
    n_g, n_h = f.q**e.q, f.q2**e.q2
    if n_g > cap:
        raise SizeCapError("materializing a partial-surjection exponential", n_g, cap)
    dom_e = [(x, e(x)) for x in e.domain]
    m: list[Optional[int]] = []
    for g in range(n_g):
        gt = decode(g, f.q, e.q)
        ht: list[Optional[int]] = [None] * e.q2
        ok = True
        for x, x2 in dom_e:
            y = f(gt[x])
            if y is None or (ht[x2] is not None and ht[x2] != y):
                ok = False
                break
            ht[x2] = y
        m.append(encode(ht, f.q2) if ok else None)
    try:
        return PartialSurjection(n_g, n_h, tuple(m))
    except ValueError as exc:
        raise InvariantViolation(f"exponential of partial surjections is not one: {exc}") from exc


# --- logical relations over simple types ----------------------------------


def _check_same_rel(ty: TypeExpr, r: Relation, x: Element, y: Element) -> None:
    if x.type != ty or y.type != ty:
        raise MismatchError(f"elements must both live at type {ty}")
    if (x.q, y.q) != (r.q, r.q2):
        raise MismatchError(f"elements at q={x.q}, q'={y.q} but relation is on [{r.q}] x [{r.q2}]")


def logical_relation_member(ty: TypeExpr, r: Relation, x: Element, y: Element) -> bool:
    """Decide ``(x, y) in [[ty]](R)`` by recursion, quantifying over argument pairs."""
    _check_same_rel(ty, r, x, y)
    return _member(ty, r, x.index, y.index, x.den.cap)


def _member(ty: TypeExpr, r: Relation, x: int, y: int, cap: int) -> bool:
    if isinstance(ty, Base):
        return (x, y) in r.pairs
    if isinstance(ty, Unit):
        return True
    if isinstance(ty, Prod):
        ax, ay = type_size(ty.left, r.q), type_size(ty.left, r.q2)
        return _member(ty.left, r, x % ax, y % ay, cap) and _member(ty.right, r, x // ax, y // ay, cap)
    bx, by = type_size(ty.cod, r.q), type_size(ty.cod, r.q2)
    for u, v in _pairs(ty.dom, r, cap):
        if not _member(ty.cod, r, digit(x, bx, u), digit(y, by, v), cap):
            return False
    return True


@lru_cache(maxsize=4096)
def _pairs(ty: TypeExpr, r: Relation, cap: int) -> tuple[tuple[int, int], ...]:
    """Materialize ``[[ty]](R)`` as sorted pairs of indices."""
    if isinstance(ty, Base):
        return tuple(r.sorted_pairs())
    nx, ny = type_size(ty, r.q), type_size(ty, r.q2)
    if nx * ny > cap:
        raise SizeCapError(f"materializing the logical relation at {ty} over [{r.q}] x [{r.q2}]", nx * ny, cap)
    return tuple((x, y) for x in range(nx) for y in range(ny) if _member(ty, r, x, y, cap))


def logical_relation(ty: TypeExpr, r: Relation, cap: int = DEFAULT_CAP) -> Relation:
    """``[[ty]](R)`` materialized between the two index spaces."""
    return Relation(type_size(ty, r.q), type_size(ty, r.q2), frozenset(_pairs(ty, r, cap)))


def logical_relation_of_psurj(ty: TypeExpr, f: PartialSurjection, cap: int = DEFAULT_CAP) -> PartialSurjection:
    """``[[ty]](f)`` as a partial surjection between index spaces."""
    return _psurj_at(ty, f, cap)


@lru_cache(maxsize=1024)
def _psurj_at(ty: TypeExpr, f: PartialSurjection, cap: int) -> PartialSurjection:
    if isinstance(ty, Base):
        return f
    if isinstance(ty, Unit):
        return PartialSurjection.identity(1)
    if isinstance(ty, Arrow):
        return psurj_exponential(_psurj_at(ty.dom, f, cap), _psurj_at(ty.cod, f, cap), cap)
    n = type_size(ty, f.q)
    if n > cap:
        raise SizeCapError(f"materializing [[{ty}]](f)", n, cap)
    return PartialSurjection(n, type_size(ty, f.q2), tuple(_image(ty, f, x, cap) for x in range(n)))


def psurj_image(ty: TypeExpr, f: PartialSurjection, x: Element) -> Optional[Element]:
    """``[[ty]](f)(x)`` without materializing the partial surjection at ``ty`` itself.

    Only the argument types are materialized, so this works at types whose
    own denotation is far beyond the cap.
    """
    if x.type != ty or x.q != f.q:
        raise MismatchError(f"element at [[{x.type}]]_{x.q}, expected [[{ty}]]_{f.q}")
    v = _image(ty, f, x.index, x.den.cap)
    return None if v is None else Element(Den(ty, f.q2, x.den.cap), v)


def _image(ty: TypeExpr, f: PartialSurjection, x: int, cap: int) -> Optional[int]:
    if isinstance(ty, Base):
        return f(x)
    if isinstance(ty, Unit):
        return 0
    if isinstance(ty, Prod):
        ax, ay = type_size(ty.left, f.q), type_size(ty.left, f.q2)
        a = _image(ty.left, f, x % ax, cap)
        b = _image(ty.right, f, x // ax, cap)
        return None if a is None or b is None else a + ay * b
    e = _psurj_at(ty.dom, f, cap)
    bq = type_size(ty.cod, f.q)
    ht: list[Optional[int]] = [None] * e.q2
    for u in e.domain:
        y = _image(ty.cod, f, digit(x, bq, u), cap)
        u2 = e(u)
        if y is None or (ht[u2] is not None and ht[u2] != y):
            return None
        ht[u2] = y
    return encode(ht, type_size(ty.cod, f.q2))
