"""Regular languages of lambda-terms recognized by a finite set.

A language is the preimage of an accepting set ``F`` of semantic points
under the semantic bracket at ``[q]``.  Accepting sets are kept symbolic
(explicit index sets, complements, unions, intersections and preimages along
logical partial surjections) so that membership stays cheap even when the
denotation is far too large to enumerate.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional

from ._decimal import from_decimal, to_decimal
from .definability import DefSet, def_set
from .errors import MismatchError
from .model import DEFAULT_CAP, Den, Element, interpret
from .relations import PartialSurjection, psurj_image
from .syntax import Term, TypeExpr, is_closed, parse_type, typecheck


class Accepting(ABC):
    """A subset of the index space of one denotation."""

    @abstractmethod
    def __contains__(self, x: int) -> bool: ...

    @abstractmethod
    def to_json(self) -> dict: ...

    def materialize(self, d: Den) -> frozenset:
        return frozenset(i for i in d.indices() if i in self)


@dataclass(frozen=True)
class Explicit(Accepting):
    indices: frozenset

    def __contains__(self, x: int) -> bool:
        return x in self.indices

    def materialize(self, d: Den) -> frozenset:
        return frozenset(self.indices)

    def to_json(self) -> dict:
        return {"op": "set", "indices": [to_decimal(i) for i in sorted(self.indices)]}


@dataclass(frozen=True)
class Everything(Accepting):
    def __contains__(self, x: int) -> bool:
        return True

    def to_json(self) -> dict:
        return {"op": "all"}


@dataclass(frozen=True)
class Complement(Accepting):
    inner: Accepting

    def __contains__(self, x: int) -> bool:
        return x not in self.inner

    def to_json(self) -> dict:
        return {"op": "not", "args": [self.inner.to_json()]}


@dataclass(frozen=True)
class Union(Accepting):
    a: Accepting
    b: Accepting

    def __contains__(self, x: int) -> bool:
        return x in self.a or x in self.b

    def to_json(self) -> dict:
        return {"op": "or", "args": [self.a.to_json(), self.b.to_json()]}


@dataclass(frozen=True)
class Intersection(Accepting):
    a: Accepting
    b: Accepting

    def __contains__(self, x: int) -> bool:
        return x in self.a and x in self.b

    def to_json(self) -> dict:
        return {"op": "and", "args": [self.a.to_json(), self.b.to_json()]}


@dataclass(frozen=True)
class Preimage(Accepting):
    """Points whose image under ``[[ty]](f)`` is defined and lies in ``inner``."""

    ty: TypeExpr
    f: PartialSurjection
    inner: Accepting
    cap: int = field(default=DEFAULT_CAP, compare=False)

    def __contains__(self, x: int) -> bool:
        y = psurj_image(self.ty, self.f, Element(Den(self.ty, self.f.q, self.cap), x))
        return y is not None and y.index in self.inner

    def to_json(self) -> dict:
        return {"op": "preimage", "psurj": self.f.to_json(), "args": [self.inner.to_json()]}


_OPS = {"set", "all", "not", "or", "and", "preimage"}


def accepting_from_json(obj: dict, ty: TypeExpr, cap: int = DEFAULT_CAP) -> Accepting:
    op = obj["op"]
    args = [accepting_from_json(a, ty, cap) for a in obj.get("args", [])]
    if op == "set":
        return Explicit(frozenset(from_decimal(str(i)) for i in obj["indices"]))
    if op == "all":
        return Everything()
    if op == "not":
        return Complement(args[0])
    if op == "or":
        return Union(*args)
    if op == "and":
        return Intersection(*args)
    if op == "preimage":
        return Preimage(ty, PartialSurjection.from_json(obj["psurj"]), args[0], cap)
    if op == "dfa":
        from .automata import DFA, EvalPreimage

        return EvalPreimage(DFA.from_json(obj["dfa"]), cap)
    raise ValueError(f"unknown accepting-set operator {op!r}")


@dataclass(frozen=True)
class RegLanguage:
    type: TypeExpr
    q: int
    accepting: Accepting
    cap: int = field(default=DEFAULT_CAP, compare=False)

    @property
    def den(self) -> Den:
        return Den(self.type, self.q, self.cap)

    def accepts_element(self, x: Element) -> bool:
        if x.type != self.type or x.q != self.q:
            raise MismatchError(f"element of [[{x.type}]]_{x.q} tested against a language at [[{self.type}]]_{self.q}")
        return x.index in self.accepting

    def normalized_atoms(self, defs: Optional[DefSet] = None) -> tuple[frozenset, bool]:
        """Definable accepted points, and whether the definable set was exact."""
        defs = defs if defs is not None else def_set(self.type, self.q, cap=self.cap)
        if defs.type != self.type or defs.q != self.q:
            raise MismatchError("definable set does not match the language")
        return frozenset(x for x in defs.elements if x in self.accepting), defs.exact

    def accepting_indices(self) -> frozenset:
        return self.accepting.materialize(self.den)

    def to_json(self) -> dict:
        out = {"type": str(self.type), "q": self.q}
        if isinstance(self.accepting, Explicit) or self.den.size <= self.cap:
            out["accepting"] = [to_decimal(i) for i in sorted(self.accepting_indices())]
        else:
            out["accepting_expr"] = self.accepting.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict, cap: int = DEFAULT_CAP) -> "RegLanguage":
        ty = parse_type(obj["type"])
        if "accepting" in obj:
            acc: Accepting = Explicit(frozenset(from_decimal(str(i)) for i in obj["accepting"]))
        else:
            acc = accepting_from_json(obj["accepting_expr"], ty, cap)
        return cls(ty, int(obj["q"]), acc, cap)

    def __or__(self, other: "RegLanguage") -> "RegLanguage":
        return union(self, other)

    def __and__(self, other: "RegLanguage") -> "RegLanguage":
        return intersection(self, other)

    def __invert__(self) -> "RegLanguage":
        return complement(self)


def member(lang: RegLanguage, m: Term) -> bool:
    """``M in L`` iff ``[[M]]_q`` is accepting."""
    if not is_closed(m):
        raise MismatchError("membership is defined for closed terms only")
    ty = typecheck(m)
    if ty != lang.type:
        raise MismatchError(f"term of type {ty} tested against a language of type {lang.type}")
    return interpret(m, lang.q, cap=lang.cap).index in lang.accepting


def full_language(ty: TypeExpr, q: int, cap: int = DEFAULT_CAP) -> RegLanguage:
    return RegLanguage(ty, q, Everything(), cap)


def empty_language(ty: TypeExpr, q: int, cap: int = DEFAULT_CAP) -> RegLanguage:
    return RegLanguage(ty, q, Explicit(frozenset()), cap)


def atom_language(ty: TypeExpr, q: int, x: Element) -> RegLanguage:
    """The language of terms denoting exactly ``x`` at ``[q]``."""
    if x.type != ty or x.q != q:
        raise MismatchError(f"element of [[{x.type}]]_{x.q} is not a point of [[{ty}]]_{q}")
    return RegLanguage(ty, q, Explicit(frozenset([x.index])), x.den.cap)


def _same_level(a: RegLanguage, b: RegLanguage) -> None:
    if a.type != b.type or a.q != b.q:
        raise MismatchError(
            f"Boolean operations need the same type and q, got ({a.type}, {a.q}) and ({b.type}, {b.q})"
        )


def union(a: RegLanguage, b: RegLanguage) -> RegLanguage:
    _same_level(a, b)
    return RegLanguage(a.type, a.q, _simplify(Union(a.accepting, b.accepting)), a.cap)


def intersection(a: RegLanguage, b: RegLanguage) -> RegLanguage:
    _same_level(a, b)
    return RegLanguage(a.type, a.q, _simplify(Intersection(a.accepting, b.accepting)), a.cap)


def complement(a: RegLanguage) -> RegLanguage:
    return RegLanguage(a.type, a.q, _simplify(Complement(a.accepting)), a.cap)


def boolean_op(op: str, a: RegLanguage, b: Optional[RegLanguage] = None) -> RegLanguage:
    if op == "complement":
        return complement(a)
    if b is None:
        raise MismatchError(f"{op} needs two languages")
    if op == "union":
        return union(a, b)
    if op == "intersection":
        return intersection(a, b)
    raise ValueError(f"unknown Boolean operation {op!r}")


def _simplify(acc: Accepting) -> Accepting:
    """Fold explicit operands; everything else stays symbolic."""
    if isinstance(acc, (Union, Intersection)) and isinstance(acc.a, Explicit) and isinstance(acc.b, Explicit):
        if isinstance(acc, Union):
            return Explicit(acc.a.indices | acc.b.indices)
        return Explicit(acc.a.indices & acc.b.indices)
    if isinstance(acc, Complement) and isinstance(acc.inner, Complement):
        return acc.inner.inner
    return acc


def pullback(lang: RegLanguage, f: PartialSurjection) -> RegLanguage:
    """The same language recognized at ``[f.q]``, given ``f: [f.q] -> [lang.q]``."""
    if f.q2 != lang.q:
        raise MismatchError(f"partial surjection targets [{f.q2}], language lives at q={lang.q}")
    return RegLanguage(lang.type, f.q, Preimage(lang.type, f, lang.accepting, lang.cap), lang.cap)


def embed(lang: RegLanguage, q: int) -> RegLanguage:
    """Recognize ``lang`` at a larger ``[q]`` via the canonical inclusion partial surjection."""
    if q < lang.q:
        raise MismatchError(f"cannot embed a language at q={lang.q} into q={q}")
    if q == lang.q:
        return lang
    return pullback(lang, PartialSurjection.inclusion(q, lang.q))


def intersect_across(a: RegLanguage, b: RegLanguage) -> RegLanguage:
    """Intersection of languages recognized at different sets, recognized at ``[qa + qb]``."""
    if a.type != b.type:
        raise MismatchError(f"languages of different types {a.type} and {b.type}")
    la = pullback(a, PartialSurjection.coproduct_projection(a.q, b.q, 0))
    lb = pullback(b, PartialSurjection.coproduct_projection(a.q, b.q, 1))
    return intersection(la, lb)


def equivalent(a: RegLanguage, b: RegLanguage) -> tuple[bool, bool]:
    """Compare two languages on definable points at a common level.

    Returns ``(equal, certified)``; ``certified`` is False when the definable
    set at the common level is only a lower bound.
    """
    if a.type != b.type:
        return False, True
    q = max(a.q, b.q)
    ea, eb = embed(a, q), embed(b, q)
    defs = def_set(a.type, q, cap=a.cap)
    atoms_a, _ = ea.normalized_atoms(defs)
    atoms_b, _ = eb.normalized_atoms(defs)
    return atoms_a == atoms_b, defs.exact
