"""Stable JSON trees for types and terms (tag + children)."""

from __future__ import annotations

from typing import Any

from .terms import App, Fst, Lam, Pair, Snd, Term, UnitVal, Var
from .types import Arrow, Base, Prod, TypeExpr, Unit


def type_to_json(ty: TypeExpr) -> Any:
    if isinstance(ty, Base):
        return {"tag": "o"}
    if isinstance(ty, Unit):
        return {"tag": "unit"}
    if isinstance(ty, Arrow):
        return {"tag": "arrow", "children": [type_to_json(ty.dom), type_to_json(ty.cod)]}
    return {"tag": "prod", "children": [type_to_json(ty.left), type_to_json(ty.right)]}


def type_from_json(obj: Any) -> TypeExpr:
    tag = obj["tag"]
    if tag == "o":
        return Base()
    if tag == "unit":
        return Unit()
    a, b = (type_from_json(c) for c in obj["children"])
    if tag == "arrow":
        return Arrow(a, b)
    if tag == "prod":
        return Prod(a, b)
    raise ValueError(f"unknown type tag {tag!r}")


def term_to_json(t: Term) -> Any:
    if isinstance(t, Var):
        return {"tag": "var", "index": t.index}
    if isinstance(t, Lam):
        return {"tag": "lam", "hint": t.hint, "type": type_to_json(t.ty), "children": [term_to_json(t.body)]}
    if isinstance(t, App):
        return {"tag": "app", "children": [term_to_json(t.fun), term_to_json(t.arg)]}
    if isinstance(t, Pair):
        return {"tag": "pair", "children": [term_to_json(t.left), term_to_json(t.right)]}
    if isinstance(t, Fst):
        return {"tag": "fst", "children": [term_to_json(t.pair)]}
    if isinstance(t, Snd):
        return {"tag": "snd", "children": [term_to_json(t.pair)]}
    return {"tag": "unit"}


def term_from_json(obj: Any) -> Term:
    tag = obj["tag"]
    kids = [term_from_json(c) for c in obj.get("children", [])]
    if tag == "var":
        return Var(int(obj["index"]))
    if tag == "lam":
        return Lam(type_from_json(obj["type"]), kids[0], obj.get("hint", "x"))
    if tag == "app":
        return App(*kids)
    if tag == "pair":
        return Pair(*kids)
    if tag == "fst":
        return Fst(kids[0])
    if tag == "snd":
        return Snd(kids[0])
    if tag == "unit":
        return UnitVal()
    raise ValueError(f"unknown term tag {tag!r}")
