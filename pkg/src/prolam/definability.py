"""Definable elements: the image of closed terms in one finite denotation.

Exactness is claimed only when one of these arguments applies:

* ``q == 1``: the denotation is a singleton, so one witness settles it;
* the type is uninhabited (decided by proof search), so the set is empty;
* first-order types ``o -> ... -> o``: normal inhabitants are the
  projections and the enumeration budget covers all of them;
* Church types: closing the word image under one-letter extension yields
  the whole image of the word monoid.

Everything else is a lower bound found by enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import MismatchError, SizeCapError
from .model import DEFAULT_CAP, Den, Element, decode, encode, interpret
from .syntax import (
    Alphabet,
    Term,
    TypeExpr,
    church_arity,
    church_term,
    closed_normal_forms,
    is_first_order,
    is_inhabited,
    long_normal_forms,
    term_to_json,
    uncurry,
)

DEFAULT_BUDGET = 14
SATURATION = 3
CLOSURE_LIMIT = 1 << 16


@dataclass(frozen=True)
class DefSet:
    type: TypeExpr
    q: int
    elements: tuple[int, ...]
    witnesses: dict = field(compare=False, hash=False)
    exact: bool
    strategy: str
    budget: Optional[int] = None
    cap: int = field(default=DEFAULT_CAP, compare=False)

    def __contains__(self, x) -> bool:
        if isinstance(x, Element):
            return x.type == self.type and x.q == self.q and x.index in self.witnesses
        return x in self.witnesses

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        d = Den(self.type, self.q, self.cap)
        return (Element(d, i) for i in self.elements)

    def witness(self, x) -> Term:
        idx = x.index if isinstance(x, Element) else x
        return self.witnesses[idx]

    def to_json(self) -> dict:
        from ._decimal import to_decimal

        return {
            "type": str(self.type),
            "q": self.q,
            "exact": self.exact,
            "strategy": self.strategy,
            "budget": self.budget,
            "size": len(self.elements),
            "elements": [
                {"index": to_decimal(i), "witness": term_to_json(self.witnesses[i])} for i in self.elements
            ],
        }


def def_set(
    ty: TypeExpr,
    q: int,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
    certify: bool = True,
) -> DefSet:
    """Definable elements of ``[[ty]]`` over ``[q]``.

    With ``certify=False`` the Church closure is skipped and the result is
    the plain enumeration (flagged as a lower bound unless trivially exact).
    """
    n_letters = church_arity(ty)
    if certify and n_letters is not None and n_letters >= 1:
        sigma = Alphabet(tuple(_letter_names(n_letters)))
        return church_def_set(sigma, q, cap=cap)

    witnesses: dict[int, Term] = {}
    order: list[int] = []
    idle = 0
    last_size = 0
    for n in range(1, budget + 1):
        last_size = n
        new = False
        for m in long_normal_forms(ty, n):
            idx = interpret(m, q, cap=cap).index
            if idx not in witnesses:
                witnesses[idx] = m
                order.append(idx)
                new = True
        idle = 0 if new else idle + 1
        if order and idle >= SATURATION:
            break
        if q == 1 and order:
            break

    exact, strategy = False, "enumeration"
    if q == 1 and order:
        exact, strategy = True, "singleton"
    elif not is_inhabited(ty):
        exact, strategy = True, "uninhabited"
    elif is_first_order(ty) and last_size >= len(uncurry(ty)[0]) + 1:
        exact, strategy = True, "first-order"
    return DefSet(ty, q, tuple(order), witnesses, exact, strategy, budget, cap)


def _letter_names(n: int) -> Iterator[str]:
    for i in range(n):
        yield chr(ord("a") + i) if i < 26 else f"a{i}"


def church_def_set(sigma: Alphabet, q: int, cap: int = DEFAULT_CAP, limit: int = CLOSURE_LIMIT) -> DefSet:
    """Exact definable elements at the Church type, by breadth-first word closure.

    Each functional is tracked through its values on every tuple of letter
    actions; a word's successor appends one letter.  Words are visited in
    shortlex order, so each witness is the shortlex-least word for its
    functional.
    """
    n = len(sigma)
    endo_size = q**q
    if endo_size**n > cap:
        raise SizeCapError(f"tabulating the Church type over {n} letters at q={q}", endo_size**n, cap)
    # position in this list is the element index of the endofunction
    endos = [tuple(decode(i, q, q)) for i in range(endo_size)]
    # then[u * endo_size + v] is the index of "u, then v"
    # vectors are bytes while endofunction indices fit in one
    pack = bytes if endo_size <= 256 else tuple
    then = pack(encode([endos[v][endos[u][s]] for s in range(q)], q) for u in range(endo_size) for v in range(endo_size))
    assigns = list(itertools.product(range(endo_size), repeat=n))
    # per letter: the action of that letter under each assignment, pre-offset for ``then``
    steps = [[a[i] for a in assigns] for i in range(n)]
    start = pack([encode(list(range(q)), q)]) * len(assigns)
    seen = {start: ()}
    order = [start]
    frontier = [start]
    lookup = then.__getitem__
    while frontier:
        nxt = []
        for vec in frontier:
            word = seen[vec]
            rows = [u * endo_size for u in vec]
            for i, letter in enumerate(sigma.letters):
                w = pack(map(lookup, map(int.__add__, rows, steps[i])))
                if w not in seen:
                    seen[w] = word + (letter,)
                    order.append(w)
                    nxt.append(w)
                    if len(order) > limit:
                        raise SizeCapError(f"closing the Church image over {n} letters at q={q}", len(order), limit)
        frontier = nxt

    ty = sigma.church_type
    witnesses = {}
    elements = []
    for vec in order:
        idx = _church_index(vec, n, q)
        witnesses[idx] = church_term(seen[vec], sigma)
        elements.append(idx)
    return DefSet(ty, q, tuple(elements), witnesses, True, "church-closure", None, cap)


def _church_index(vec: bytes | tuple, n: int, q: int) -> int:
    """Index of the functional sending the letter tuple ``assigns[j]`` to endofunction ``vec[j]``.

    ``assigns`` is in ``itertools.product`` order, first letter slowest.
    """
    endo_size = q**q
    leaves = list(vec)
    base = endo_size
    for _ in range(n):
        # group consecutive runs of endo_size entries: they vary the last letter
        leaves = [encode(leaves[i : i + endo_size], base) for i in range(0, len(leaves), endo_size)]
        base = base**endo_size
    assert len(leaves) == 1
    return leaves[0]


def restrict(defq: DefSet, q2: int) -> dict[int, int]:
    """The map sending each definable ``[[M]]_q`` to ``[[M]]_q2`` (requires ``q >= q2 >= 1``)."""
    if not 1 <= q2 <= defq.q:
        raise MismatchError(f"restriction needs q >= q' >= 1, got q={defq.q}, q'={q2}")
    return {x: interpret(defq.witnesses[x], q2, cap=defq.cap).index for x in defq.elements}


def witnesses_by_element(ty: TypeExpr, q: int, max_size: int) -> dict[int, list[Term]]:
    """All enumerated normal forms up to ``max_size`` grouped by their denotation."""
    out: dict[int, list[Term]] = {}
    for m in closed_normal_forms(ty, max_size):
        out.setdefault(interpret(m, q).index, []).append(m)
    return out
