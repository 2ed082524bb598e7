"""Truncated profinite lambda-terms.

An :class:`Approximant` keeps the components of a family at the canonical
sets ``[1] .. [k]``.  Naturality is checked against every partial
surjection between those sets, parametricity against relations (all of
them, or a seeded sample when there are too many).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

from ._decimal import from_decimal, to_decimal
from .definability import def_set
from .errors import DefinabilityError, MismatchError, SizeCapError
from .model import DEFAULT_CAP, Den, Element, apply, compose_elements, from_table, interpret, tabulate
from .relations import PartialSurjection, Relation, logical_relation_member, psurj_image
from .syntax import (
    App,
    Arrow,
    O,
    Lam,
    Term,
    TypeExpr,
    Var,
    church_arity,
    is_closed,
    normalize,
    parse_type,
    term_from_json,
    term_to_json,
    typecheck,
)

DEFAULT_K = 3
DEFAULT_SAMPLES = 512
OMEGA_WITNESS_LIMIT = 64

WITNESS = "witness"
DEFERRED = "deferred"


@dataclass(frozen=True)
class Approximant:
    """Components ``theta_q`` for ``q = 1..k``, stored as element indices.

    ``evidence[q-1]`` is ``"witness"`` when ``witnesses[q-1]`` is a closed
    term denoting the component, and ``"deferred"`` when definability was
    not established.  Build through :func:`approximant` to get the checks.
    """

    type: TypeExpr
    k: int
    components: tuple[int, ...]
    witnesses: tuple[Optional[Term], ...] = field(compare=False)
    evidence: tuple[str, ...] = field(compare=False)
    checked_natural: bool = field(default=False, compare=False)
    cap: int = field(default=DEFAULT_CAP, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("cutoff k must be at least 1")
        if not (len(self.components) == len(self.witnesses) == len(self.evidence) == self.k):
            raise ValueError("an approximant needs exactly one component per level 1..k")
        for q, x in enumerate(self.components, start=1):
            if not 0 <= x < Den(self.type, q).size:
                raise ValueError(f"component at q={q} out of range")
        for ev in self.evidence:
            if ev not in (WITNESS, DEFERRED):
                raise ValueError(f"unknown evidence kind {ev!r}")

    def component(self, q: int) -> Element:
        if not 1 <= q <= self.k:
            raise MismatchError(f"level {q} outside the cutoff 1..{self.k}")
        return Element(Den(self.type, q, self.cap), self.components[q - 1])

    def witness(self, q: int) -> Optional[Term]:
        return self.witnesses[q - 1]

    @property
    def fully_witnessed(self) -> bool:
        return all(ev == WITNESS for ev in self.evidence)

    def truncate(self, k: int) -> "Approximant":
        if not 1 <= k <= self.k:
            raise MismatchError(f"cannot truncate cutoff {self.k} to {k}")
        return replace(
            self,
            k=k,
            components=self.components[:k],
            witnesses=self.witnesses[:k],
            evidence=self.evidence[:k],
        )

    def to_json(self) -> dict:
        return {
            "type": str(self.type),
            "k": self.k,
            "components": {str(q): to_decimal(x) for q, x in enumerate(self.components, start=1)},
            "witnesses": {
                str(q): (term_to_json(w) if w is not None else None) for q, w in enumerate(self.witnesses, start=1)
            },
            "evidence": {str(q): ev for q, ev in enumerate(self.evidence, start=1)},
        }

    @classmethod
    def from_json(cls, obj: dict, cap: int = DEFAULT_CAP, verify: bool = True) -> "Approximant":
        ty = parse_type(obj["type"])
        k = int(obj["k"])
        comps = [from_decimal(str(obj["components"][str(q)])) for q in range(1, k + 1)]
        wits_obj = obj.get("witnesses", {})
        wits = [
            term_from_json(wits_obj[str(q)]) if wits_obj.get(str(q)) is not None else None for q in range(1, k + 1)
        ]
        ev = obj.get("evidence", {})
        defer = any(ev.get(str(q)) == DEFERRED for q in range(1, k + 1))
        return approximant(ty, comps, wits, defer=defer, verify=verify, cap=cap)


def approximant(
    ty: TypeExpr,
    components: Sequence[int | Element],
    witnesses: Optional[Sequence[Optional[Term]]] = None,
    defer: bool = False,
    verify: bool = True,
    cap: int = DEFAULT_CAP,
) -> Approximant:
    """Build an approximant, establishing definability of each component.

    A supplied witness is re-interpreted (unless ``verify`` is off).  Without
    a witness the definable set is searched; a component outside an exact
    definable set is rejected, and one that cannot be decided is rejected
    unless ``defer`` is set.
    """
    k = len(components)
    idx = [c.index if isinstance(c, Element) else int(c) for c in components]
    wits: list[Optional[Term]] = list(witnesses) if witnesses is not None else [None] * k
    if len(wits) != k:
        raise MismatchError("one witness slot per component is required")
    evidence = []
    for q in range(1, k + 1):
        x, w = idx[q - 1], wits[q - 1]
        if w is not None:
            if not is_closed(w) or typecheck(w) != ty:
                raise DefinabilityError(f"witness at q={q} is not a closed term of type {ty}")
            if verify and interpret(w, q, cap=cap).index != x:
                raise DefinabilityError(f"witness at q={q} does not denote the component")
            evidence.append(WITNESS)
            continue
        try:
            ds = def_set(ty, q, cap=cap)
        except SizeCapError:
            ds = None
        if ds is not None and x in ds:
            wits[q - 1] = ds.witness(x)
            evidence.append(WITNESS)
        elif ds is not None and ds.exact:
            raise DefinabilityError(f"component at q={q} is not definable at type {ty}")
        elif defer:
            evidence.append(DEFERRED)
        else:
            raise DefinabilityError(f"no definability evidence for the component at q={q}")
    return Approximant(ty, k, tuple(idx), tuple(wits), tuple(evidence), cap=cap)


def iota(m: Term, k: int = DEFAULT_K, cap: int = DEFAULT_CAP) -> Approximant:
    """The family ``q |-> [[M]]_q`` for ``q = 1..k``."""
    if not is_closed(m):
        raise MismatchError("iota is defined on closed terms")
    ty = typecheck(m)
    comps = tuple(interpret(m, q, cap=cap).index for q in range(1, k + 1))
    return Approximant(ty, k, comps, (m,) * k, (WITNESS,) * k, cap=cap)


def identity_approximant(ty: TypeExpr, k: int = DEFAULT_K, cap: int = DEFAULT_CAP) -> Approximant:
    return iota(Lam(ty, Var(0), "x"), k, cap)


# --- checks -------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """``counterexample`` is ``(q, q2, f)`` for naturality and ``(q, q2, R)`` for parametricity."""

    ok: bool
    counterexample: Optional[tuple] = None
    checked: int = 0
    exhaustive: bool = True
    approximant: Optional[Approximant] = field(default=None, compare=False, repr=False)

    def __bool__(self) -> bool:
        return self.ok


def check_natural(theta: Approximant) -> CheckResult:
    """Every partial surjection ``f: [q] -> [q2]`` with ``q >= q2`` sends ``theta_q`` to ``theta_q2``."""
    checked = 0
    for q in range(1, theta.k + 1):
        x = theta.component(q)
        for q2 in range(1, q + 1):
            target = theta.components[q2 - 1]
            for f in PartialSurjection.all(q, q2):
                checked += 1
                y = psurj_image(theta.type, f, x)
                if y is None or y.index != target:
                    return CheckResult(False, (q, q2, f), checked, True, theta)
    return CheckResult(True, None, checked, True, replace(theta, checked_natural=True))


def relations_for(q: int, q2: int, samples: int, rng: random.Random) -> tuple[list[Relation], bool]:
    """All relations on ``[q] x [q2]`` if there are at most ``samples``, else a sample."""
    n = q * q2
    if (1 << n) <= samples:
        return [Relation.from_mask(q, q2, m) for m in range(1 << n)], True
    return [Relation.from_mask(q, q2, rng.getrandbits(n)) for _ in range(samples)], False


def check_parametric(theta: Approximant, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> CheckResult:
    """``(theta_q, theta_q2)`` lies in the logical relation over every tested ``R``.

    All ordered pairs of levels are covered.  A pair is exhaustive when
    ``2**(q*q2) <= samples``; otherwise ``samples`` relations are drawn with
    a generator seeded from ``seed`` and the pair of levels.
    """
    checked = 0
    exhaustive = True
    for q in range(1, theta.k + 1):
        for q2 in range(1, theta.k + 1):
            rng = random.Random(f"{seed}:{q}:{q2}")
            rels, full = relations_for(q, q2, samples, rng)
            exhaustive = exhaustive and full
            x, y = theta.component(q), theta.component(q2)
            for r in rels:
                checked += 1
                if not logical_relation_member(theta.type, r, x, y):
                    return CheckResult(False, (q, q2, r), checked, exhaustive, theta)
    return CheckResult(True, None, checked, exhaustive, theta)


# --- the category of profinite terms -----------------------------------------


def _arrow_parts(ty: TypeExpr, what: str) -> Arrow:
    if not isinstance(ty, Arrow):
        raise MismatchError(f"{what} needs an arrow type, got {ty}")
    return ty


def _compose_witness(f: Optional[Term], g: Optional[Term], a: TypeExpr) -> Optional[Term]:
    if f is None or g is None:
        return None
    # kept as the literal composite; normal forms of composed numerals grow multiplicatively
    return Lam(a, App(g, App(f, Var(0))), "x")


def compose(theta: Approximant, sigma: Approximant) -> Approximant:
    """``theta`` at ``A -> B`` followed by ``sigma`` at ``B -> C``."""
    ta, tb = _arrow_parts(theta.type, "compose"), _arrow_parts(sigma.type, "compose")
    if ta.cod != tb.dom:
        raise MismatchError(f"cannot compose {theta.type} with {sigma.type}")
    if theta.k != sigma.k:
        raise MismatchError(f"cutoff mismatch: {theta.k} vs {sigma.k}")
    comps, wits, ev = [], [], []
    for q in range(1, theta.k + 1):
        comps.append(compose_elements(theta.component(q), sigma.component(q)).index)
        w = _compose_witness(theta.witness(q), sigma.witness(q), ta.dom)
        wits.append(w)
        ev.append(WITNESS if w is not None else DEFERRED)
    return Approximant(Arrow(ta.dom, tb.cod), theta.k, tuple(comps), tuple(wits), tuple(ev), cap=theta.cap)


def apply_term_to_approximant(m: Term, theta: Approximant) -> Approximant:
    """The family ``q |-> [[M]]_q(theta_q)``.

    ``M`` is put in long normal form first, so its body is evaluated with
    the argument bound in the environment; the function itself is never
    tabulated.
    """
    if not is_closed(m):
        raise MismatchError("only closed terms act on approximants")
    ty = _arrow_parts(typecheck(m), "apply_term_to_approximant")
    if ty.dom != theta.type:
        raise MismatchError(f"term expects {ty.dom}, approximant has type {theta.type}")
    lam = normalize(m)
    assert isinstance(lam, Lam)
    comps, wits, ev = [], [], []
    for q in range(1, theta.k + 1):
        comps.append(interpret(lam.body, q, env=(theta.component(q),), cap=theta.cap).index)
        w = theta.witness(q)
        wits.append(App(m, w) if w is not None else None)
        ev.append(WITNESS if w is not None else DEFERRED)
    return Approximant(ty.cod, theta.k, tuple(comps), tuple(wits), tuple(ev), cap=theta.cap)


# --- idempotent powers -----------------------------------------------------------


def omega_element(a: TypeExpr, q: int, f: Element) -> Element:
    """The idempotent power of ``f`` in the composition monoid on ``[[a]]_q``.

    Powers are iterated until the first repeat ``f^j = f^i``; with period
    ``p = j - i`` the result is ``f^m`` for the least multiple ``m`` of
    ``p`` with ``m >= i``.
    """
    ty = Arrow(a, a)
    if f.type != ty or f.q != q:
        raise MismatchError(f"expected an element of [[{ty}]]_{q}, got [[{f.type}]]_{f.q}")
    table = tuple(f.table())
    powers = [table]
    seen = {table: 1}
    while True:
        cur = powers[-1]
        nxt = tuple(table[v] for v in cur)
        if nxt in seen:
            i = seen[nxt]
            p = len(powers) + 1 - i
            m = p * max(1, -(-i // p))
            break
        seen[nxt] = len(powers) + 1
        powers.append(nxt)
    return from_table(f.den, powers[m - 1])


def omega_exponent(n: int) -> int:
    """An exponent ``N >= 1`` with ``x**N`` idempotent for every transformation of an ``n``-set.

    Indices are at most ``n`` and periods divide ``lcm(1..n)``.
    """
    period = math.lcm(*range(1, n + 1)) if n > 0 else 1
    return period * max(1, -(-n // period))


def _iterate(u: Term, x: Term, n: int) -> Term:
    for _ in range(n):
        x = App(u, x)
    return x


def omega_approximant(a: TypeExpr, k: int = DEFAULT_K, cap: int = DEFAULT_CAP) -> Approximant:
    """``Omega_A`` at ``(A -> A) -> (A -> A)`` truncated to levels ``1..k``.

    A witness ``\\u. \\x. u^N x`` is attached whenever the uniform exponent
    ``N`` is at most ``OMEGA_WITNESS_LIMIT``; other levels keep deferred
    evidence.
    """
    endo = Arrow(a, a)
    ty = Arrow(endo, endo)
    comps, wits, ev = [], [], []
    for q in range(1, k + 1):
        d = Den(ty, q, cap)
        comps.append(tabulate(lambda f, q=q: omega_element(a, q, f), d).index)
        n = omega_exponent(Den(a, q, cap).size)
        if n <= OMEGA_WITNESS_LIMIT:
            w = Lam(endo, Lam(a, _iterate(Var(1), Var(0), n), "x"), "u")
            if interpret(w, q, cap=cap).index != comps[-1]:
                raise DefinabilityError(f"power witness disagrees with the idempotent power at q={q}")
            wits.append(w)
            ev.append(WITNESS)
        else:
            wits.append(None)
            ev.append(DEFERRED)
    return Approximant(ty, k, tuple(comps), tuple(wits), tuple(ev), cap=cap)


def apply_omega(theta: Approximant) -> Approximant:
    """Componentwise idempotent power of an approximant at ``A -> A``."""
    ty = _arrow_parts(theta.type, "apply_omega")
    if ty.dom != ty.cod:
        raise MismatchError(f"idempotent powers need an endomorphism type, got {ty}")
    a = ty.dom
    comps, wits, ev = [], [], []
    for q in range(1, theta.k + 1):
        comps.append(omega_element(a, q, theta.component(q)).index)
        w = theta.witness(q)
        n = omega_exponent(Den(a, q, theta.cap).size)
        if w is not None and n <= OMEGA_WITNESS_LIMIT:
            # unnormalized for the same reason as composites
            wits.append(Lam(a, _iterate(w, Var(0), n), "x"))
            ev.append(WITNESS)
        else:
            wits.append(None)
            ev.append(DEFERRED)
    return Approximant(ty, theta.k, tuple(comps), tuple(wits), tuple(ev), cap=theta.cap)


def _tabulate_curried(d: Den, arity: int, h: Callable[[list[Element]], Element], args: list[Element]) -> Element:
    if arity == 0:
        return h(args)
    return tabulate(lambda x: _tabulate_curried(d.cod, arity - 1, h, args + [x]), d)


def word_omega(theta: Approximant, k: Optional[int] = None) -> Approximant:
    """The omega-power of a profinite word given at a Church type.

    Component ``q`` sends letter actions ``f_1..f_n`` to the idempotent power
    of ``theta_q(f_1, .., f_n)`` in the monoid of endofunctions of ``[q]``.
    """
    n = church_arity(theta.type)
    if n is None:
        raise MismatchError(f"word_omega needs a Church type, got {theta.type}")
    k = theta.k if k is None else k
    if not 1 <= k <= theta.k:
        raise MismatchError(f"cutoff {k} exceeds the approximant's {theta.k}")
    endo = Arrow(O, O)
    comps, wits, ev = [], [], []
    for q in range(1, k + 1):
        x = theta.component(q)

        def h(fs: list[Element], x=x, q=q) -> Element:
            g = x
            for f in fs:
                g = apply(g, f)
            return omega_element(O, q, g)

        comps.append(_tabulate_curried(x.den, n, h, []).index)
        w = theta.witness(q)
        if w is not None:
            power = omega_exponent(q)
            applied: Term = w
            for i in range(n):
                applied = App(applied, Var(n - i))
            body: Term = _iterate(applied, Var(0), power)
            term: Term = Lam(O, body, "c")
            for i in reversed(range(n)):
                term = Lam(endo, term, "f" if n == 1 else f"f{i + 1}")
            wits.append(normalize(term))
            ev.append(WITNESS)
        else:
            wits.append(None)
            ev.append(DEFERRED)
    return Approximant(theta.type, k, tuple(comps), tuple(wits), tuple(ev), cap=theta.cap)


# --- the congruences of finite sets ----------------------------------------------


def congruent(q: int, m: Term, n: Term, cap: int = DEFAULT_CAP) -> bool:
    """``M`` and ``N`` have the same interpretation over ``[q]``."""
    if not (is_closed(m) and is_closed(n)):
        raise MismatchError("congruence compares closed terms")
    tm, tn = typecheck(m), typecheck(n)
    if tm != tn:
        raise MismatchError(f"terms of different types {tm} and {tn}")
    return interpret(m, q, cap=cap).index == interpret(n, q, cap=cap).index


def separate(m: Term, n: Term, max_q: int, cap: int = DEFAULT_CAP) -> Optional[int]:
    """Least ``q <= max_q`` whose interpretations differ, or None."""
    for q in range(1, max_q + 1):
        if not congruent(q, m, n, cap):
            return q
    return None
