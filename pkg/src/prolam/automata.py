"""Deterministic automata, Church-encoded words and transition monoids.

A DFA with states ``[q]`` evaluates a Church-type functional by feeding it
the letter actions and then the initial state.  Monoids are presented as
transformation monoids; ``x * y`` means "first ``x``, then ``y``", so the
word map ``h`` is a homomorphism: ``h(uv) = h(u) * h(v)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InvariantViolation, MismatchError, SizeCapError
from .model import DEFAULT_CAP, Den, Element, apply, from_table, interpret
from .profinite import Approximant
from .reglang import Accepting, RegLanguage
from .syntax import Alphabet, Arrow, O, as_word, church_arity, church_term

Table = tuple[int, ...]


@dataclass(frozen=True)
class DFA:
    alphabet: Alphabet
    q: int
    delta: tuple[Table, ...]
    q0: int
    final: frozenset

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(tuple(t) for t in self.delta))
        object.__setattr__(self, "final", frozenset(self.final))
        if self.q < 1:
            raise ValueError("a DFA needs at least one state")
        if len(self.delta) != len(self.alphabet):
            raise ValueError("one transition table per letter is required")
        for a, t in zip(self.alphabet, self.delta):
            if len(t) != self.q or any(not 0 <= s < self.q for s in t):
                raise ValueError(f"transition table for {a!r} is not total on [{self.q}]")
        if not 0 <= self.q0 < self.q:
            raise ValueError(f"initial state {self.q0} outside [{self.q}]")
        if any(not 0 <= s < self.q for s in self.final):
            raise ValueError("final states must lie in [q]")

    def action(self, letter: str) -> Table:
        return self.delta[self.alphabet.index(letter)]

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "q": self.q,
            "delta": {a: list(t) for a, t in zip(self.alphabet, self.delta)},
            "q0": self.q0,
            "final": sorted(self.final),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DFA":
        sigma = Alphabet.of(obj["alphabet"])
        missing = [a for a in sigma if a not in obj["delta"]]
        if missing:
            raise ValueError(f"no transitions for letters {missing}")
        delta = tuple(tuple(obj["delta"][a]) for a in sigma)
        return cls(sigma, int(obj["q"]), delta, int(obj["q0"]), frozenset(obj["final"]))


def run(d: DFA, w: str | Sequence[str], start: Optional[int] = None) -> int:
    """``delta_w(q0)``, folding letters left to right."""
    s = d.q0 if start is None else start
    for i in (d.alphabet.index(a) for a in as_word(w, d.alphabet)):
        s = d.delta[i][s]
    return s


def accepts(d: DFA, w: str | Sequence[str]) -> bool:
    return run(d, w) in d.final


def church_den(sigma: Alphabet, q: int, cap: int = DEFAULT_CAP) -> Den:
    return Den(sigma.church_type, q, cap)


def eval_church(d: DFA, f: Element) -> int:
    """``F(delta_a1, .., delta_an)(q0)``."""
    if f.type != d.alphabet.church_type:
        raise MismatchError(f"expected an element at {d.alphabet.church_type}, got {f.type}")
    if f.q != d.q:
        raise MismatchError(f"functional at q={f.q}, automaton has {d.q} states")
    g = f
    for t in _letter_elements(d.delta, d.q, f.den.cap):
        g = apply(g, t)
    return apply(g, Element(Den(O, d.q, f.den.cap), d.q0)).index


@lru_cache(maxsize=4096)
def _letter_elements(delta: tuple[Table, ...], q: int, cap: int) -> tuple[Element, ...]:
    endo = Den(Arrow(O, O), q, cap)
    return tuple(from_table(endo, t) for t in delta)


@dataclass(frozen=True)
class EvalPreimage(Accepting):
    """Functionals whose evaluation on the automaton lands in a final state."""

    dfa: DFA
    cap: int = field(default=DEFAULT_CAP, compare=False)

    def __contains__(self, x: int) -> bool:
        return eval_church(self.dfa, Element(church_den(self.dfa.alphabet, self.dfa.q, self.cap), x)) in self.dfa.final

    def to_json(self) -> dict:
        return {"op": "dfa", "dfa": self.dfa.to_json()}


def language_of_dfa_as_reg(d: DFA, cap: int = DEFAULT_CAP) -> RegLanguage:
    """The DFA's language as the Church-term language recognized at ``[q]``."""
    return RegLanguage(d.alphabet.church_type, d.q, EvalPreimage(d, cap), cap)


def all_dfas(sigma: Alphabet, q: int) -> Iterator[tuple[tuple[Table, ...], int]]:
    """Every pair (letter actions, initial state) over ``[q]``."""
    tables = list(itertools.product(range(q), repeat=q))
    for delta in itertools.product(tables, repeat=len(sigma)):
        for q0 in range(q):
            yield delta, q0


@dataclass(frozen=True)
class WordLanguage:
    """Words whose Church encoding denotes a point of ``accepting`` at ``[q]``."""

    alphabet: Alphabet
    q: int
    accepting: frozenset
    cap: int = field(default=DEFAULT_CAP, compare=False)

    def accepts(self, w: str | Sequence[str]) -> bool:
        return church_index(as_word(w, self.alphabet), self.alphabet, self.q, self.cap) in self.accepting

    @cached_property
    def _runs(self) -> list[tuple[tuple[Table, ...], int]]:
        return list(all_dfas(self.alphabet, self.q))

    def automata_for(self, phi: int) -> list[DFA]:
        """The finite family whose intersection is the language of the single point ``phi``.

        One automaton per choice of letter actions and initial state, with
        the single final state ``phi(delta)(q0)``.
        """
        return [
            DFA(self.alphabet, self.q, delta, q0, frozenset([s]))
            for (delta, q0), s in zip(self._runs, self._targets(phi))
        ]

    def _targets(self, phi: int) -> tuple[int, ...]:
        return _targets(self.alphabet, self.q, phi, self.cap)

    def accepts_by_intersection(self, w: str | Sequence[str]) -> bool:
        """Union over ``phi`` in ``accepting`` of the intersection of :meth:`automata_for`."""
        runs = _run_vector(self.alphabet, self.q, as_word(w, self.alphabet))
        return any(runs == self._targets(phi) for phi in sorted(self.accepting))


@lru_cache(maxsize=4096)
def church_index(w: tuple[str, ...], sigma: Alphabet, q: int, cap: int = DEFAULT_CAP) -> int:
    """Index of the Church encoding of ``w`` over ``[q]``."""
    return interpret(church_term(w, sigma), q, cap=cap).index


@lru_cache(maxsize=4096)
def _run_vector(sigma: Alphabet, q: int, w: tuple[str, ...]) -> tuple[int, ...]:
    """Final state of ``w`` on every automaton of :func:`all_dfas`, in that order."""
    word = [sigma.index(a) for a in w]
    out = []
    for delta, q0 in all_dfas(sigma, q):
        s = q0
        for i in word:
            s = delta[i][s]
        out.append(s)
    return tuple(out)


@lru_cache(maxsize=256)
def _targets(sigma: Alphabet, q: int, phi: int, cap: int) -> tuple[int, ...]:
    """``phi(delta)(q0)`` for every automaton of :func:`all_dfas`, in that order."""
    f = Element(church_den(sigma, q, cap), phi)
    return tuple(eval_church(DFA(sigma, q, delta, q0, frozenset()), f) for delta, q0 in all_dfas(sigma, q))


def word_language_of_accepting(
    sigma: Alphabet, q: int, accepting: Iterable[int | Element], cap: int = DEFAULT_CAP
) -> WordLanguage:
    idx = frozenset(x.index if isinstance(x, Element) else int(x) for x in accepting)
    d = church_den(sigma, q, cap)
    for x in idx:
        if not 0 <= x < d.size:
            raise MismatchError("accepting index outside the Church denotation")
    return WordLanguage(sigma, q, idx, cap)


# --- transformation monoids -------------------------------------------------------


@dataclass(frozen=True)
class MonoidPresentation:
    """A monoid of transformations of ``[q]`` generated by letter actions.

    ``elements[0]`` is the identity.  ``mult[x][y]`` is the element acting
    as ``x`` followed by ``y``.
    """

    alphabet: Alphabet
    q: int
    elements: tuple[Table, ...]
    generators: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...] = field(repr=False)

    unit: int = 0

    @cached_property
    def index(self) -> dict[Table, int]:
        return {t: i for i, t in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def lookup(self, table: Sequence[int]) -> int:
        t = tuple(table)
        if t not in self.index:
            raise InvariantViolation(f"transformation {t} is not in the monoid")
        return self.index[t]

    def h(self, w: str | Sequence[str]) -> int:
        x = self.unit
        for a in as_word(w, self.alphabet):
            x = self.mult[x][self.generators[self.alphabet.index(a)]]
        return x

    def omega(self, x: int) -> int:
        """The idempotent power of ``x``."""
        seen = {x: 1}
        powers = [x]
        while True:
            nxt = self.mult[powers[-1]][x]
            if nxt in seen:
                i = seen[nxt]
                p = len(powers) + 1 - i
                m = p * max(1, -(-i // p))
                return powers[m - 1]
            seen[nxt] = len(powers) + 1
            powers.append(nxt)

    def right_action(self) -> tuple[Table, ...]:
        """Per letter, right multiplication by its generator as a table on element indices."""
        return tuple(tuple(self.mult[x][g] for x in range(len(self))) for g in self.generators)

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "q": self.q,
            "size": len(self),
            "unit": self.unit,
            "elements": [list(t) for t in self.elements],
            "generators": {a: g for a, g in zip(self.alphabet, self.generators)},
        }

    @classmethod
    def generated(cls, sigma: Alphabet, q: int, actions: Sequence[Table], cap: int = DEFAULT_CAP) -> "MonoidPresentation":
        """Closure of the identity under right multiplication by ``actions``."""
        unit = tuple(range(q))
        elements = [unit]
        index = {unit: 0}
        i = 0
        while i < len(elements):
            x = elements[i]
            for t in actions:
                y = tuple(t[s] for s in x)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    if len(elements) > cap:
                        raise SizeCapError("closing a transformation monoid", len(elements), cap)
            i += 1
        n = len(elements)
        if n * n > cap:
            raise SizeCapError("tabulating monoid multiplication", n * n, cap)
        mult = tuple(tuple(index[tuple(y[s] for s in x)] for y in elements) for x in elements)
        gens = tuple(index[tuple(t)] for t in actions)
        return cls(sigma, q, tuple(elements), gens, mult)

    @classmethod
    def from_cayley(
        cls, sigma: Alphabet, mult: Sequence[Sequence[int]], unit: int, generators: Sequence[int]
    ) -> "MonoidPresentation":
        """Present an abstract monoid by its right-regular representation.

        The result acts on ``[n]`` for ``n`` the monoid's size; it is
        isomorphic to the submonoid generated by ``generators``.
        """
        n = len(mult)
        if not 0 <= unit < n or any(mult[unit][x] != x or mult[x][unit] != x for x in range(n)):
            raise ValueError("unit is not a two-sided identity")
        for x, y, z in itertools.product(range(n), repeat=3):
            if mult[mult[x][y]][z] != mult[x][mult[y][z]]:
                raise ValueError("multiplication is not associative")
        actions = [tuple(mult[x][g] for x in range(n)) for g in generators]
        return cls.generated(sigma, n, actions)


def transition_monoid(d: DFA, cap: int = DEFAULT_CAP) -> MonoidPresentation:
    return MonoidPresentation.generated(d.alphabet, d.q, d.delta, cap)


def dfa_of_monoid(m: MonoidPresentation, final: Iterable[int] = ()) -> DFA:
    """States are monoid elements, a letter multiplies on the right, start at the unit."""
    return DFA(m.alphabet, len(m), m.right_action(), m.unit, frozenset(final))


def proword_level_of_approximant(theta: Approximant, m: MonoidPresentation, via: str = "action") -> int:
    """The monoid element determined by a Church-type approximant.

    ``via="action"`` evaluates ``theta`` at level ``m.q`` on the letter
    actions and reads off the resulting transformation.  ``via="cayley"``
    evaluates at level ``|M|`` on right multiplications starting from the
    unit, which needs ``theta.k >= |M|``.
    """
    n = church_arity(theta.type)
    if n is None or theta.type != m.alphabet.church_type:
        raise MismatchError(f"approximant type {theta.type} is not the Church type of the monoid's alphabet")
    if via == "action":
        level, actions, starts = m.q, [m.elements[g] for g in m.generators], range(m.q)
    elif via == "cayley":
        level, actions, starts = len(m), m.right_action(), [m.unit]
    else:
        raise ValueError(f"unknown evaluation route {via!r}")
    if theta.k < level:
        raise MismatchError(f"approximant cutoff {theta.k} is below the needed level {level}")
    f = theta.component(level)
    endo = Den(Arrow(O, O), level, f.den.cap)
    g = f
    for t in actions:
        g = apply(g, from_table(endo, t))
    values = [apply(g, Element(Den(O, level, f.den.cap), s)).index for s in starts]
    if via == "cayley":
        return values[0]
    return m.lookup(values)


# --- state merging ---------------------------------------------------------------


def quotient_dfa(d: DFA, classes: Sequence[int]) -> DFA:
    """Merge states with the same class label (labels ``0..r-1``); transitions must respect the merge."""
    if len(classes) != d.q:
        raise ValueError("one class label per state is required")
    r = max(classes) + 1
    if sorted(set(classes)) != list(range(r)):
        raise ValueError("class labels must be 0..r-1")
    delta = []
    for t in d.delta:
        nt: list[Optional[int]] = [None] * r
        for s in range(d.q):
            c, c2 = classes[s], classes[t[s]]
            if nt[c] is not None and nt[c] != c2:
                raise ValueError("the partition is not compatible with the transitions")
            nt[c] = c2
        delta.append(tuple(nt))
    final = frozenset(classes[s] for s in d.final)
    return DFA(d.alphabet, r, tuple(delta), classes[d.q0], final)


def quotient_hom(m: MonoidPresentation, m2: MonoidPresentation, classes: Sequence[int]) -> list[int]:
    """For each element of ``m``, the element of ``m2`` it induces on state classes."""
    out = []
    for t in m.elements:
        induced: list[Optional[int]] = [None] * m2.q
        for s in range(m.q):
            induced[classes[s]] = classes[t[s]]
        out.append(m2.lookup(induced))
    return out
