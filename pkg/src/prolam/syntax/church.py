"""Church encoding of words over a finite alphabet."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ..errors import TypeCheckError, UnknownLetterError
from .normal import normalize
from .terms import App, Lam, Term, Var, typecheck
from .types import Arrow, O, TypeExpr, church_type

Word = tuple[str, ...]


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in alphabet {self.letters}")

    @classmethod
    def of(cls, letters: Iterable[str]) -> "Alphabet":
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise UnknownLetterError(f"letter {letter!r} not in alphabet {list(self.letters)}") from None

    @property
    def church_type(self) -> TypeExpr:
        return church_type(len(self.letters))

    def words(self, max_len: int) -> Iterator[Word]:
        """All words up to ``max_len``, shortlex order."""
        from itertools import product

        for n in range(max_len + 1):
            yield from product(self.letters, repeat=n)


def as_word(w: str | Sequence[str], sigma: Alphabet) -> Word:
    """Accept either a sequence of letters or, for one-character letters, a string."""
    if isinstance(w, str):
        if all(len(a) == 1 for a in sigma.letters):
            w = tuple(w)
        else:
            w = tuple(w.split()) if w.strip() else ()
    word = tuple(w)
    for a in word:
        sigma.index(a)
    return word


def church_term(w: str | Sequence[str], sigma: Alphabet) -> Term:
    """``\\a1 ... \\an. \\c. a_{w_k} (... (a_{w_1} c))``."""
    word = as_word(w, sigma)
    n = len(sigma)
    body: Term = Var(0)
    for letter in word:
        # under n letter binders and c, letter i sits at index n - i
        body = App(Var(n - sigma.index(letter)), body)
    t: Term = Lam(O, body, "c")
    endo = Arrow(O, O)
    for letter in reversed(sigma.letters):
        t = Lam(endo, t, letter)
    return t


def word_of_church(t: Term, sigma: Alphabet) -> Word:
    """Read a closed inhabitant of the Church type back as a word."""
    ty = typecheck(t)
    if ty != sigma.church_type:
        raise TypeCheckError(f"expected {sigma.church_type}, got {ty}")
    body = normalize(t)
    for _ in range(len(sigma) + 1):
        assert isinstance(body, Lam)
        body = body.body
    n = len(sigma)
    letters = []
    while isinstance(body, App):
        assert isinstance(body.fun, Var)
        letters.append(sigma.letters[n - body.fun.index])
        body = body.arg
    assert body == Var(0)
    return tuple(reversed(letters))
