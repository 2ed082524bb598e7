"""Finite standard model of the simply typed lambda calculus.

Subpackages and modules, bottom up: :mod:`prolam.syntax` (types, terms,
normal forms), :mod:`prolam.model` (interpretation over ``[q]``),
:mod:`prolam.relations` (logical relations and partial surjections),
:mod:`prolam.definability`, :mod:`prolam.reglang` (regular languages of
terms), :mod:`prolam.profinite` (approximants of profinite terms) and
:mod:`prolam.automata` (DFAs and transition monoids).
"""

from .errors import (
    DefinabilityError,
    InvariantViolation,
    MismatchError,
    ParseError,
    ProlamError,
    SizeCapError,
    TypeCheckError,
    UnknownLetterError,
)

__version__ = "0.1.0"

__all__ = [
    "DefinabilityError",
    "InvariantViolation",
    "MismatchError",
    "ParseError",
    "ProlamError",
    "SizeCapError",
    "TypeCheckError",
    "UnknownLetterError",
]
