"""Exception hierarchy shared by every layer."""

from __future__ import annotations


class ProlamError(Exception):
    """Base class for all domain errors (CLI exit status 1)."""


class ParseError(ProlamError):
    def __init__(self, message: str, pos: int, src: str = ""):
        self.pos = pos
        self.src = src
        super().__init__(f"{message} at position {pos}")


class TypeCheckError(ProlamError):
    def __init__(self, message: str, path: tuple[str, ...] = ()):
        self.path = path
        where = "/".join(path) if path else "<root>"
        super().__init__(f"{message} (at {where})")


class UnknownLetterError(ProlamError):
    pass


class SizeCapError(ProlamError):
    """Raised instead of materializing a denotation that is too large."""

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        shown = str(size) if size < 10**30 else f"about 2^{size.bit_length() - 1}"
        super().__init__(f"{what}: size {shown} exceeds materialization cap {cap}")


class MismatchError(ProlamError):
    """Den, q, type or cutoff mismatch between operands."""


class DefinabilityError(ProlamError):
    """A component was offered without evidence that it is lambda-definable."""


class InvariantViolation(AssertionError):
    """A mathematical invariant failed; signals a bug, not bad input."""
