"""Decimal conversion for integers beyond the interpreter's str() digit limit."""

from __future__ import annotations

_CHUNK = 1000


def to_decimal(n: int) -> str:
    if n < 0:
        return "-" + to_decimal(-n)
    if n < 10**_CHUNK:
        return str(n)
    # split at a power of ten whose digit count is a multiple of the chunk
    k = _CHUNK
    while n >= 10 ** (2 * k):
        k *= 2
    hi, lo = divmod(n, 10**k)
    return to_decimal(hi) + to_decimal(lo).rjust(k, "0")


def from_decimal(s: str) -> int:
    s = s.strip()
    if s.startswith("-"):
        return -from_decimal(s[1:])
    if not s.isdigit():
        raise ValueError(f"not a decimal integer: {s[:40]!r}")
    n = 0
    for i in range(0, len(s), _CHUNK):
        part = s[i : i + _CHUNK]
        n = n * 10 ** len(part) + int(part)
    return n
