from __future__ import annotations

import pytest

from prolam.syntax import arrow_types, closed_normal_forms

DEPTH2 = tuple(arrow_types(2))

# criterion number -> (passed, description); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def depth2_types():
    return DEPTH2


@pytest.fixture(scope="session")
def normal_corpus():
    """``(type, term)`` for every closed long normal form of size <= 8 at depth <= 2."""
    return [(ty, m) for ty in DEPTH2 for m in closed_normal_forms(ty, 8)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {desc}")
