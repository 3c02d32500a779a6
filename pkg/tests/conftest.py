import functools
from pathlib import Path

import pytest

from twistnf.hilbert import hilbert_basis
from twistnf.matching import build_matching_system
from twistnf.triangulation import parse_triangulation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# PASS/FAIL lines from the acceptance module, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def _square():
    tri = parse_triangulation((FIXTURES / "square_unknot.tri").read_text())
    system = build_matching_system(tri)
    return tri, system, tuple(hilbert_basis(system))


@pytest.fixture(scope="session")
def square():
    """The square-unknot fixture with its matching system and Hilbert basis."""
    return _square()


@pytest.fixture
def fixtures_dir():
    return FIXTURES
