from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from bigbracket.graded import Element, full_basis

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

small_rationals = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
nonzero_rationals = st.builds(Fraction, st.integers(-3, 3).filter(bool), st.integers(1, 3))


def elements(d: int, max_terms: int = 4):
    basis = full_basis(d)
    return st.dictionaries(st.sampled_from(basis), small_rationals, max_size=max_terms).map(Element)


def homogeneous_elements(d: int, max_terms: int = 3):
    basis = full_basis(d)
    by_deg = {}
    for m in basis:
        by_deg.setdefault(m.degree, []).append(m)
    return st.sampled_from(sorted(by_deg)).flatmap(
        lambda n: st.dictionaries(st.sampled_from(by_deg[n]), nonzero_rationals, min_size=1, max_size=max_terms).map(Element)
    )


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
