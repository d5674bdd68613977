from fractions import Fraction

import pytest
from hypothesis import strategies as st

from paraklein.algebra import Expression, Word, generators
from paraklein.fock import ModeSpec, build_representation


def expressions(m=2, n=2, max_len=3, max_terms=4):
    gens = generators(m, n)
    words = st.builds(
        Word,
        st.lists(st.sampled_from(gens), max_size=max_len).map(tuple),
        st.integers(0, 1),
    )
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(st.tuples(words, coeffs), max_size=max_terms).map(Expression)


_REPS = {}


def rep_for(m, n, p, cutoff, mutation=None):
    key = (m, n, p, cutoff, mutation)
    if key not in _REPS:
        _REPS[key] = build_representation(ModeSpec(m, n, p, cutoff), mutation=mutation)
    return _REPS[key]


@pytest.fixture
def rep112():
    return rep_for(1, 1, 2, 4)


def frac(x):
    return Fraction(x)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
