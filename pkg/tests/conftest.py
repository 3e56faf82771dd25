import numpy as np
import pytest
from hypothesis import strategies as st

from cesaro_lab.fracdiff import ZSeq

ASSANI = np.array([[-1, 2], [0, -1]], dtype=complex)
JORDAN = np.array([[1, 1], [0, 1]], dtype=complex)

ACCEPTANCE_LINES: list[str] = []


def zseqs(min_lo=-6, max_lo=6, max_len=8, nonzero=False):
    """Hypothesis strategy for finitely supported complex sequences."""
    part = st.floats(-1, 1, allow_nan=False, allow_infinity=False)
    value = st.builds(complex, part, part)

    @st.composite
    def build(draw):
        lo = draw(st.integers(min_lo, max_lo))
        vals = draw(st.lists(value, min_size=1, max_size=max_len))
        f = ZSeq(lo, vals)
        if nonzero:
            from hypothesis import assume

            assume(not f.is_zero)
        return f

    return build()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
