from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parents[1] / "data" / "fixtures"

# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def random_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


finite = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


@st.composite
def complex_matrices(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    vals = draw(st.lists(complexes, min_size=n * n, max_size=n * n))
    return np.array(vals, dtype=complex).reshape(n, n)


seeds = st.integers(0, 2**32 - 1)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
