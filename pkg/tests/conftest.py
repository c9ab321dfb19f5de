import math

import pytest
from hypothesis import settings, strategies as st

from chiralwg import CouplingConfig

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

coupling = st.floats(0.0, 3.0, allow_nan=False)
phase = st.floats(0.0, 2 * math.pi, exclude_max=True, allow_nan=False)
detuning = st.floats(-50.0, 50.0, allow_nan=False)


@st.composite
def configs(draw, n_max=8, lossless=False, markovian=None):
    n = draw(st.integers(1, n_max))
    xs = draw(st.lists(coupling, min_size=n, max_size=n))
    ys = draw(st.lists(coupling, min_size=n, max_size=n))
    gamma = 0.0 if lossless else draw(st.floats(0.0, 1.0))
    mk = draw(st.booleans()) if markovian is None else markovian
    tau = 0.0 if mk else draw(st.floats(0.0, 3.0))
    return CouplingConfig.from_arrays(xs, ys, gamma=gamma, phi12=draw(phase), tau12=tau, markovian=mk)


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion, then assert it."""

    def record(number: int, title: str, ok: bool, detail: str):
        _ACCEPTANCE[number] = (bool(ok), f"{title}: {detail}")
        assert ok, f"criterion {number} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, line = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{number}] {line}")
