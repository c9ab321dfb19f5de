import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from chiralwg import engine
from chiralwg.model import CouplingConfig
from chiralwg.regimes import DisorderedConfig, bec_lamb_shift_special, chiral_condition_special
from chiralwg.windows import find_reflection_windows, find_router_windows, golden_section_min

PI = math.pi


def test_golden_section_absolute_tolerance():
    assert golden_section_min(lambda v: (v - 1e-12) ** 2, -1.0, 1.0) == pytest.approx(0.0, abs=1e-10)
    assert golden_section_min(lambda v: abs(v - 0.3), 0.0, 1.0) == pytest.approx(0.3, abs=1e-10)


@pytest.mark.parametrize(
    "kwargs",
    [dict(delta_range=(1.0, 1.0)), dict(delta_range=(-1, 1), threshold=1.5), dict(delta_range=(-1, 1), resolution=10)],
)
def test_invalid_arguments(kwargs):
    with pytest.raises(ValueError):
        find_reflection_windows(CouplingConfig.uniform(2, 1.0, 1.0), **kwargs)


def test_router_windows_n6():
    x, y, xn = 1.0, 2.0, 0.5
    yn = chiral_condition_special(x, y, xn).yi_plus
    cfg = DisorderedConfig(6, x, y, 6, xn, yn).to_config()
    wins = find_router_windows(cfg, (-50, 50))
    assert len(wins) == 5
    for m, w in enumerate(wins, start=1):
        assert w.phase == pytest.approx(2 * PI * m / 6)
        assert w.center == pytest.approx(bec_lamb_shift_special(6, x, y, m), abs=1e-6)
        assert w.width == pytest.approx(2 * (x - xn) ** 2, abs=1e-9)


@pytest.mark.parametrize("n, m", [(3, 1), (4, 2), (5, 3)])
def test_even_direction_has_no_window(n, m):
    cfg = CouplingConfig.from_arrays([1.0] * n, list(np.linspace(0.5, 2.0, n)), phi12=2 * PI * m / n)
    assert find_reflection_windows(cfg, (-50, 50)) == []


def test_two_point_width():
    cfg = CouplingConfig.from_arrays([1, 3], [0.5, 2.5], phi12=PI)
    (w,) = find_reflection_windows(cfg, (-50, 50))
    assert w.center == pytest.approx(0.0, abs=1e-9)
    assert w.width == pytest.approx(8.0, abs=1e-9)
    assert w.min_T < 1e-20


@settings(max_examples=50)
@given(st.integers(1, 6), st.floats(0.3, 2.0), st.floats(0, 2 * PI, exclude_max=True))
def test_symmetric_window_fwhm(n, x, phi):
    cfg = CouplingConfig.uniform(n, x, x, phi12=phi)
    r = engine.rates(cfg)
    width = 2 * (r.gamma_x + r.gamma_y)
    lo, hi = r.lamb_shift - 2 * width - 1, r.lamb_shift + 2 * width + 1
    assume(width > 200 * (hi - lo) / 4001)  # window spans enough grid samples
    wins = find_reflection_windows(cfg, (lo, hi))
    assert len(wins) == 1
    w = wins[0]
    assert w.width == pytest.approx(width, rel=1e-9)
    assert w.min_T <= 0.5 * engine.scatter(cfg, w.center + w.width / 2).T_left + 1e-15
    for side in (-1, 1):
        assert engine.scatter(cfg, w.center + side * w.width / 2).T_left == pytest.approx(0.5, abs=1e-9)


def test_shallow_dip_has_zero_width():
    # chiral two-point atom with y = 3x: minimum transmission (8/10)^2 stays above 1/2
    cfg = CouplingConfig.uniform(2, 1.0, 3.0)
    (w,) = find_reflection_windows(cfg, (-50, 50), threshold=0.9)
    assert w.min_T == pytest.approx(0.64, abs=1e-12)
    assert w.center == pytest.approx(0.0, abs=1e-6)
    assert w.width == 0.0
