import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chiralwg.model import (
    CouplingConfig,
    CouplingPoint,
    PhaseModel,
    RegimeLabel,
    classify_regime,
    normalize_phase,
    phase_between,
)

from conftest import phase


def test_negative_or_nonfinite_coupling_rejected():
    with pytest.raises(ValueError):
        CouplingPoint(-0.1, 1.0)
    with pytest.raises(ValueError):
        CouplingPoint(1.0, math.nan)


def test_empty_config_rejected():
    with pytest.raises(ValueError):
        CouplingConfig.from_arrays([], [])


def test_negative_gamma_rejected():
    with pytest.raises(ValueError):
        CouplingConfig.uniform(2, 1.0, 1.0, gamma=-1.0)


@given(st.floats(-100, 100))
def test_normalize_phase_range(phi):
    p = normalize_phase(phi)
    assert 0.0 <= p < 2 * math.pi
    assert math.isclose(math.cos(p), math.cos(phi), abs_tol=1e-9)


def test_phase_model_markovian_ignores_delta():
    pm = PhaseModel(phi12=0.3, tau12=2.0, markovian=True)
    assert pm.step(5.0) == pytest.approx(0.3)
    nm = PhaseModel(phi12=0.3, tau12=2.0, markovian=False)
    assert nm.step(5.0) == pytest.approx(10.3)


@given(st.integers(2, 8), phase, st.floats(-5, 5))
def test_phase_between_linear_in_separation(n, phi, delta):
    cfg = CouplingConfig.uniform(n, 1.0, 1.0, phi12=phi, tau12=0.7, markovian=False)
    step = phase_between(cfg, 1, 2, delta)
    assert phase_between(cfg, 1, n, delta) == pytest.approx((n - 1) * step)
    assert phase_between(cfg, n, 1, delta) == phase_between(cfg, 1, n, delta)


def test_phase_between_index_checked():
    cfg = CouplingConfig.uniform(3, 1.0, 1.0)
    with pytest.raises(IndexError):
        phase_between(cfg, 0, 2)
    with pytest.raises(IndexError):
        phase_between(cfg, 1, 4)


@pytest.mark.parametrize(
    "xs, ys, label",
    [
        ([1, 1, 1], [1, 1, 1], RegimeLabel.UNIFORM_SYMMETRIC),
        ([1, 1, 1], [2, 2, 2], RegimeLabel.BEC),
        ([1, 1, 1], [1, 2, 3], RegimeLabel.UUEC),
        ([1, 2, 3], [2, 2, 2], RegimeLabel.UUEC),
        ([1, 2, 1], [2, 1, 3], RegimeLabel.BUEC),
    ],
)
def test_classify_regime(xs, ys, label):
    assert classify_regime(CouplingConfig.from_arrays(xs, ys)) is label


def test_swapped_and_mirrored():
    cfg = CouplingConfig.from_arrays([1, 2, 3], [4, 5, 6], gamma=0.2, phi12=1.0)
    assert np.array_equal(cfg.swapped().x, [4, 5, 6])
    # spatial reflection reverses the points and exchanges the two directions
    assert np.array_equal(cfg.mirrored().x, [6, 5, 4])
    assert np.array_equal(cfg.mirrored().y, [3, 2, 1])
    assert cfg.mirrored().gamma == cfg.gamma


def test_with_point_is_one_based():
    cfg = CouplingConfig.uniform(3, 1.0, 2.0).with_point(3, 0.5, 0.25)
    assert list(cfg.x) == [1.0, 1.0, 0.5]
    assert list(cfg.y) == [2.0, 2.0, 0.25]
