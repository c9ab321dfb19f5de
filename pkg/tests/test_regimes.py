import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from chiralwg import engine
from chiralwg.model import CouplingConfig
from chiralwg.regimes import (
    DisorderedConfig,
    InfeasibleError,
    NoNonreciprocityError,
    bec_closed_forms,
    bec_lamb_shift_special,
    chiral_condition_mod0,
    chiral_condition_special,
    disordered_rates,
    interference_C,
    interference_S,
    n2_transmission,
    optimal_gamma_mod0,
    optimal_gamma_special,
    optimal_nonreciprocity,
    optimal_nonreciprocity_gamma,
    optimal_yi_special,
    router_phases,
    special_phase_index,
    uniform_symmetric_probabilities,
)

from conftest import coupling, detuning, phase

PI = math.pi


def test_interference_factor_values():
    assert interference_C(3, 2 * PI / 3) == pytest.approx(0.0, abs=1e-15)
    assert interference_C(2, PI) == pytest.approx(0.0, abs=1e-15)
    assert interference_S(2, PI / 2) == pytest.approx(0.0, abs=1e-15)
    assert interference_C(4, 0.0) == 16


def test_interference_S_singular():
    with pytest.raises(ValueError):
        interference_S(1, 1e-9)
    with pytest.raises(ValueError):
        interference_S(1, 2 * PI - 1e-9)


@given(st.integers(1, 12), st.floats(1e-3, 2 * PI - 1e-3))
def test_interference_factors_match_definition(j, phi):
    assert interference_S(j, phi) == pytest.approx(math.sin(j * phi) / (1 - math.cos(phi)), rel=1e-9, abs=1e-9)
    assert interference_C(j, phi) == pytest.approx(math.sin(j * phi / 2) ** 2 / math.sin(phi / 2) ** 2, rel=1e-9, abs=1e-12)


def test_special_phase_index():
    assert special_phase_index(5, 2 * PI * 2 / 5) == 2
    assert special_phase_index(5, 0.0) == 0
    assert special_phase_index(5, 2 * PI - 1e-14) == 0
    assert special_phase_index(5, 1.0) is None


class TestUniformSymmetric:
    def test_resonance_is_total_reflection(self):
        n, x, phi = 3, 1.2, 0.9
        lamb = engine.rates(CouplingConfig.uniform(n, x, x, phi12=phi)).lamb_shift
        T, R = uniform_symmetric_probabilities(n, x, 0.0, phi, lamb)
        assert T == pytest.approx(0.0, abs=1e-24) and R == pytest.approx(1.0, abs=1e-12)

    def test_dark_phase_transmits(self):
        T, R = uniform_symmetric_probabilities(4, 1.0, 0.3, PI / 2, 0.7)
        assert T == pytest.approx(1.0, abs=1e-12) and R == pytest.approx(0.0, abs=1e-12)

    def test_worked_value(self):
        T, R = uniform_symmetric_probabilities(2, 1.0, 0.0, 0.0, 2.0)
        assert T == pytest.approx(0.2, abs=1e-15) and R == pytest.approx(0.8, abs=1e-15)

    @given(st.integers(1, 10), coupling, st.floats(0, 1), phase, detuning)
    def test_matches_engine(self, n, x, gamma, phi, delta):
        T, R = uniform_symmetric_probabilities(n, x, gamma, phi, delta)
        p = engine.scatter(CouplingConfig.uniform(n, x, x, gamma=gamma, phi12=phi), delta)
        assert T == pytest.approx(p.T_left, abs=1e-10)
        assert R == pytest.approx(p.R_left, abs=1e-10)


class TestBEC:
    def test_dark_phase_rates_vanish(self):
        _, gsum, gdiff = bec_closed_forms(5, 1.0, 2.0, 2 * PI / 5)
        assert gsum == pytest.approx(0.0, abs=1e-14) and gdiff == pytest.approx(0.0, abs=1e-14)

    def test_in_phase_total_rate(self):
        assert bec_closed_forms(2, 1.0, 2.0, 0.0)[1] == pytest.approx(10.0)

    def test_special_lamb_shift(self):
        assert bec_lamb_shift_special(4, 1.0, 2.0, 1) == pytest.approx(10.0)
        lamb = engine.rates(CouplingConfig.uniform(4, 1.0, 2.0, phi12=PI / 2)).lamb_shift
        assert lamb == pytest.approx(10.0, rel=1e-12)

    def test_special_index_range(self):
        with pytest.raises(ValueError):
            bec_lamb_shift_special(4, 1.0, 2.0, 4)

    @given(st.integers(2, 12), coupling, coupling, phase)
    def test_matches_engine(self, n, x, y, phi):
        lamb, gsum, gdiff = bec_closed_forms(n, x, y, phi)
        r = engine.rates(CouplingConfig.uniform(n, x, y, phi12=phi))
        scale = max(0.5 * n * n * (x * x + y * y), 1.0)
        assert abs(lamb - r.lamb_shift) / scale < 1e-10
        assert abs(gsum - (r.gamma_x + r.gamma_y)) / scale < 1e-10
        assert abs(gdiff - (r.gamma_x - r.gamma_y)) / scale < 1e-10


class TestTwoPoint:
    @given(coupling, coupling, coupling, detuning)
    def test_even_couplings_at_pi_transparent(self, x, y1, y2, delta):
        assert n2_transmission(x, y1, x, y2, PI, delta) == pytest.approx(1.0, abs=1e-12)

    def test_half_maximum(self):
        assert n2_transmission(1, 0.5, 3, 2.5, PI, 4.0) == pytest.approx(0.5, abs=1e-15)

    def test_in_phase_zero(self):
        assert n2_transmission(1, 2, 3, 2, 0.0, 0.0) == 0.0

    def test_phase_case_checked(self):
        with pytest.raises(ValueError):
            n2_transmission(1, 1, 1, 1, 1.0, 0.0)

    @given(coupling, coupling, coupling, coupling, st.sampled_from([0.0, PI]), detuning)
    def test_matches_engine(self, x1, y1, x2, y2, phi, delta):
        cfg = CouplingConfig.from_arrays([x1, x2], [y1, y2], phi12=phi)
        d = delta + engine.rates(cfg).lamb_shift
        assert n2_transmission(x1, y1, x2, y2, phi, delta) == pytest.approx(engine.scatter(cfg, d).T_left, abs=1e-10)


class TestDisordered:
    def test_expands_to_config(self):
        cfg = DisorderedConfig(4, 1.0, 2.0, 2, 0.5, 0.25, gamma=0.1, phi12=1.0).to_config()
        assert list(cfg.x) == [1.0, 0.5, 1.0, 1.0] and list(cfg.y) == [2.0, 0.25, 2.0, 2.0]
        assert cfg.gamma == 0.1

    def test_bad_index(self):
        with pytest.raises(ValueError):
            DisorderedConfig(3, 1, 1, 4, 1, 1)

    def test_agrees_with_bec_when_ordered(self):
        dc = DisorderedConfig(2, 1.0, 2.0, 2, 1.0, 2.0)
        assert disordered_rates(dc)[1] == pytest.approx(10.0)
        assert disordered_rates(dc) == pytest.approx(bec_closed_forms(2, 1.0, 2.0, 0.0))

    @given(st.integers(2, 12), st.data(), coupling, coupling, coupling, coupling)
    def test_lamb_shift_independent_of_last_point(self, n, data, x, y, xn, yn):
        m = data.draw(st.integers(1, n - 1))
        phi = 2 * PI * m / n
        a = disordered_rates(DisorderedConfig(n, x, y, n, xn, yn, phi12=phi))[0]
        b = disordered_rates(DisorderedConfig(n, x, y, n, x, y, phi12=phi))[0]
        assert abs(a - b) < 1e-12 * max(abs(b), 1.0)
        assert a == pytest.approx(bec_lamb_shift_special(n, x, y, m), rel=1e-12, abs=1e-12)

    @given(st.integers(1, 11), coupling, coupling, coupling, coupling)
    def test_special_rates_independent_of_n(self, m, x, y, xi, yi):
        ref = None
        for n in range(m + 1, 13):
            _, gsum, gdiff = disordered_rates(DisorderedConfig(n, x, y, n, xi, yi, phi12=2 * PI * m / n))
            if ref is None:
                ref = (gsum, gdiff)
            assert abs(gsum - ref[0]) < 1e-12 and abs(gdiff - ref[1]) < 1e-12

    @given(st.integers(2, 8), st.data(), coupling, coupling, coupling)
    def test_one_even_direction_is_transparent(self, n, data, x, y, yi):
        m = data.draw(st.integers(1, n - 1))
        cfg = DisorderedConfig(n, x, y, n, x, yi, phi12=2 * PI * m / n).to_config()
        s = engine.spectrum(cfg, np.linspace(-50, 50, 201))
        assert np.all(np.abs(s.T_left - 1) < 1e-12) and np.all(np.abs(s.T_right - 1) < 1e-12)

    @given(st.integers(2, 12), st.data(), coupling, coupling, coupling, coupling, phase)
    def test_matches_engine(self, n, data, x, y, xi, yi, phi):
        dc = DisorderedConfig(n, x, y, data.draw(st.integers(1, n)), xi, yi, phi12=phi)
        lamb, gsum, gdiff = disordered_rates(dc)
        r = engine.rates(dc.to_config())
        scale = max(0.5 * (n * 3.0) ** 2, 1.0)
        assert abs(lamb - r.lamb_shift) / scale < 1e-10
        assert abs(gsum - (r.gamma_x + r.gamma_y)) / scale < 1e-10
        assert abs(gdiff - (r.gamma_x - r.gamma_y)) / scale < 1e-10


class TestChiralConditions:
    def test_mod0(self):
        assert chiral_condition_mod0(2, 1, 2, 3) == 2
        assert chiral_condition_mod0(5, 1.5, 1.5, 0.7) == 0.7
        with pytest.raises(InfeasibleError):
            chiral_condition_mod0(5, 1, 2, 3)

    def test_special(self):
        assert tuple(chiral_condition_special(1, 2, 3)) == (4, 0)
        assert tuple(chiral_condition_special(1, 2, 1)) == (2, 2)
        br = chiral_condition_special(1, 0.5, 0.5)
        assert tuple(br) == (1.0, 0.0) and br.minus_feasible
        assert not chiral_condition_special(1, 0.5, 2.0).minus_feasible

    @given(st.integers(2, 10), coupling, coupling, coupling)
    def test_mod0_gives_total_reflection(self, n, x, y, xi):
        try:
            yi = chiral_condition_mod0(n, x, y, xi)
        except InfeasibleError:
            return
        assume((n - 1) * x + xi > 1e-6)  # a decoupled atom cannot reflect
        cfg = DisorderedConfig(n, x, y, n, xi, yi).to_config()
        assert engine.scatter(cfg, 0.0).T_left < 1e-20


class TestNonreciprocity:
    def test_contrast_one_at_optimum(self):
        # gamma_x = 1, gamma_y = 0.5 for a small atom with x^2 = 2, y^2 = 1
        cfg = CouplingConfig.uniform(1, math.sqrt(2), 1.0)
        assert optimal_nonreciprocity_gamma(cfg) == pytest.approx(0.5)
        p = optimal_nonreciprocity(cfg)
        assert p.contrast == pytest.approx(1.0, abs=1e-12)

    def test_one_sided_coupling(self):
        # y even and dark at phi = 2 pi / 3 while x is uneven: gamma_y = 0
        cfg = CouplingConfig.from_arrays([1.0, 2.0, 0.5], [1.0, 1.0, 1.0], phi12=2 * PI / 3)
        r = engine.rates(cfg)
        assert r.gamma_y == 0.0
        p = optimal_nonreciprocity(cfg)
        assert p.gamma == pytest.approx(r.gamma_x)
        assert p.T_right < 1e-24 and p.T_left == pytest.approx(1.0, abs=1e-12)

    def test_balanced_raises(self):
        with pytest.raises(NoNonreciprocityError):
            optimal_nonreciprocity_gamma(CouplingConfig.uniform(3, 1.0, 1.0, phi12=0.4))

    def test_retarded_config_rejected(self):
        with pytest.raises(ValueError):
            optimal_nonreciprocity_gamma(CouplingConfig.uniform(2, 1.0, 2.0, tau12=1.0, markovian=False))

    @given(st.integers(2, 10), coupling, coupling, coupling, coupling)
    def test_optimal_gamma_closed_forms(self, n, x, y, xi, yi):
        r0 = engine.rates(DisorderedConfig(n, x, y, n, xi, yi).to_config())
        assert optimal_gamma_mod0(n, x, y, xi, yi) == pytest.approx(abs(r0.gamma_x - r0.gamma_y), rel=1e-10, abs=1e-10)
        r1 = engine.rates(DisorderedConfig(n, x, y, n, xi, yi, phi12=2 * PI / n).to_config())
        assert optimal_gamma_special(x, y, xi, yi) == pytest.approx(abs(r1.gamma_x - r1.gamma_y), rel=1e-10, abs=1e-10)

    @given(coupling, coupling, coupling, st.floats(0, 2))
    def test_optimal_yi_on_hyperbola(self, x, y, xi, gamma):
        for yi in optimal_yi_special(x, y, xi, gamma):
            assert yi >= 0
            assert optimal_gamma_special(x, y, xi, yi) == pytest.approx(gamma, abs=1e-9)


def test_router_phases_exclude_aliases():
    np.testing.assert_allclose(router_phases(4), [PI / 2, PI, 3 * PI / 2])
    assert len(router_phases(1)) == 0
