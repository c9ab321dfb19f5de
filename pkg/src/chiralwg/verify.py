"""Randomised verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from . import engine
from .model import CouplingConfig
from .oracle import solve_oracle
from .regimes import DisorderedConfig, disordered_rates
from .sampling import random_config

DELTA_RANGE = (-50.0, 50.0)


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: int
    max_dev: float
    tol: float
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.name:<22} {self.trials - self.failures}/{self.trials} ok  "
            f"max_dev={self.max_dev:.3e}  tol={self.tol:.0e}  ({self.seconds:.2f}s)"
        )


def _scale(config: CouplingConfig) -> float:
    """Natural rate scale: collective decay rate of the in-phase atom."""
    return max(0.5 * config.x.sum() ** 2 + 0.5 * config.y.sum() ** 2, 1.0)


def _closed_point(config: CouplingConfig, delta: float, fault: bool) -> engine.Spectrum:
    s = engine.spectrum(config, [delta])
    if fault:
        flipped = replace(s.rates, gamma_xy=-s.rates.gamma_xy)
        s = engine.spectrum_from_rates(flipped, s.delta, config.gamma)
    return s


def oracle_equivalence(rng, trials: int, tol: float = 1e-12, fault: bool = False) -> SuiteResult:
    """Closed-form amplitudes against the linear-system oracle, both directions."""
    worst, bad = 0.0, 0
    for _ in range(trials):
        cfg = random_config(rng)
        delta = float(rng.uniform(*DELTA_RANGE))
        s = _closed_point(cfg, delta, fault)
        left = solve_oracle(cfg, delta, "left")
        right = solve_oracle(cfg, delta, "right")
        dev = max(
            abs(s.t_left[0] - left.t),
            abs(s.r_left[0] - left.r),
            abs(s.t_right[0] - right.t),
            abs(s.r_right[0] - right.r),
        )
        worst = max(worst, dev)
        bad += dev >= tol
    return SuiteResult("oracle_equivalence", trials, bad, worst, tol)


def _spectra(rng, trials: int, per_config: int, **kw):
    for _ in range(trials):
        cfg = random_config(rng, **kw)
        yield cfg, engine.spectrum(cfg, rng.uniform(*DELTA_RANGE, per_config))


def flux_conservation(rng, trials: int, per_config: int = 100, tol: float = 1e-12) -> SuiteResult:
    worst, bad = 0.0, 0
    for _, s in _spectra(rng, trials, per_config, lossless=True):
        dev = np.abs(s.T_left + s.R_left - 1.0)
        dev = np.maximum(dev, np.abs(s.T_right + s.R_right - 1.0))
        worst = max(worst, float(dev.max()))
        bad += int(np.count_nonzero(dev >= tol))
    return SuiteResult("flux_conservation", trials * per_config, bad, worst, tol)


def reflection_reciprocity(rng, trials: int, per_config: int = 100, tol: float = 1e-12) -> SuiteResult:
    worst, bad = 0.0, 0
    for _, s in _spectra(rng, trials, per_config):
        dev = np.abs(s.R_left - s.R_right)
        worst = max(worst, float(dev.max()))
        bad += int(np.count_nonzero(dev >= tol))
    return SuiteResult("reflection_reciprocity", trials * per_config, bad, worst, tol)


def lossless_transmission_reciprocity(rng, trials: int, per_config: int = 100, tol: float = 1e-12) -> SuiteResult:
    worst, bad = 0.0, 0
    for _, s in _spectra(rng, trials, per_config, lossless=True):
        dev = np.abs(s.T_left - s.T_right)
        worst = max(worst, float(dev.max()))
        bad += int(np.count_nonzero(dev >= tol))
    return SuiteResult("transmission_reciprocity", trials * per_config, bad, worst, tol)


def cross_rate_identity(rng, trials: int, tol: float = 1e-12) -> SuiteResult:
    """``|gamma_xy|^2 = 4 gamma_x gamma_y``, relative to ``(gamma_x + gamma_y)^2``."""
    worst, bad = 0.0, 0
    for _ in range(trials):
        cfg = random_config(rng)
        r = engine.rates(cfg, float(rng.uniform(*DELTA_RANGE)))
        ref = max((r.gamma_x + r.gamma_y) ** 2, np.finfo(float).tiny)
        dev = abs(abs(r.gamma_xy) ** 2 - 4 * r.gamma_x * r.gamma_y) / ref
        worst = max(worst, dev)
        bad += dev >= tol
    return SuiteResult("cross_rate_identity", trials, bad, worst, tol)


def pairwise_vs_coherent(rng, trials: int, tol: float = 1e-12) -> SuiteResult:
    """O(N^2) double sums against the O(N) coherent sums, relative to the rate scale."""
    worst, bad = 0.0, 0
    for _ in range(trials):
        cfg = random_config(rng, n_max=64)
        delta = float(rng.uniform(*DELTA_RANGE))
        a = engine.rates(cfg, delta, method="coherent")
        b = engine.rates(cfg, delta, method="pairwise")
        dev = max(
            abs(a.lamb_shift - b.lamb_shift),
            abs(a.gamma_x - b.gamma_x),
            abs(a.gamma_y - b.gamma_y),
            abs(a.gamma_xy - b.gamma_xy),
        ) / _scale(cfg)
        worst = max(worst, dev)
        bad += dev >= tol
    return SuiteResult("pairwise_vs_coherent", trials, bad, worst, tol)


def closed_form_rates(rng, trials: int, tol: float = 1e-10) -> SuiteResult:
    """Single-disordered-point closed forms against the general engine."""
    worst, bad = 0.0, 0
    for _ in range(trials):
        n = int(rng.integers(2, 13))
        kind = rng.integers(3)
        if kind == 0:
            phi = float(rng.uniform(0, 2 * np.pi))
        elif kind == 1:
            phi = 2 * np.pi * int(rng.integers(1, n)) / n
        else:
            phi = 0.0
        x, y, xi, yi = rng.uniform(0, 3, 4)
        dc = DisorderedConfig(n, x, y, int(rng.integers(1, n + 1)), xi, yi, phi12=phi)
        cfg = dc.to_config()
        lamb, gsum, gdiff = disordered_rates(dc)
        r = engine.rates(cfg)
        dev = max(
            abs(lamb - r.lamb_shift),
            abs(gsum - (r.gamma_x + r.gamma_y)),
            abs(gdiff - (r.gamma_x - r.gamma_y)),
        ) / _scale(cfg)
        worst = max(worst, dev)
        bad += dev >= tol
    return SuiteResult("closed_form_rates", trials, bad, worst, tol)


def oracle_unitarity(rng, trials: int, tol: float = 1e-12) -> SuiteResult:
    """``|t|^2 + |r|^2 = 1`` from the linear solve alone, lossless atom."""
    worst, bad = 0.0, 0
    for _ in range(trials):
        cfg = random_config(rng, lossless=True)
        sol = solve_oracle(cfg, float(rng.uniform(*DELTA_RANGE)), "left" if rng.random() < 0.5 else "right")
        dev = abs(abs(sol.t) ** 2 + abs(sol.r) ** 2 - 1.0)
        worst = max(worst, dev)
        bad += dev >= tol
    return SuiteResult("oracle_unitarity", trials, bad, worst, tol)


def run_all(seed: int, trials: int, fault: bool = False) -> list[SuiteResult]:
    """Run every suite; spectral suites draw ``trials // 10`` configurations x 100 detunings."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    suites = [
        lambda: oracle_equivalence(rng, trials, fault=fault),
        lambda: oracle_unitarity(rng, trials),
        lambda: flux_conservation(rng, max(trials // 10, 1)),
        lambda: reflection_reciprocity(rng, max(trials // 10, 1)),
        lambda: lossless_transmission_reciprocity(rng, max(trials // 10, 1)),
        lambda: cross_rate_identity(rng, trials),
        lambda: pairwise_vs_coherent(rng, max(trials // 10, 1)),
        lambda: closed_form_rates(rng, trials),
    ]
    out = []
    for suite in suites:
        t0 = time.perf_counter()
        res = suite()
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out

