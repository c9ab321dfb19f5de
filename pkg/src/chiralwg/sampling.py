"""Random configurations for property checks and verification runs."""

from __future__ import annotations

import math

import numpy as np

from .model import CouplingConfig, RegimeLabel

REGIMES = tuple(RegimeLabel)


def random_couplings(rng: np.random.Generator, n: int, regime: RegimeLabel, high: float = 3.0):
    if regime is RegimeLabel.UNIFORM_SYMMETRIC:
        v = rng.uniform(0, high)
        return np.full(n, v), np.full(n, v)
    if regime is RegimeLabel.BEC:
        return np.full(n, rng.uniform(0, high)), np.full(n, rng.uniform(0, high))
    if regime is RegimeLabel.UUEC:
        even = np.full(n, rng.uniform(0, high))
        uneven = rng.uniform(0, high, n)
        return (even, uneven) if rng.random() < 0.5 else (uneven, even)
    return rng.uniform(0, high, n), rng.uniform(0, high, n)


def random_config(
    rng: np.random.Generator,
    n_max: int = 8,
    regime: RegimeLabel | None = None,
    gamma_max: float = 1.0,
    tau_max: float = 3.0,
    markovian: bool | None = None,
    lossless: bool = False,
) -> CouplingConfig:
    """Configuration with ``N`` in ``[1, n_max]``, couplings in ``[0, 3]`` and a random phase.

    ``regime``, ``markovian`` and ``lossless`` pin the corresponding choice;
    left as ``None`` they are drawn at random too.
    """
    n = int(rng.integers(1, n_max + 1))
    if regime is None:
        regime = REGIMES[int(rng.integers(len(REGIMES)))]
    if markovian is None:
        markovian = bool(rng.integers(2))
    x, y = random_couplings(rng, n, regime)
    return CouplingConfig.from_arrays(
        x,
        y,
        gamma=0.0 if lossless else float(rng.uniform(0, gamma_max)),
        phi12=float(rng.uniform(0, 2 * math.pi)),
        tau12=0.0 if markovian else float(rng.uniform(0, tau_max)),
        markovian=markovian,
    )
