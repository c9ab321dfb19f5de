"""Locating total-reflection windows in a transmission spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .engine import spectrum
from .model import CouplingConfig
from .regimes import router_phases

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ReflectionWindow:
    center: float  # detuning of minimal transmission
    width: float  # extent of the T < 1/2 interval around the minimum
    min_T: float
    phase: float  # phi12 of the configuration that was scanned


def golden_section_min(f, a: float, b: float, xtol: float = 1e-10, maxiter: int = 200) -> float:
    """Minimiser of a unimodal ``f`` on ``[a, b]``, to absolute tolerance ``xtol``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if abs(b - a) <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _T(config: CouplingConfig):
    return lambda d: float(spectrum(config, [d]).T_left[0])


def _edge(f, inside: float, grid: np.ndarray, values: np.ndarray, k: int, step: int, level: float) -> float:
    """Crossing of ``f = level`` moving from grid index ``k`` in direction ``step``."""
    j = k
    while 0 <= j + step < len(grid) and values[j + step] < level:
        j += step
    if not 0 <= j + step < len(grid):
        return float(grid[j])
    lo, hi = sorted((float(grid[j]) if j != k else inside, float(grid[j + step])))
    g = lambda d: f(d) - level  # noqa: E731
    if g(lo) * g(hi) > 0:
        return float(grid[j + step])
    return brentq(g, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps)


def find_reflection_windows(
    config: CouplingConfig,
    delta_range: tuple[float, float],
    threshold: float = 0.5,
    resolution: int = 4001,
    level: float = 0.5,
) -> list[ReflectionWindow]:
    """Scan ``T_left`` on a uniform detuning grid and report every dip below ``threshold``.

    Each contiguous sub-threshold run yields one window.  Its centre is the
    grid minimum refined by golden-section search to 1e-10; where the minimum
    of ``T`` is not zero the flat bottom limits this to about ``sqrt(eps)``
    times the window scale.  The width is the distance between the
    ``T = level`` crossings on either side.
    """
    lo, hi = map(float, delta_range)
    if not hi > lo:
        raise ValueError(f"empty detuning range {delta_range!r}")
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    if resolution < 1000:
        raise ValueError("resolution must be at least 1000 samples")

    grid = np.linspace(lo, hi, resolution)
    T = spectrum(config, grid).T_left
    below = T < threshold
    f = _T(config)
    out = []
    k = 0
    while k < resolution:
        if not below[k]:
            k += 1
            continue
        start = k
        while k < resolution and below[k]:
            k += 1
        run = slice(start, k)
        kmin = start + int(np.argmin(T[run]))
        a = grid[max(kmin - 1, 0)]
        b = grid[min(kmin + 1, resolution - 1)]
        center = golden_section_min(f, a, b)
        tmin = f(center)
        if tmin > T[kmin]:
            center, tmin = float(grid[kmin]), float(T[kmin])
        if tmin < level:
            left = _edge(f, center, grid, T, kmin, -1, level)
            right = _edge(f, center, grid, T, kmin, +1, level)
            width = right - left
        else:
            width = 0.0
        out.append(ReflectionWindow(float(center), float(width), float(tmin), config.phase.phi12))
    return out


def find_router_windows(
    config: CouplingConfig,
    delta_range: tuple[float, float],
    threshold: float = 0.5,
    resolution: int = 4001,
) -> list[ReflectionWindow]:
    """Windows at each router phase ``2 m pi / N``, ``m = 1..N-1``."""
    out = []
    for phi in router_phases(config.n):
        out.extend(find_reflection_windows(config.with_phase(phi12=phi), delta_range, threshold, resolution))
    return out
