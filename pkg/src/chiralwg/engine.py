"""Lamb shift, directional decay rates and single-photon scattering amplitudes.

The rates are built from the coherent sums ``X = sum_j x_j exp(i k z_j)`` and
``Y = sum_j y_j exp(i k z_j)``::

    gamma_x = |X|**2 / 2,  gamma_y = |Y|**2 / 2,  gamma_xy = X * Y

and the Lamb shift from the ordered pair sums
``sum_{l<j} c_l c_j sin((j - l) k d)``, evaluated in O(N) with a prefix sum.
:func:`rates_pairwise` keeps the literal O(N**2) double sums for
cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Literal

import numpy as np

from .model import CouplingConfig

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Rates:
    """Lamb shift and decay rates.  Fields are floats, or arrays for a Δ grid."""

    lamb_shift: float
    gamma_x: float
    gamma_y: float
    gamma_xy: complex


@dataclass(frozen=True)
class SpectralPoint:
    delta: float
    t_left: complex
    r_left: complex
    t_right: complex
    r_right: complex
    T_left: float
    R_left: float
    T_right: float
    R_right: float
    loss_left: float
    loss_right: float
    contrast: float
    rates: Rates


@dataclass(frozen=True)
class Spectrum:
    """Same content as :class:`SpectralPoint`, one array entry per detuning."""

    delta: np.ndarray
    t_left: np.ndarray
    r_left: np.ndarray
    t_right: np.ndarray
    r_right: np.ndarray
    T_left: np.ndarray
    R_left: np.ndarray
    T_right: np.ndarray
    R_right: np.ndarray
    loss_left: np.ndarray
    loss_right: np.ndarray
    contrast: np.ndarray
    rates: Rates

    def __len__(self):
        return len(self.delta)

    def point(self, k: int) -> SpectralPoint:
        vals = {}
        for f in fields(self):
            if f.name == "rates":
                continue
            v = getattr(self, f.name)[k]
            vals[f.name] = complex(v) if np.iscomplexobj(v) else float(v)
        r = self.rates
        rates = Rates(float(r.lamb_shift[k]), float(r.gamma_x[k]), float(r.gamma_y[k]), complex(r.gamma_xy[k]))
        return SpectralPoint(rates=rates, **vals)


def _step_phases(config: CouplingConfig, deltas: np.ndarray) -> np.ndarray:
    """Adjacent-point phase for each detuning; a single entry when Markovian."""
    ph = config.phase
    if ph.markovian or ph.tau12 == 0.0:
        return np.array([ph.phi12])
    return ph.phi12 + deltas * ph.tau12


def _coherent(c: np.ndarray, phi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Coherent sum ``sum c_j e^{i j phi}`` and ordered sine sum, per phase.

    Sums that vanish to within their own rounding error are snapped to zero,
    so exactly decoupled (dark) configurations come out exactly decoupled.
    """
    n = len(c)
    j = np.arange(n)
    arg = np.outer(phi, j)
    terms = c * np.exp(1j * arg)
    total = terms.sum(axis=1)
    # exclusive prefix sum of conj(terms): sum_{l<j} c_l e^{-i l phi}
    prefix = np.cumsum(np.conj(terms), axis=1) - np.conj(terms)
    shift = np.imag(np.sum(terms * prefix, axis=1))
    tol = 4.0 * _EPS * np.sum(c * (n + j * np.abs(phi)[:, None]), axis=1)
    total = np.where(np.abs(total) <= tol, 0.0, total)
    return total, shift


def _rates_grid(config: CouplingConfig, deltas: np.ndarray) -> Rates:
    phi = _step_phases(config, deltas)
    sx, dx = _coherent(config.x, phi)
    sy, dy = _coherent(config.y, phi)
    shape = deltas.shape
    bcast = lambda a: np.broadcast_to(a, shape).copy() if a.shape != shape else a  # noqa: E731
    return Rates(
        lamb_shift=bcast(dx + dy),
        gamma_x=bcast(0.5 * np.abs(sx) ** 2),
        gamma_y=bcast(0.5 * np.abs(sy) ** 2),
        gamma_xy=bcast(sx * sy),
    )


def rates_pairwise(config: CouplingConfig, delta: float = 0.0) -> Rates:
    """Literal double sums over all pairs of coupling points (O(N**2))."""
    phi = float(_step_phases(config, np.array([float(delta)]))[0])
    x, y = config.x, config.y
    j = np.arange(config.n)
    dist = np.abs(j[:, None] - j[None, :])
    ph = dist * phi
    cos, sin = np.cos(ph), np.sin(ph)
    gx = 0.5 * float(x @ cos @ x)
    gy = 0.5 * float(y @ cos @ y)
    lamb = 0.5 * float(x @ sin @ x) + 0.5 * float(y @ sin @ y)
    kz = j * phi
    gxy = complex(np.sum(x * np.exp(1j * kz)) * np.sum(y * np.exp(1j * kz)))
    return Rates(lamb, gx, gy, gxy)


def rates(
    config: CouplingConfig,
    delta: float = 0.0,
    method: Literal["coherent", "pairwise"] = "coherent",
) -> Rates:
    """Lamb shift and directional decay rates at detuning ``delta``.

    ``delta`` matters only for non-Markovian configurations.
    """
    if method == "pairwise":
        return rates_pairwise(config, delta)
    if method != "coherent":
        raise ValueError(f"unknown method {method!r}")
    r = _rates_grid(config, np.array([float(delta)]))
    return Rates(float(r.lamb_shift[0]), float(r.gamma_x[0]), float(r.gamma_y[0]), complex(r.gamma_xy[0]))


def _cdiv(z, s):
    # complex / real, componentwise: numpy's complex division overflows for subnormal s
    z = np.asarray(z, dtype=complex)
    return z.real / s + 1j * (z.imag / s)


def amplitudes(r: Rates, delta, gamma: float):
    """Transmission/reflection amplitudes for both incidence directions.

    Returns ``(t_left, r_left, t_right, r_right)``; at an exactly vanishing
    denominator the atom is decoupled and ``t = 1, r = 0`` is returned.
    """
    delta = np.asarray(delta, dtype=float)
    d = delta - r.lamb_shift
    width = gamma + r.gamma_x + r.gamma_y
    # common rescaling keeps subnormal inputs from overflowing the division
    scale = np.maximum(np.abs(d), width)
    dead = scale == 0
    scale = np.where(dead, 1.0, scale)
    d, g, gx, gy, gxy = d / scale, gamma / scale, r.gamma_x / scale, r.gamma_y / scale, _cdiv(r.gamma_xy, scale)
    den = d + 1j * (g + gx + gy)
    safe = np.where(dead, 1.0, den)
    t_l = np.where(dead, 1.0, (d + 1j * (g + gx - gy)) / safe)
    t_r = np.where(dead, 1.0, (d + 1j * (g - gx + gy)) / safe)
    r_l = np.where(dead, 0.0, -1j * gxy / safe)
    # right incidence; sign fixed by the boundary-matching solution
    r_r = np.where(dead, 0.0, -1j * np.conj(gxy) / safe)
    return t_l, r_l, t_r, r_r


def _contrast(d, gamma, gx, gy):
    diff = np.abs(gx - gy)
    scale = np.maximum(np.maximum(np.abs(d), gamma), diff)
    dead = scale == 0
    scale = np.where(dead, 1.0, scale)
    d, gamma, diff = d / scale, gamma / scale, diff / scale
    den = d**2 + gamma**2 + diff**2
    return np.where(dead, 0.0, 2.0 * gamma * diff / np.where(dead, 1.0, den))


def spectrum_from_rates(r: Rates, deltas, gamma: float) -> Spectrum:
    deltas = np.asarray(deltas, dtype=float)
    t_l, r_l, t_r, r_r = amplitudes(r, deltas, gamma)
    d = deltas - r.lamb_shift
    scale = np.maximum(np.abs(d), gamma + r.gamma_x + r.gamma_y)
    dead = scale == 0
    scale = np.where(dead, 1.0, scale)
    den2 = (d / scale) ** 2 + ((gamma + r.gamma_x + r.gamma_y) / scale) ** 2
    safe = np.where(dead, 1.0, den2)
    # 1 - T - R, written so it cannot go negative through rounding
    loss_l = np.where(dead, 0.0, 4.0 * (gamma / scale) * (r.gamma_y / scale) / safe)
    loss_r = np.where(dead, 0.0, 4.0 * (gamma / scale) * (r.gamma_x / scale) / safe)
    return Spectrum(
        delta=deltas,
        t_left=t_l,
        r_left=r_l,
        t_right=t_r,
        r_right=r_r,
        T_left=np.abs(t_l) ** 2,
        R_left=np.abs(r_l) ** 2,
        T_right=np.abs(t_r) ** 2,
        R_right=np.abs(r_r) ** 2,
        loss_left=loss_l,
        loss_right=loss_r,
        contrast=_contrast(d, gamma, r.gamma_x, r.gamma_y),
        rates=r,
    )


def spectrum(config: CouplingConfig, deltas) -> Spectrum:
    """Vectorised :func:`scatter` over an array of detunings."""
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    if not np.all(np.isfinite(deltas)):
        raise ValueError("detunings must be finite")
    return spectrum_from_rates(_rates_grid(config, deltas), deltas, config.gamma)


def scatter(config: CouplingConfig, delta: float) -> SpectralPoint:
    """All scattering observables at a single detuning."""
    return spectrum(config, [delta]).point(0)


def contrast_ratio(config: CouplingConfig, delta: float) -> float:
    """Nonreciprocity contrast ``|T_l - T_r| / (T_l + T_r)`` in closed form."""
    return scatter(config, delta).contrast


# Names accepted as sweep observables, mapped to Spectrum accessors.
OBSERVABLES = {
    "T_left": lambda s: s.T_left,
    "R_left": lambda s: s.R_left,
    "T_right": lambda s: s.T_right,
    "R_right": lambda s: s.R_right,
    "loss_left": lambda s: s.loss_left,
    "loss_right": lambda s: s.loss_right,
    "contrast": lambda s: s.contrast,
    "lamb_shift": lambda s: s.rates.lamb_shift,
    "gamma_x": lambda s: s.rates.gamma_x,
    "gamma_y": lambda s: s.rates.gamma_y,
    "gamma_xy_re": lambda s: s.rates.gamma_xy.real,
    "gamma_xy_im": lambda s: s.rates.gamma_xy.imag,
    "t_left_re": lambda s: s.t_left.real,
    "t_left_im": lambda s: s.t_left.imag,
    "r_left_re": lambda s: s.r_left.real,
    "r_left_im": lambda s: s.r_left.imag,
    "t_right_re": lambda s: s.t_right.real,
    "t_right_im": lambda s: s.t_right.imag,
    "r_right_re": lambda s: s.r_right.real,
    "r_right_im": lambda s: s.r_right.imag,
}
ALIASES = {"T": "T_left", "R": "R_left", "I": "contrast", "loss": "loss_left"}


def observable(s: Spectrum, name: str) -> np.ndarray:
    key = ALIASES.get(name, name)
    if key not in OBSERVABLES:
        raise KeyError(f"unknown observable {name!r}")
    return np.asarray(OBSERVABLES[key](s), dtype=float)
