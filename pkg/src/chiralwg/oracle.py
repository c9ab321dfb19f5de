"""Brute-force scattering amplitudes from the stationary wave equations.

Between coupling points the photon field is a superposition of a right mover
with amplitude ``A_j`` and a left mover with amplitude ``B_j`` (region ``j``
lies between points ``j`` and ``j+1``; region 0 is left of the first point).
At each point the amplitudes jump in proportion to the atomic amplitude
``E`` and the atom is driven by the field averaged across the point.  The
resulting (2N+1)-unknown linear system is solved by dense LU with partial
pivoting; no closed-form rate appears anywhere in this module.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg as sla

from .model import CouplingConfig

Direction = Literal["left", "right"]

# pivot size, relative to the atom-row scale, below which the system is singular
_PIVOT_RTOL = 1e-13


@dataclass(frozen=True)
class OracleSolution:
    right_amps: np.ndarray  # A_0 .. A_N
    left_amps: np.ndarray  # B_0 .. B_N
    atom_amp: complex
    t: complex
    r: complex
    direction: str
    degenerate: bool = False
    residual: float = 0.0


def _kz(config: CouplingConfig, delta: float) -> np.ndarray:
    ph = config.phase
    step = ph.phi12 if ph.markovian else ph.phi12 + delta * ph.tau12
    return np.arange(config.n) * step


def assemble(config: CouplingConfig, delta: float, direction: Direction = "left"):
    """Matrix and right-hand side of the boundary-matching system.

    Unknown vector layout: for left incidence ``(A_1..A_N, B_0..B_{N-1}, E)``
    with ``A_0 = 1, B_N = 0``; for right incidence ``(A_1..A_N, B_0..B_{N-1}, E)``
    with ``A_0 = 0, B_N = 1``.  The same layout serves both directions; only
    the known boundary amplitudes move to the right-hand side differently.
    """
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    n = config.n
    x, y = config.x, config.y
    gamma = config.gamma
    ep = np.exp(1j * _kz(config, delta))
    em = np.conj(ep)
    a0, bn = (1.0, 0.0) if direction == "left" else (0.0, 1.0)

    size = 2 * n + 1
    m = np.zeros((size, size), dtype=complex)
    b = np.zeros(size, dtype=complex)
    j = np.arange(n)  # 0-based point index
    ia = j  # column of A_{j+1}
    ib = n + j  # column of B_j
    ie = 2 * n

    # right-mover jumps: A_j - A_{j-1} + i y_j e^{-ikz_j} E = 0
    rows = j
    m[rows, ia] = 1.0
    m[rows[1:], ia[:-1]] = -1.0
    b[0] = a0
    m[rows, ie] = 1j * y * em

    # left-mover jumps: B_{j-1} - B_j + i x_j e^{ikz_j} E = 0
    rows = n + j
    m[rows, ib] = 1.0
    m[rows[:-1], ib[1:]] = -1.0
    b[2 * n - 1] = bn
    m[rows, ie] = 1j * x * ep

    # atom: (delta + i gamma) E = sum_j [x_j e^{-ikz_j} Bbar_j + y_j e^{ikz_j} Abar_j]
    # with Bbar_j, Abar_j the means of the amplitudes on either side of point j
    cx = 0.5 * x * em
    cy = 0.5 * y * ep
    m[ie, ie] = delta + 1j * gamma
    m[ie, ib] -= cx  # B_{j-1}
    m[ie, ib[1:]] -= cx[:-1]  # B_j for j < N
    m[ie, ia] -= cy  # A_j
    m[ie, ia[:-1]] -= cy[1:]  # A_{j-1} for j > 1
    b[ie] = cx[-1] * bn + cy[0] * a0
    return m, b


def solve_oracle(config: CouplingConfig, delta: float, direction: Direction = "left") -> OracleSolution:
    """Solve the boundary-matching system for one incidence direction."""
    delta = float(delta)
    if not np.isfinite(delta):
        raise ValueError("delta must be finite")
    n = config.n
    m, b = assemble(config, delta, direction)
    a0, bn = (1.0, 0.0) if direction == "left" else (0.0, 1.0)

    # the field rows have unit pivots; only the atom row can be (near) singular
    atom_scale = abs(delta) + config.gamma + float(np.sum(config.x**2 + config.y**2))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(m, check_finite=False)
    if np.abs(np.diag(lu)).min() <= _PIVOT_RTOL * atom_scale:
        return _decoupled(n, direction)
    u = sla.lu_solve((lu, piv), b, check_finite=False)
    residual = float(np.max(np.abs(m @ u - b)))

    right = np.concatenate([[a0], u[:n]])
    left = np.concatenate([u[n : 2 * n], [bn]])
    if direction == "left":
        t, r = right[-1], left[0]
    else:
        t, r = left[0], right[-1]
    return OracleSolution(right, left, complex(u[2 * n]), complex(t), complex(r), direction, False, residual)


def _decoupled(n: int, direction: Direction) -> OracleSolution:
    if direction == "left":
        right, left = np.ones(n + 1, dtype=complex), np.zeros(n + 1, dtype=complex)
    else:
        right, left = np.zeros(n + 1, dtype=complex), np.ones(n + 1, dtype=complex)
    return OracleSolution(right, left, 0j, 1 + 0j, 0j, direction, True, 0.0)
