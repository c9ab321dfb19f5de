"""Closed-form special cases in the Markovian regime.

These are independent of :mod:`chiralwg.engine` and serve as a regression
surface for it.  Phase-dependent interference factors are expressed through

    S_j(phi) = sin(j phi) / (1 - cos phi)
    C_j(phi) = sin^2(j phi / 2) / sin^2(phi / 2)

Combinations of ``S_j`` that stay finite as ``phi -> 0`` are evaluated
through half-angle product identities rather than as differences of large
terms, so the formulas keep full precision arbitrarily close to ``phi = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import rates as engine_rates
from .engine import scatter
from .model import TWO_PI, CouplingConfig, normalize_phase

# S_j is undefined this close to a multiple of 2*pi
S_SINGULAR_TOL = 1e-8
# phases closer than this to 2*m*pi/N use the special-phase forms
SPECIAL_PHASE_TOL = 1e-12


class InfeasibleError(ValueError):
    """A chiral condition has no non-negative solution."""


class NoNonreciprocityError(ValueError):
    """``gamma_x == gamma_y``: no atomic loss can make transport nonreciprocal."""


def _dist_to_zero(phi: float) -> float:
    p = normalize_phase(phi)
    return min(p, TWO_PI - p)


def _centered(phi: float) -> float:
    """``phi`` reduced to (-pi, pi]; keeps half-angle sines accurate near 2*pi."""
    p = normalize_phase(phi)
    return p - TWO_PI if p > math.pi else p


def interference_S(j: int, phi: float) -> float:
    if j < 0:
        raise ValueError("j must be >= 0")
    if _dist_to_zero(phi) < S_SINGULAR_TOL:
        raise ValueError(f"S_j diverges at phi = {phi!r} (multiple of 2*pi)")
    phi = _centered(phi)
    return math.sin(j * phi) / (2.0 * math.sin(phi / 2) ** 2)


def interference_C(j: int, phi: float) -> float:
    if j < 0:
        raise ValueError("j must be >= 0")
    phi = _centered(phi)
    s = math.sin(phi / 2)
    if abs(s) < 1e-150:
        return float(j * j)
    return math.sin(j * phi / 2) ** 2 / s**2


def _sin_sum(k: int, phi: float) -> float:
    """``sum_{m=1}^{k} sin(m phi)``, equal to ``(S_1 + S_k - S_{k+1}) / 2``."""
    if k <= 0:
        return 0.0
    phi = _centered(phi)
    s = math.sin(phi / 2)
    if s == 0.0:
        return 0.0
    return math.sin(k * phi / 2) * math.sin((k + 1) * phi / 2) / s


def _dirichlet(k: int, phi: float) -> float:
    """``1 + 2 sum_{m=1}^{k} cos(m phi)``, equal to ``C_{k+1} - C_k``."""
    phi = _centered(phi)
    s = math.sin(phi / 2)
    if s == 0.0:
        return 2.0 * k + 1.0
    return math.sin((k + 0.5) * phi) / s


def _fejer_sin(n: int, phi: float) -> float:
    """``sum_{m=1}^{n-1} (n - m) sin(m phi)``, equal to ``(N S_1 - S_N) / 2``."""
    return sum(_sin_sum(k, phi) for k in range(1, n))


def special_phase_index(n: int, phi: float, tol: float = SPECIAL_PHASE_TOL) -> int | None:
    """``m`` if ``phi`` is ``2 m pi / n`` modulo 2*pi (``m`` in 0..n-1), else None."""
    p = normalize_phase(phi)
    q = p * n / TWO_PI
    m = round(q)
    if abs(q - m) * TWO_PI / n <= tol:
        return m % n
    return None


def uniform_symmetric_probabilities(n: int, x: float, gamma: float, phi12: float, delta: float):
    """``(T, R)`` for equal couplings ``x`` in both directions at every point."""
    if x < 0:
        raise ValueError("x must be >= 0")
    phi = normalize_phase(phi12)
    lamb_x = x * x * _fejer_sin(n, phi)
    gamma_x = 0.5 * x * x * interference_C(n, phi)
    d = delta - 2.0 * lamb_x
    den = d * d + (gamma + 2.0 * gamma_x) ** 2
    if den == 0.0:
        return 1.0, 0.0
    return (d * d + gamma * gamma) / den, 4.0 * gamma_x**2 / den


def bec_closed_forms(n: int, x: float, y: float, phi12: float):
    """``(lamb_shift, gamma_x + gamma_y, gamma_x - gamma_y)`` with even couplings."""
    if n < 2:
        raise ValueError("n must be >= 2")
    phi = normalize_phase(phi12)
    if _dist_to_zero(phi) < SPECIAL_PHASE_TOL:
        return 0.0, 0.5 * n * n * (x * x + y * y), 0.5 * n * n * (x * x - y * y)
    cn = interference_C(n, phi)
    lamb = (x * x + y * y) * _fejer_sin(n, phi)
    return lamb, 0.5 * (x * x + y * y) * cn, 0.5 * (x * x - y * y) * cn


def bec_lamb_shift_special(n: int, x: float, y: float, m: int) -> float:
    """Lamb shift at ``phi12 = 2 m pi / n``: ``(n/2)(x^2 + y^2) cot(m pi / n)``."""
    if not 1 <= m <= n - 1:
        raise ValueError(f"m must lie in 1..{n - 1}")
    return 0.5 * n * (x * x + y * y) / math.tan(m * math.pi / n)


def n2_transmission(x1: float, y1: float, x2: float, y2: float, phi_case: float, delta: float) -> float:
    """Transmission of a two-point atom at ``phi12`` equal to 0 or pi."""
    if min(x1, y1, x2, y2) < 0:
        raise ValueError("couplings must be >= 0")
    if phi_case == 0:
        sx, sy = x1 + x2, y1 + y2
    elif phi_case == math.pi:
        sx, sy = x1 - x2, y1 - y2
    else:
        raise ValueError("phi_case must be 0 or pi")
    # normalise by the larger amplitude so tiny or huge couplings neither underflow nor overflow
    sigma = max(abs(sx), abs(sy))
    if sigma == 0:
        return 1.0
    u, v = sx / sigma, sy / sigma
    q = delta / sigma / sigma
    if abs(q) > 1e100:  # T rounds to 1 well before this
        return 1.0
    e2 = 4 * q * q
    return (e2 + (u * u - v * v) ** 2) / (e2 + (u * u + v * v) ** 2)


@dataclass(frozen=True)
class DisorderedConfig:
    """``n`` points with couplings ``(x, y)`` except point ``i`` with ``(xi, yi)``."""

    n: int
    x: float
    y: float
    i: int
    xi: float
    yi: float
    gamma: float = 0.0
    phi12: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if not 1 <= self.i <= self.n:
            raise ValueError(f"i must lie in 1..{self.n}")
        if min(self.x, self.y, self.xi, self.yi, self.gamma) < 0:
            raise ValueError("couplings and gamma must be >= 0")

    def to_config(self) -> CouplingConfig:
        xs = [self.x] * self.n
        ys = [self.y] * self.n
        xs[self.i - 1] = self.xi
        ys[self.i - 1] = self.yi
        return CouplingConfig.from_arrays(xs, ys, gamma=self.gamma, phi12=self.phi12)


def disordered_rates(cfg: DisorderedConfig, delta=None):
    """``(lamb_shift, gamma_x + gamma_y, gamma_x - gamma_y)`` for a single disordered point.

    Markovian, so ``delta`` is ignored.
    """
    n, i = cfg.n, cfg.i
    x, y, a, b = cfg.x, cfg.y, cfg.x - cfg.xi, cfg.y - cfg.yi
    phi = normalize_phase(cfg.phi12)
    m = special_phase_index(n, phi)
    if m == 0:
        px, py = (n - 1) * x + cfg.xi, (n - 1) * y + cfg.yi
        return 0.0, 0.5 * (px * px + py * py), 0.5 * (px * px - py * py)
    if m is not None:
        return (
            disordered_lamb_shift_special(cfg, m),
            0.5 * (a * a + b * b),
            0.5 * (a * a - b * b),
        )
    # (2 S_1 + S_{i-1} - S_i + S_{N-i} - S_{N-i+1}) / 2
    s_comb = _sin_sum(i - 1, phi) + _sin_sum(n - i, phi)
    # C_{i-1} - C_i + C_{N-i} - C_{N-i+1}
    c_comb = -(_dirichlet(i - 1, phi) + _dirichlet(n - i, phi))
    cn = interference_C(n, phi)
    lamb = (x * x + y * y) * _fejer_sin(n, phi) - (x * a + y * b) * s_comb
    gsum = 0.5 * (x * x + y * y) * cn + 0.5 * (a * a + b * b) + 0.5 * (x * a + y * b) * c_comb
    gdiff = 0.5 * (x * x - y * y) * cn + 0.5 * (a * a - b * b) + 0.5 * (x * a - y * b) * c_comb
    return lamb, gsum, gdiff


def disordered_lamb_shift_special(cfg: DisorderedConfig, m: int) -> float:
    """Lamb shift at ``phi12 = 2 m pi / N`` (``m`` in 1..N-1)."""
    n, i = cfg.n, cfg.i
    if not 1 <= m <= n - 1:
        raise ValueError(f"m must lie in 1..{n - 1}")
    phi = TWO_PI * m / n
    s1 = interference_S(1, phi)
    # S_1 + S_{i-1} - S_i; vanishes for i = 1 and i = N
    comb = 0.0 if i in (1, n) else s1 + interference_S(i - 1, phi) - interference_S(i, phi)
    return 0.5 * n * s1 * (cfg.x**2 + cfg.y**2) - comb * (cfg.x * (cfg.x - cfg.xi) + cfg.y * (cfg.y - cfg.yi))


def chiral_condition_mod0(n: int, x: float, y: float, xi: float) -> float:
    """``yi`` giving total reflection at resonance for ``phi12 = 0``."""
    yi = (n - 1) * (x - y) + xi
    if yi < 0:
        raise InfeasibleError(f"required yi = {yi:g} is negative")
    return yi


@dataclass(frozen=True)
class ChiralBranches:
    """Both solutions ``yi = y +/- |x - xi|``; a negative one is infeasible."""

    yi_plus: float
    yi_minus: float

    @property
    def minus_feasible(self) -> bool:
        return self.yi_minus >= 0

    def __iter__(self):
        return iter((self.yi_plus, self.yi_minus))


def chiral_condition_special(x: float, y: float, xi: float) -> ChiralBranches:
    """Solutions of ``|x - xi| = |y - yi|`` for ``yi``."""
    d = abs(x - xi)
    return ChiralBranches(y + d, y - d)


def optimal_nonreciprocity_gamma(config: CouplingConfig) -> float:
    """Atomic loss ``gamma = |gamma_x - gamma_y|`` that gives contrast 1 at ``delta = lamb_shift``.

    Markovian configurations only: with retardation the rates themselves
    depend on the detuning.
    """
    if not config.phase.markovian and config.phase.tau12 > 0:
        raise ValueError("optimal nonreciprocity is defined for Markovian configurations")
    r = engine_rates(config)
    diff = r.gamma_x - r.gamma_y
    scale = max(r.gamma_x + r.gamma_y, 1e-300)
    if abs(diff) <= 1e-12 * scale:
        raise NoNonreciprocityError("gamma_x equals gamma_y: no nonreciprocity possible")
    return abs(diff)


@dataclass(frozen=True)
class NonreciprocityPoint:
    gamma: float
    delta: float
    T_left: float
    T_right: float
    contrast: float


def optimal_nonreciprocity(config: CouplingConfig) -> NonreciprocityPoint:
    """Set ``gamma`` to its optimal value and evaluate the spectrum at the Lamb shift."""
    g = optimal_nonreciprocity_gamma(config)
    cfg = config.with_gamma(g)
    delta = engine_rates(cfg).lamb_shift
    p = scatter(cfg, delta)
    return NonreciprocityPoint(g, delta, p.T_left, p.T_right, p.contrast)


def optimal_gamma_mod0(n: int, x: float, y: float, xi: float, yi: float) -> float:
    """``|gamma_x - gamma_y|`` at ``phi12 = 0`` for a disordered point."""
    px, py = (n - 1) * x + xi, (n - 1) * y + yi
    return abs(px * px - py * py) / 2


def optimal_gamma_special(x: float, y: float, xi: float, yi: float) -> float:
    """``|gamma_x - gamma_y|`` at ``phi12 = 2 m pi / N``; independent of N."""
    return abs((xi - x) ** 2 - (yi - y) ** 2) / 2


def optimal_yi_special(x: float, y: float, xi: float, gamma: float) -> list[float]:
    """All ``yi >= 0`` on the optimal-nonreciprocity hyperbola at a special phase.

    Solves ``gamma = |(xi - x)^2 - (yi - y)^2| / 2``.
    """
    out = []
    for sign in (1.0, -1.0):
        q = (xi - x) ** 2 + sign * 2 * gamma
        if q < 0:
            continue
        for root in (math.sqrt(q), -math.sqrt(q)):
            yi = y + root
            if yi >= 0 and not any(math.isclose(yi, v, abs_tol=1e-15) for v in out):
                out.append(yi)
    return sorted(out)


def router_phases(n: int) -> np.ndarray:
    """Phases ``2 m pi / n`` for ``m = 1..n-1``."""
    return TWO_PI * np.arange(1, n) / n
