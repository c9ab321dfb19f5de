"""Physical configuration of a chirally coupled giant atom.

Everything is dimensionless: couplings are measured in units of a reference
coupling ``x_ref`` and frequencies, rates and detunings in units of
``x_ref**2`` (group velocity set to one).  Coupling points are equally spaced
with the first one at ``z = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi


def normalize_phase(phi: float) -> float:
    """Reduce ``phi`` to the interval ``[0, 2*pi)``."""
    if not math.isfinite(phi):
        raise ValueError(f"phase must be finite, got {phi!r}")
    out = phi % TWO_PI
    # a tiny negative input rounds up to exactly 2*pi
    if out >= TWO_PI:
        out = 0.0
    return out


@dataclass(frozen=True)
class CouplingPoint:
    """Left-going (``x``) and right-going (``y``) coupling at one point."""

    x: float
    y: float

    def __post_init__(self):
        for name in ("x", "y"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"coupling {name} must be finite and >= 0, got {v!r}")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))


@dataclass(frozen=True)
class PhaseModel:
    """Propagation phase between neighbouring coupling points.

    ``phi12`` is the phase accumulated between adjacent points at the atomic
    transition frequency, ``tau12`` the photon travel time between them.  In
    the Markovian mode the detuning-dependent part ``delta * tau12`` is
    dropped.
    """

    phi12: float = 0.0
    tau12: float = 0.0
    markovian: bool = True

    def __post_init__(self):
        object.__setattr__(self, "phi12", normalize_phase(float(self.phi12)))
        if not math.isfinite(self.tau12) or self.tau12 < 0:
            raise ValueError(f"tau12 must be finite and >= 0, got {self.tau12!r}")
        object.__setattr__(self, "tau12", float(self.tau12))
        object.__setattr__(self, "markovian", bool(self.markovian))

    def step(self, delta):
        """Phase between adjacent points at detuning ``delta`` (scalar or array)."""
        if self.markovian or self.tau12 == 0.0:
            return self.phi12 + 0.0 * np.asarray(delta, dtype=float)
        return self.phi12 + np.asarray(delta, dtype=float) * self.tau12


class RegimeLabel(enum.Enum):
    UNIFORM_SYMMETRIC = "UniformSymmetric"
    BEC = "BEC"
    UUEC = "UUEC"
    BUEC = "BUEC"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CouplingConfig:
    """Giant atom coupled at ``N`` equally spaced points with atomic loss ``gamma``."""

    points: tuple[CouplingPoint, ...]
    gamma: float = 0.0
    phase: PhaseModel = field(default_factory=PhaseModel)

    def __post_init__(self):
        pts = tuple(self.points)
        if len(pts) < 1:
            raise ValueError("a configuration needs at least one coupling point")
        if not all(isinstance(p, CouplingPoint) for p in pts):
            raise TypeError("points must be CouplingPoint instances")
        object.__setattr__(self, "points", pts)
        if not math.isfinite(self.gamma) or self.gamma < 0:
            raise ValueError(f"gamma must be finite and >= 0, got {self.gamma!r}")
        object.__setattr__(self, "gamma", float(self.gamma))

    @classmethod
    def from_arrays(
        cls,
        x: Sequence[float],
        y: Sequence[float],
        gamma: float = 0.0,
        phi12: float = 0.0,
        tau12: float = 0.0,
        markovian: bool = True,
    ) -> "CouplingConfig":
        if len(x) != len(y):
            raise ValueError(f"x and y differ in length ({len(x)} vs {len(y)})")
        pts = tuple(CouplingPoint(float(a), float(b)) for a, b in zip(x, y))
        return cls(pts, gamma, PhaseModel(phi12, tau12, markovian))

    @classmethod
    def uniform(cls, n: int, x: float, y: float, **kw) -> "CouplingConfig":
        return cls.from_arrays([x] * n, [y] * n, **kw)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def x(self) -> np.ndarray:
        return np.array([p.x for p in self.points])

    @property
    def y(self) -> np.ndarray:
        return np.array([p.y for p in self.points])

    def with_gamma(self, gamma: float) -> "CouplingConfig":
        return replace(self, gamma=gamma)

    def with_phase(self, **kw) -> "CouplingConfig":
        return replace(self, phase=replace(self.phase, **kw))

    def with_point(self, i: int, x: float, y: float) -> "CouplingConfig":
        """Copy with the (1-based) point ``i`` replaced."""
        _check_index(self, i)
        pts = list(self.points)
        pts[i - 1] = CouplingPoint(x, y)
        return replace(self, points=tuple(pts))

    def swapped(self) -> "CouplingConfig":
        """Exchange left- and right-going couplings at every point."""
        return replace(self, points=tuple(CouplingPoint(p.y, p.x) for p in self.points))

    def mirrored(self) -> "CouplingConfig":
        """Spatial mirror image: direction swap plus reversed point order."""
        return replace(self, points=tuple(CouplingPoint(p.y, p.x) for p in reversed(self.points)))


def _check_index(config: CouplingConfig, i: int) -> None:
    if not 1 <= i <= config.n:
        raise IndexError(f"point index {i} outside 1..{config.n}")


def phase_between(config: CouplingConfig, i: int, j: int, delta: float = 0.0) -> float:
    """Accumulated phase ``|i - j| * (delta * tau12 + phi12)`` between points i and j.

    Not reduced modulo 2*pi.
    """
    _check_index(config, i)
    _check_index(config, j)
    return abs(i - j) * float(config.phase.step(delta))


def _all_equal(values: Iterable[float], tol: float) -> bool:
    vals = list(values)
    return max(vals) - min(vals) <= tol


def classify_regime(config: CouplingConfig, eps: float = 1e-9) -> RegimeLabel:
    """Chirality regime of ``config``; ``eps`` is relative to the largest coupling."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    x, y = config.x, config.y
    scale = max(float(x.max()), float(y.max())) or 1.0
    tol = eps * scale
    x_even = _all_equal(x, tol)
    y_even = _all_equal(y, tol)
    if x_even and y_even:
        if abs(x[0] - y[0]) <= tol:
            return RegimeLabel.UNIFORM_SYMMETRIC
        return RegimeLabel.BEC
    if x_even or y_even:
        return RegimeLabel.UUEC
    return RegimeLabel.BUEC
