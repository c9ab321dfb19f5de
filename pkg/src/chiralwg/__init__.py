"""Single-photon scattering off a giant atom chirally coupled to a waveguide."""

from .engine import OBSERVABLES, Rates, SpectralPoint, Spectrum, contrast_ratio, rates, scatter, spectrum
from .model import CouplingConfig, CouplingPoint, PhaseModel, RegimeLabel, classify_regime, phase_between
from .oracle import OracleSolution, solve_oracle
from .regimes import (
    DisorderedConfig,
    InfeasibleError,
    NoNonreciprocityError,
    NonreciprocityPoint,
    chiral_condition_mod0,
    chiral_condition_special,
    disordered_rates,
    optimal_nonreciprocity,
    optimal_nonreciprocity_gamma,
)
from .sweep import Axis, SweepGrid, run_sweep
from .windows import ReflectionWindow, find_reflection_windows, find_router_windows

__version__ = "0.1.0"
