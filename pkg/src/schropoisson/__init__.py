"""Variational solver for radial solitary waves of the Schrodinger-Poisson
system with general Berestycki-Lions nonlinearities.

The library computes candidate solutions (u, phi_u) of

    -Lap(u) + q phi u = g(u),   -Lap(phi) = q u^2   on R^3

by a numerical mountain-pass search on a truncated, perturbed energy
functional, followed by a continuation of the perturbation weight back to
the physical functional, and certifies every candidate through independent
residuals (gradient norm, Pohozaev identity, strong-form PDE residuals).
"""

from .grid import RadialFunction, RadialGrid
from .nonlinearity import (
    Nonlinearity,
    SplitNonlinearity,
    epsilon_bound_certificate,
    modify,
    split,
)
from .poisson import PoissonField, check_scaling, interaction_bound_check, solve_poisson
from .functional import EnergyBreakdown, TruncatedFunctional, TruncationConfig
from .mountainpass import (
    ContinuationState,
    ReferenceProfile,
    SolveResult,
    build_path,
    build_reference_profile,
    certify,
    continuation_run,
    deform_and_refine,
    minimax_level,
)
from .shooting import shooting_ground_state

__all__ = [
    "RadialGrid",
    "RadialFunction",
    "Nonlinearity",
    "SplitNonlinearity",
    "modify",
    "split",
    "epsilon_bound_certificate",
    "PoissonField",
    "solve_poisson",
    "check_scaling",
    "interaction_bound_check",
    "TruncationConfig",
    "TruncatedFunctional",
    "EnergyBreakdown",
    "ReferenceProfile",
    "ContinuationState",
    "SolveResult",
    "build_reference_profile",
    "build_path",
    "minimax_level",
    "deform_and_refine",
    "continuation_run",
    "certify",
    "shooting_ground_state",
]

__version__ = "0.1.0"
