"""Reduced, truncated, and perturbation-weighted energy functionals.

The physical energy of the reduced problem is

    E_q(u) = 1/2 int |grad u|^2 + (q/4) int phi_u u^2 - int G(u).

To restore coercivity for the search, the Coulomb term is gated by a
smooth cutoff of the norm ratio ||u||_a^a / L^a (a = 12/5, L the
truncation level), and the driving part of the potential is scaled by a
weight lam <= 1:

    E(u, lam) = 1/2 int |grad u|^2 + (q/4) k(u) int phi_u u^2
                + int G_minus(u) - lam int G_plus(u),

with k(u) = cutoff(||u||_a^a / L^a).  Candidates whose cutoff is inactive
are critical points of the physical functional.

Everything here is assembled from exactly differentiable discrete forms:
the H^1 gradient returned by :meth:`TruncatedFunctional.gradient` is the
exact derivative of :meth:`TruncatedFunctional.energy` up to round-off,
which the test suite verifies against central differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import RadialFunction, RadialGrid
from .nonlinearity import SplitNonlinearity
from .poisson import cumulative_integral

DEFAULT_EXPONENT = 12.0 / 5.0

#: sharp constant of the 3-d Sobolev embedding,  int |grad u|^2 >= S ||u||_6^2
SOBOLEV_S3 = 3.0 * (np.pi / 2.0) ** (4.0 / 3.0)


def quintic_cutoff(s):
    """C^2 switch: 1 on [0, 1], quintic smoothstep down to 0 on [1, 2].

    The plateau values are exact (no round-off leakage); the slope peaks
    at 15/8, inside the contract bound of 2.
    """
    s = np.asarray(s, dtype=float)
    t = np.clip(s - 1.0, 0.0, 1.0)
    inner = np.clip(1.0 - t**3 * (10.0 - 15.0 * t + 6.0 * t**2), 0.0, 1.0)
    out = np.where(s <= 1.0, 1.0, np.where(s >= 2.0, 0.0, inner))
    return out if out.ndim else float(out)


def quintic_cutoff_prime(s):
    s = np.asarray(s, dtype=float)
    inside = (s > 1.0) & (s < 2.0)
    t = np.clip(s - 1.0, 0.0, 1.0)
    out = np.where(inside, -30.0 * t**2 * (1.0 - t) ** 2, 0.0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class TruncationConfig:
    """Cutoff level and exponent for the Coulomb gate."""

    level: float
    exponent: float = DEFAULT_EXPONENT
    chi: Callable = quintic_cutoff
    chi_prime: Callable = quintic_cutoff_prime

    def __post_init__(self):
        if self.level <= 0:
            raise ValueError("truncation level must be positive")


@dataclass(frozen=True)
class EnergyBreakdown:
    """One energy evaluation, split by term.

    total = kinetic + coulomb + g_minus_part - lam * g_plus_part
    """

    kinetic: float        # 1/2 int |grad u|^2
    coulomb: float        # (q/4) k(u) int phi_u u^2
    g_minus_part: float   # int G_minus(u)
    g_plus_part: float    # int G_plus(u)  (always >= 0)
    lam: float
    total: float
    cutoff: float         # k(u) in [0, 1]
    norm_ratio: float     # ||u||_a^a / level^a

    def as_record(self) -> dict:
        return {
            "kinetic": self.kinetic,
            "coulomb": self.coulomb,
            "g_minus_part": self.g_minus_part,
            "g_plus_part": self.g_plus_part,
            "lambda": self.lam,
            "total": self.total,
            "cutoff": self.cutoff,
            "norm_ratio": self.norm_ratio,
        }


class TruncatedFunctional:
    """Energy, gradient, and identity residuals on a fixed grid.

    Pure functions of immutable inputs; instances are safe to share.  The
    Coulomb term uses the plain (uncorrected) radial Newton kernel, whose
    discrete quadratic form is exactly symmetric; that is what makes the
    assembled gradient the exact derivative of the assembled energy.
    """

    def __init__(self, grid: RadialGrid, split: SplitNonlinearity,
                 q: float, trunc: TruncationConfig):
        if q < 0:
            raise ValueError("coupling q must be nonnegative")
        self.grid = grid
        self.split = split
        self.q = float(q)
        self.trunc = trunc

    # -- pieces --------------------------------------------------------------

    def alpha_power(self, values) -> float:
        """int |u|^a with a the truncation exponent."""
        return self.grid.volume_integral(np.abs(values) ** self.trunc.exponent)

    def cutoff_state(self, values):
        """(norm ratio, k(u), chi'(ratio), int |u|^a)."""
        s_alpha = self.alpha_power(values)
        ratio = s_alpha / self.trunc.level ** self.trunc.exponent
        return ratio, float(self.trunc.chi(ratio)), float(self.trunc.chi_prime(ratio)), s_alpha

    def cutoff_factor(self, u: RadialFunction) -> float:
        """Coulomb gate k(u) = chi(||u||_a^a / level^a), in [0, 1]."""
        return self.cutoff_state(u.values)[1]

    def coulomb_field(self, values):
        """(phi_u on the nodes, int phi_u u^2) via the symmetric plain kernel.

        Physical normalization: phi_u solves -Lap(phi) = q u^2, so both
        returned quantities carry one factor of q.
        """
        r = self.grid.r
        p = np.asarray(values) ** 2
        inner = cumulative_integral(r**2 * p, r, corrected=False)
        outer = cumulative_integral(r * p, r, corrected=False)
        tail = outer[-1] - outer
        phi = np.empty_like(p)
        phi[1:] = self.q * (inner[1:] / r[1:] + tail[1:])
        phi[0] = self.q * tail[0]
        return phi, self.grid.volume_integral(p * phi)

    # -- energy / gradient ----------------------------------------------------

    def energy(self, u: RadialFunction, lam: float,
               truncated: bool = True) -> EnergyBreakdown:
        """Evaluate the perturbed functional at weight lam.

        ``truncated=False`` forces the Coulomb gate open (cutoff = 1),
        giving the physical functional at lam = 1.
        """
        v = u.values
        kinetic = 0.5 * self.grid.kinetic_integral(v)
        ratio, k, _, _ = self.cutoff_state(v)
        if not truncated:
            k = 1.0
        if self.q > 0.0 and k > 0.0:
            _, interaction = self.coulomb_field(v)
            coulomb = 0.25 * self.q * k * interaction
        else:
            coulomb = 0.0
        gm = self.grid.volume_integral(np.asarray(self.split.G_minus(v)))
        gp = self.grid.volume_integral(np.asarray(self.split.G_plus(v)))
        total = kinetic + coulomb + gm - lam * gp
        return EnergyBreakdown(kinetic=kinetic, coulomb=coulomb,
                               g_minus_part=gm, g_plus_part=gp, lam=lam,
                               total=total, cutoff=k, norm_ratio=ratio)

    def gradient_parts(self, values, lam: float, truncated: bool = True):
        """(vector of exact partial derivatives, local density part).

        The partials are  A u + W * density  with A the stiffness form and
        W the volume weights; the density is the strong-form local part

            q k(u) phi_u u + (q a / 4 L^a) chi'(.) (int phi u^2) |u|^{a-2} u
            + g_minus(u) - lam g_plus(u).
        """
        v = np.asarray(values)
        a = self.trunc.exponent
        density = np.asarray(self.split.g_minus(v)) - lam * np.asarray(self.split.g_plus(v))
        if self.q > 0.0:
            ratio, k, kp, _ = self.cutoff_state(v)
            if not truncated:
                k, kp = 1.0, 0.0
            if k > 0.0 or kp != 0.0:
                phi, interaction = self.coulomb_field(v)
                density = density + self.q * k * phi * v
                if kp != 0.0:
                    coeff = (self.q * a / (4.0 * self.trunc.level**a)
                             * kp * interaction)
                    density = density + coeff * np.abs(v) ** (a - 2.0) * v
        partials = self.grid.stiffness_apply(v) + self.grid.volume_weights * density
        return partials, density

    def gradient(self, u: RadialFunction, lam: float,
                 truncated: bool = True) -> RadialFunction:
        """H^1 representative of the derivative (Dirichlet at r_max)."""
        partials, _ = self.gradient_parts(u.values, lam, truncated)
        return RadialFunction(self.grid, self.grid.h1_solve(partials))

    def grad_norm(self, u: RadialFunction, lam: float,
                  truncated: bool = True) -> float:
        """H^1 norm of the gradient representative."""
        partials, _ = self.gradient_parts(u.values, lam, truncated)
        w = self.grid.h1_solve(partials)
        return float(np.sqrt(max(w @ partials, 0.0)))

    # -- identity residuals ----------------------------------------------------

    def pohozaev_residual(self, u: RadialFunction, lam: float,
                          truncated: bool = True) -> float:
        """Scale-invariance defect, zero (to solver tolerance) at critical points.

        Evaluates
            1/2 int |grad u|^2 + (5q/4) k(u) int phi u^2
              + (3q/L^a) chi'(.) ||u||_a^a int phi u^2
              - 3 lam int G_plus(u) + 3 int G_minus(u),
        normalized by max(1, 1/2 int |grad u|^2).
        """
        v = u.values
        kin = 0.5 * self.grid.kinetic_integral(v)
        ratio, k, kp, s_alpha = self.cutoff_state(v)
        if not truncated:
            k, kp = 1.0, 0.0
        coulomb_terms = 0.0
        if self.q > 0.0 and (k > 0.0 or kp != 0.0):
            _, interaction = self.coulomb_field(v)
            coulomb_terms = (1.25 * self.q * k * interaction
                             + 3.0 * self.q / self.trunc.level**self.trunc.exponent
                             * kp * s_alpha * interaction)
        gm = self.grid.volume_integral(np.asarray(self.split.G_minus(v)))
        gp = self.grid.volume_integral(np.asarray(self.split.G_plus(v)))
        lhs = kin + coulomb_terms
        rhs = 3.0 * lam * gp - 3.0 * gm
        return float((lhs - rhs) / max(1.0, kin))

    def pde_residuals(self, u: RadialFunction, field, lam: float = 1.0) -> tuple[float, float]:
        """Relative interior L^2 residuals of the coupled system.

        First equation uses the strong-form Laplacian oracle against the
        assembled local density (cutoff open, weight lam); second equation
        is the Poisson residual of the supplied field.  Origin cells and
        the boundary node carry no weight.
        """
        from .poisson import interior_weights, poisson_residual

        v = u.values
        g_of_u = (lam * np.asarray(self.split.g_plus(v))
                  - np.asarray(self.split.g_minus(v)))
        phi = field.phi.values if field is not None else 0.0
        lhs = -self.grid.laplacian(v) + self.q * phi * v
        res = lhs - g_of_u
        w = interior_weights(self.grid)
        den = max(np.sqrt(w @ g_of_u**2), np.sqrt(w @ lhs**2), 1e-300)
        res1 = float(np.sqrt(w @ res**2) / den)
        res2 = poisson_residual(field, u) if field is not None and self.q > 0 else 0.0
        return res1, res2


def level_floor(certificate_constant: float) -> float:
    """Positive lower bound for every mountain-pass level.

    From  E(u, lam) >= y/2 - (C/6)(y/S)^3  with y = int |grad u|^2 and S
    the sharp Sobolev constant: any admissible path crosses the maximum of
    that lower envelope, attained at y* = sqrt(S^3 / C) with value y*/3.
    """
    if certificate_constant <= 0.0:
        return np.inf
    return float(np.sqrt(SOBOLEV_S3**3 / certificate_constant) / 3.0)
