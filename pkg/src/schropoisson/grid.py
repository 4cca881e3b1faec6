"""Radial grids and grid functions on a truncated domain [0, r_max].

A real radial profile u(r) stands in for a radially symmetric function on
3-space.  All volume integrals carry the 4*pi*r^2 measure, so that

    integral over R^3 of f  ->  4*pi * sum_i w_i r_i^2 f(r_i),

with w the one-dimensional trapezoid weights of the node set.  The kinetic
quadratic form uses midpoint fluxes on each panel, which makes it the exact
derivative structure for the energy functionals built on top of it: the
discrete H^1 inner product is  u^T (A + W) v  with A the stiffness form and
W the (lumped, diagonal) volume weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import cho_solve_banded, cholesky_banded

FOUR_PI = 4.0 * np.pi


class GridError(ValueError):
    """Raised for ill-formed node sets or unsupported operations."""


class SupportOverflowError(GridError):
    """Raised when a dilation would push mass past the domain boundary."""


class RadialGrid:
    """Strictly increasing nodes r_0 = 0 < ... < r_{n-1} = r_max.

    Carries trapezoid quadrature weights, the diagonal volume weights
    4*pi*w*r^2, and the tridiagonal stiffness form for integral of
    |grad u|^2.  Instances are immutable after construction and safe to
    share between threads.
    """

    def __init__(self, nodes):
        r = np.asarray(nodes, dtype=float)
        if r.ndim != 1 or r.size < 8:
            raise GridError("need a 1-d array of at least 8 nodes")
        if r[0] != 0.0:
            raise GridError("first node must be r = 0")
        h = np.diff(r)
        if np.any(h <= 0):
            raise GridError("nodes must be strictly increasing")

        self.r = r
        self.n = r.size
        self.r_max = float(r[-1])
        self.h = h

        # composite trapezoid weights; sum(w) == r_max by telescoping
        w = np.zeros_like(r)
        w[:-1] += 0.5 * h
        w[1:] += 0.5 * h
        self.weights = w
        self.volume_weights = FOUR_PI * w * r**2

        # stiffness flux coefficients per panel: the product r_j r_{j+1}
        # integrates 1/r-tails exactly and, unlike the midpoint square,
        # gives an Euler-Lagrange stencil whose truncation matches the
        # pointwise radial Laplacian all the way to the origin (no h^2/r^2
        # term); the first panel keeps the midpoint square to stay coupled
        rm = 0.5 * (r[:-1] + r[1:])
        self.midpoints = rm
        coef = r[:-1] * r[1:]
        coef[0] = rm[0] ** 2
        self._flux = FOUR_PI * coef / h

        for a in (self.r, self.h, self.weights, self.volume_weights,
                  self.midpoints, self._flux):
            a.flags.writeable = False

        self._h1_cho = None

    # -- quadrature ---------------------------------------------------------

    def volume_integral(self, values) -> float:
        """4*pi * integral of r^2 f(r) dr over [0, r_max]."""
        return float(self.volume_weights @ np.asarray(values))

    def norm_Ls(self, values, s) -> float:
        """Lebesgue norm (volume_integral(|u|^s))^(1/s); requires s >= 1."""
        if not np.isfinite(s) or s < 1.0:
            raise GridError(f"Lebesgue exponent must be finite and >= 1, got {s}")
        return float(self.volume_integral(np.abs(values) ** s) ** (1.0 / s))

    # -- H^1 structure ------------------------------------------------------

    def stiffness_apply(self, values) -> np.ndarray:
        """A @ u for the stiffness form u^T A u = integral of |grad u|^2."""
        u = np.asarray(values)
        flux = self._flux * (u[1:] - u[:-1])
        out = np.zeros_like(u)
        out[:-1] -= flux
        out[1:] += flux
        return out

    def kinetic_integral(self, values) -> float:
        """integral of |grad u|^2 as the midpoint-flux quadratic form."""
        u = np.asarray(values)
        d = u[1:] - u[:-1]
        return float(self._flux @ d**2)

    def h1_inner(self, u, v) -> float:
        u = np.asarray(u)
        v = np.asarray(v)
        du = u[1:] - u[:-1]
        dv = v[1:] - v[:-1]
        return float(self._flux @ (du * dv) + (self.volume_weights * u) @ v)

    def norm_H1(self, values) -> float:
        """sqrt(integral |grad u|^2 + integral u^2) in the discrete forms."""
        u = np.asarray(values)
        return float(np.sqrt(self.kinetic_integral(u)
                             + self.volume_integral(u**2)))

    def _h1_factor(self):
        # upper banded Cholesky of (A + W) restricted to nodes 0..n-2
        if self._h1_cho is None:
            m = self.n - 1
            ab = np.zeros((2, m))
            # node j couples to panels j-1 and j; panel m-1 reaches the
            # pinned boundary node and contributes to the last diagonal
            diag = self.volume_weights[:-1] + self._flux
            diag[1:] += self._flux[:m - 1]
            # the row above: A_{j,j+1} = -flux_j for j = 0..m-2
            ab[0, 1:] = -self._flux[:m - 1]
            ab[1, :] = diag
            self._h1_cho = cholesky_banded(ab, lower=False)
        return self._h1_cho

    def h1_solve(self, rhs) -> np.ndarray:
        """Solve (A + W) x = rhs with x(r_max) = 0; rhs given on all nodes."""
        try:
            cho = self._h1_factor()
            x = cho_solve_banded((cho, False), np.asarray(rhs)[:-1])
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise GridError(f"H^1 solve failed, grid ill-conditioned: {exc}")
        return np.concatenate([x, [0.0]])

    def h1_riesz(self, density) -> np.ndarray:
        """H^1 representative w of an L^2 density v.

        Solves the discrete problem (-Lap + 1) w = v with w(r_max) = 0, so
        that h1_inner(w, phi) == volume_integral(v * phi) for every test phi
        vanishing at r_max.
        """
        return self.h1_solve(self.volume_weights * np.asarray(density))

    def laplacian(self, values) -> np.ndarray:
        """Strong-form radial Laplacian u'' + (2/r) u' at the nodes.

        Second-order three-point stencils in the interior; the origin uses
        the even-symmetry limit 3 u''(0).  The last node is zero-filled
        (the operator is meant for interior residual checks).
        """
        u = np.asarray(values)
        r, h = self.r, self.h
        hl, hr = h[:-1], h[1:]
        ul, uc, ur = u[:-2], u[1:-1], u[2:]
        d1 = (hl**2 * ur - hr**2 * ul + (hr**2 - hl**2) * uc) / (hl * hr * (hl + hr))
        d2 = 2.0 * (hl * ur + hr * ul - (hl + hr) * uc) / (hl * hr * (hl + hr))
        out = np.zeros_like(u)
        out[1:-1] = d2 + 2.0 * d1 / r[1:-1]
        out[0] = 6.0 * (u[1] - u[0]) / h[0] ** 2
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def uniform(cls, r_max: float = 30.0, n: int = 3000) -> "RadialGrid":
        return cls(np.linspace(0.0, float(r_max), int(n)))

    def __repr__(self):
        return f"RadialGrid(n={self.n}, r_max={self.r_max:g})"


@dataclass(frozen=True)
class RadialFunction:
    """Samples of a radial profile on a grid.

    ``dirichlet=True`` (the default, for H^1 candidates) requires the value
    at r_max to vanish; fields such as the Poisson potential carry a
    Newtonian far tail instead and are built with ``dirichlet=False``.
    """

    grid: RadialGrid
    values: np.ndarray
    dirichlet: bool = True

    def __post_init__(self):
        v = np.array(self.values, dtype=float, copy=True)
        if v.shape != (self.grid.n,):
            raise GridError("values must match the grid node count")
        if not np.all(np.isfinite(v)):
            raise GridError("values must be finite at every node")
        if self.dirichlet:
            scale = max(1.0, float(np.max(np.abs(v))))
            if abs(v[-1]) > 1e-9 * scale:
                raise GridError("value at r_max must vanish (Dirichlet truncation)")
            v[-1] = 0.0
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: RadialGrid, fn, dirichlet: bool = True):
        return cls(grid, np.asarray(fn(grid.r), dtype=float), dirichlet=dirichlet)

    @classmethod
    def zero(cls, grid: RadialGrid):
        return cls(grid, np.zeros(grid.n))

    def interpolant(self):
        """Cubic spline through the samples.

        Radial profiles are even in r, so the left end is clamped to zero
        slope; the right end is left generic.
        """
        return CubicSpline(self.grid.r, self.values,
                           bc_type=((1, 0.0), "not-a-knot"))

    def dilate(self, theta: float) -> "RadialFunction":
        """Profile r -> u(r / theta) on the same grid.

        For theta > 1 the support expands; raises if that pushes visible
        mass past r_max.
        """
        if theta <= 0:
            raise GridError("dilation factor must be positive")
        r = self.grid.r
        if theta > 1.0:
            scale = max(1.0, float(np.max(np.abs(self.values))))
            tail = np.abs(self.values[r > self.grid.r_max / theta])
            if tail.size and tail.max() > 1e-8 * scale:
                raise SupportOverflowError(
                    f"dilation by {theta:g} overflows the domain; increase r_max")
        spl = self.interpolant()
        x = r / theta
        out = np.where(x <= self.grid.r_max, spl(np.minimum(x, self.grid.r_max)), 0.0)
        out[-1] = 0.0
        return RadialFunction(self.grid, out)

    def __repr__(self):
        return (f"RadialFunction(n={self.grid.n}, "
                f"max={float(np.max(np.abs(self.values))):.3g})")
