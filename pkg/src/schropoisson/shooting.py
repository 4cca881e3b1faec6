"""Radial shooting solver for the uncoupled (q = 0) scalar-field problem.

Solves  u'' + (2/r) u' + g(u) = 0,  u'(0) = 0,  u -> 0  by bisection on
the central amplitude: too small an amplitude stalls and turns around
(undershoot), too large a one crosses zero (overshoot).  Past the last
computed radius the profile continues with the linearized decay
c * exp(-sqrt(m) r) / r.

This is a deliberately independent route from the variational solver: an
ODE integrator against an energy-descent method.  It provides the
reference energy for the q = 0 acceptance check and the automatic choice
of the truncation level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson, solve_ivp

from .grid import RadialFunction, RadialGrid


class ShootingError(RuntimeError):
    pass


@dataclass(frozen=True)
class ShootingResult:
    amplitude: float       # u(0)
    match_radius: float    # where the exponential tail takes over
    tail_coeff: float
    mass: float            # sqrt of the linearized decay rate m
    energy: float          # 1/2 int |grad u|^2 - int G(u)  (volume integrals)
    kinetic: float         # int |grad u|^2
    potential: float       # int G(u)
    profile: Callable      # u(r) for arbitrary r >= 0

    def on_grid(self, grid: RadialGrid) -> RadialFunction:
        vals = self.profile(grid.r)
        vals = np.asarray(vals, dtype=float)
        vals[-1] = 0.0
        return RadialFunction(grid, vals)


def _rhs(g):
    def fun(r, y):
        return [y[1], -2.0 * y[1] / r - float(np.asarray(g(y[0])).ravel()[0])]
    return fun


def _series_start(g, a, r0):
    # u(r) = a + u''(0) r^2 / 2 near 0, with 3 u''(0) = -g(a)
    upp0 = -float(np.asarray(g(a)).ravel()[0]) / 3.0
    return [a + 0.5 * upp0 * r0**2, upp0 * r0]


def _classify(g, a, r0, r_end, floor):
    """+1 overshoot (u crosses 0), -1 undershoot (u turns or stalls)."""
    cross = lambda r, y: y[0]
    cross.terminal, cross.direction = True, -1.0
    turn = lambda r, y: y[1]
    turn.terminal, turn.direction = True, 1.0
    sol = solve_ivp(_rhs(g), (r0, r_end), _series_start(g, a, r0),
                    events=(cross, turn), rtol=1e-12, atol=1e-14,
                    method="DOP853")
    if sol.t_events[0].size:
        return 1
    if sol.t_events[1].size:
        return -1
    return -1 if sol.y[0, -1] > floor else 1


def shooting_ground_state(g, mass: float, well: float,
                          r_end: float = 80.0, bisections: int = 80,
                          scan_points: int = 160,
                          amp_max: float = 60.0) -> ShootingResult:
    """Positive decreasing solution of the q = 0 radial field equation.

    ``g`` must be the (modified) nonlinearity, ``mass`` its linearized
    slope magnitude at 0, ``well`` a point of positive potential energy
    from which the amplitude scan starts.
    """
    if well is None:
        raise ShootingError("nonlinearity has no positive potential well")
    r0 = 1e-6
    floor = 1e-8

    amps = np.geomspace(well * 1.02, amp_max, scan_points)
    a_lo, a_hi = None, None
    for a in amps:
        if _classify(g, a, r0, r_end, floor) > 0:
            a_hi = a
            break
        a_lo = a
    if a_hi is None:
        raise ShootingError("no overshoot found: amplitude scan exhausted")
    if a_lo is None:
        raise ShootingError("already overshooting at the lowest amplitude")

    for _ in range(bisections):
        a = 0.5 * (a_lo + a_hi)
        if _classify(g, a, r0, r_end, floor) > 0:
            a_hi = a
        else:
            a_lo = a
        if a_hi - a_lo < 1e-14 * a_hi:
            break
    a_star = 0.5 * (a_lo + a_hi)

    # final integration: stop where the profile has decayed to the floor
    small = lambda r, y: y[0] - floor * a_star
    small.terminal, small.direction = True, -1.0
    turn = lambda r, y: y[1]
    turn.terminal, turn.direction = True, 1.0
    sol = solve_ivp(_rhs(g), (r0, r_end), _series_start(g, a_star, r0),
                    events=(small, turn), rtol=1e-12, atol=1e-14,
                    method="DOP853", dense_output=True)
    r_match = float(sol.t[-1])
    u_match = float(sol.y[0, -1])
    if u_match <= 0:
        raise ShootingError("profile lost positivity before the tail match")
    root_m = np.sqrt(mass)
    coeff = u_match * r_match * np.exp(root_m * r_match)

    def profile(r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.empty_like(r)
        inside = r < r_match
        rin = np.clip(r[inside], r0, None)
        out[inside] = sol.sol(rin)[0]
        near = r[inside] < r0
        if np.any(near):
            out[inside][near] = a_star
        rout = r[~inside]
        out[~inside] = coeff * np.exp(-root_m * rout) / np.maximum(rout, r0)
        return float(out[0]) if scalar else out

    return ShootingResult(
        amplitude=a_star, match_radius=r_match, tail_coeff=coeff,
        mass=mass, profile=profile,
        **_quadrature_diagnostics(sol, g, r0, r_match, coeff, root_m),
    )


def _quadrature_diagnostics(sol, g, r0, r_match, coeff, root_m,
                            r_far: float = 60.0, n_fine: int = 40001):
    """Energy pieces on the oracle's own fine grid (Simpson rule)."""
    r = np.linspace(r0, r_far, n_fine)
    inside = r < r_match
    u = np.empty_like(r)
    up = np.empty_like(r)
    u[inside], up[inside] = sol.sol(r[inside])
    rout = r[~inside]
    tail = coeff * np.exp(-root_m * rout) / rout
    u[~inside] = tail
    up[~inside] = -tail * (root_m + 1.0 / rout)

    # primitive of g along the profile, accumulated independently
    from scipy.integrate import cumulative_trapezoid
    s_grid = np.linspace(0.0, u.max() * 1.0000001, 20001)
    G_grid = np.concatenate([[0.0], cumulative_trapezoid(
        np.asarray(g(s_grid), dtype=float), s_grid)])
    G_u = np.interp(u, s_grid, G_grid)

    four_pi = 4.0 * np.pi
    kinetic = four_pi * simpson(r**2 * up**2, x=r)
    potential = four_pi * simpson(r**2 * G_u, x=r)
    return {
        "kinetic": float(kinetic),
        "potential": float(potential),
        "energy": float(0.5 * kinetic - potential),
    }
