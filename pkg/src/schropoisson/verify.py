"""Cross-module invariant suite: the identities the solver is built on.

Each check recomputes one structural identity from scratch (closed forms,
dilation laws, finite differences, an independent shooting solve) and
compares against its stated tolerance.  Quadrature-limited tolerances
scale with the square of the grid spacing relative to the reference grid,
so a half-resolution run is expected to pass at four times the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .functional import (
    TruncatedFunctional,
    TruncationConfig,
    quintic_cutoff,
    quintic_cutoff_prime,
)
from .grid import RadialFunction, RadialGrid
from .nonlinearity import (
    InadmissibleNonlinearity,
    Nonlinearity,
    epsilon_bound_certificate,
    split,
)
from .poisson import check_scaling, interaction_bound_check, poisson_residual, solve_poisson
from .shooting import shooting_ground_state

REFERENCE_SPACING = 30.0 / (4500 - 1)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name:26s} {self.value: .3e} <= {self.tolerance:.3e}{tail}"


def _tol_scale(grid: RadialGrid) -> float:
    h = float(np.max(grid.h))
    return max(1.0, (h / REFERENCE_SPACING) ** 2)


def _random_profile(grid, rng, amp=1.0):
    c = rng.uniform(0.0, 3.0, 3)
    w = rng.uniform(0.6, 2.5, 3)
    a = rng.uniform(-1.0, 1.0, 3)
    vals = sum(ai * np.exp(-(((grid.r - ci) / wi) ** 2)) for ai, ci, wi in zip(a, c, w))
    vals = amp * vals / max(np.max(np.abs(vals)), 1e-300)
    vals[-1] = 0.0
    return RadialFunction(grid, vals)


def check_poisson_identity(grid, rng, scale=1.0, profiles=5):
    worst = 0.0
    for _ in range(profiles):
        u = _random_profile(grid, rng, amp=rng.uniform(0.3, 2.0))
        for q in (0.1, 1.0):
            worst = max(worst, solve_poisson(u, q).identity_deviation)
    return CheckResult("poisson_identity", worst <= 1e-6 * scale, worst, 1e-6 * scale)


def check_poisson_scaling(grid, scale=1.0):
    u = RadialFunction.from_callable(grid, lambda r: np.exp(-(r**2)))
    worst = max(check_scaling(u, 2.0, 1.0), check_scaling(u, 0.5, 1.0))
    base = solve_poisson(u, 1.0).interaction
    for theta in (0.5, 2.0):
        scaled = solve_poisson(u.dilate(theta), 1.0).interaction
        worst = max(worst, abs(scaled - theta**5 * base) / (theta**5 * base))
    return CheckResult("poisson_scaling", worst <= 1e-5 * scale, worst, 1e-5 * scale)


def unit_ball_grid(n: int = 3000) -> RadialGrid:
    """Cluster a node pair across the jump of the unit-ball density."""
    n_in = max(2 * n // 3, 16)
    n_out = max(n - n_in, 16)
    nodes = np.concatenate([
        np.linspace(0.0, 1.0, n_in),
        [1.0 + 1e-9],
        np.linspace(1.0 + 2e-3, 3.0, n_out),
    ])
    return RadialGrid(nodes)


def check_poisson_closed_form(n: int = 3000, scale: float = 1.0):
    grid = unit_ball_grid(n)
    u = RadialFunction(grid, np.where(grid.r <= 1.0, 1.0, 0.0))
    q = 1.0
    field = solve_poisson(u, q, corrected=False)
    r = grid.r
    exact = np.where(r <= 1.0, q * (0.5 - r**2 / 6.0),
                     q / (3.0 * np.maximum(r, 1e-300)))
    worst = float(np.max(np.abs(field.phi.values - exact)))
    worst = max(worst, abs(field.phi.values[0] - 0.5 * q))
    return CheckResult("poisson_closed_form", worst <= 1e-6 * scale, worst, 1e-6 * scale)


def check_chi_contract(chi=quintic_cutoff, chi_prime=quintic_cutoff_prime,
                       points: int = 10_000):
    """Cutoff contract: plateaus, range, and slope bound on a dense scan."""
    s = np.linspace(0.0, 3.0, points)
    c = np.asarray(chi(s), dtype=float)
    dev = 0.0
    dev = max(dev, float(np.max(np.abs(c[s <= 1.0] - 1.0))))
    dev = max(dev, float(np.max(np.abs(c[s >= 2.0]))))
    dev = max(dev, float(np.max(np.maximum(c - 1.0, -c))))
    sup_slope = float(np.max(np.abs(np.asarray(chi_prime(s), dtype=float))))
    # finite-difference audit so a corrupted derivative cannot hide
    h = 1e-6
    fd = (np.asarray(chi(s[1:-1] + h)) - np.asarray(chi(s[1:-1] - h))) / (2 * h)
    sup_slope = max(sup_slope, float(np.max(np.abs(fd))))
    passed = dev <= 1e-12 and sup_slope <= 2.0
    return CheckResult("chi_contract", passed, max(dev, sup_slope - 2.0),
                       1e-12, detail=f"sup|chi'| = {sup_slope:.4f}")


def check_split_inequalities():
    """Mass-domination of the split, relative to the cancellation scale."""
    worst = -np.inf
    for p in (2.0, 3.0, 4.0):
        sp = split(Nonlinearity.power(p))
        m = sp.mass
        s = np.geomspace(1e-4, 1e2, 10_000)
        gap = (m * s - np.asarray(sp.g_minus(s))) \
            / np.maximum(1.0, np.asarray(sp.g_plus(s)))
        worst = max(worst, float(np.max(gap)))
        t = np.linspace(-10.0, 10.0, 10_000)
        gap = (0.5 * m * t**2 - np.asarray(sp.G_minus(t))) \
            / np.maximum(1.0, np.abs(np.asarray(sp.primitive(t))))
        worst = max(worst, float(np.max(gap)))
        c = epsilon_bound_certificate(sp, 0.5)
        if not np.isfinite(c):
            worst = np.inf
    return CheckResult("split_inequalities", worst <= 1e-12, worst, 1e-12)


def check_gradient_fd(grid, rng, pairs: int = 10):
    sp = split(Nonlinearity.power(3))
    trunc = TruncationConfig(level=5.0)
    F = TruncatedFunctional(grid, sp, q=0.5, trunc=trunc)
    worst = 0.0
    for k in range(pairs):
        u = _random_profile(grid, rng, amp=rng.uniform(0.1, 5.0))
        uv = u.values
        if k % 2 == 0:  # place half the samples in the active-cutoff band
            target = rng.uniform(1.1, 1.9) * trunc.level**trunc.exponent
            uv = uv * (target / max(F.alpha_power(uv), 1e-300)) ** (1.0 / trunc.exponent)
            u = RadialFunction(grid, uv)
        v = _random_profile(grid, rng, amp=rng.uniform(0.1, 2.0))
        lam = rng.uniform(0.9, 1.0)
        directional = grid.h1_inner(F.gradient(u, lam).values, v.values)
        h = 1e-5
        up = F.energy(RadialFunction(grid, uv + h * v.values), lam).total
        dn = F.energy(RadialFunction(grid, uv - h * v.values), lam).total
        fd = (up - dn) / (2.0 * h)
        worst = max(worst, abs(directional - fd) / max(abs(fd), 1e-12))
    return CheckResult("gradient_fd", worst <= 1e-5, worst, 1e-5)


def check_h1_riesz(grid, rng):
    v1 = _random_profile(grid, rng).values
    v2 = _random_profile(grid, rng).values
    w1, w2 = grid.h1_riesz(v1), grid.h1_riesz(v2)
    a = grid.volume_integral(v1 * w2)
    b = grid.volume_integral(v2 * w1)
    worst = abs(a - b) / max(abs(a), 1e-300)
    # manufactured solution through the discrete forward operator
    w0 = _random_profile(grid, rng).values
    rhs = grid.stiffness_apply(w0) + grid.volume_weights * w0
    rec = grid.h1_solve(rhs)
    worst = max(worst, float(np.max(np.abs(rec - w0))
                             / max(np.max(np.abs(w0)), 1e-300)))
    return CheckResult("h1_riesz", worst <= 1e-6, worst, 1e-6,
                       detail="symmetry and manufactured recovery")


def check_pohozaev_manufactured(grid, scale=1.0):
    nl = Nonlinearity.power(3)
    sp = split(nl)
    oracle = shooting_ground_state(sp.base.g, sp.mass, sp.well)
    u = oracle.on_grid(grid)
    F = TruncatedFunctional(grid, sp, q=0.0, trunc=TruncationConfig(level=1e3))
    res = abs(F.pohozaev_residual(u, 1.0, truncated=False))
    return CheckResult("pohozaev_manufactured", res <= 1e-3 * scale, res, 1e-3 * scale,
                       detail="independent shooting profile")


def check_interaction_bound(grid, scale=1.0):
    ratios = []
    for sigma in (0.5, 1.0, 2.0, 4.0):
        u = RadialFunction.from_callable(grid, lambda r: np.exp(-((r / sigma) ** 2)))
        inter, bound = interaction_bound_check(u, 1.0)
        ratios.append(inter / bound)
    spread = (max(ratios) - min(ratios)) / max(ratios)
    two_bump = RadialFunction.from_callable(
        grid, lambda r: np.exp(-(r**2)) + 0.7 * np.exp(-(((r - 2.5) / 0.8) ** 2)))
    inter, bound = interaction_bound_check(two_bump, 1.0)
    ok = spread <= 1e-5 * scale and inter / bound <= 2.0 * max(ratios)
    return CheckResult("interaction_bound", ok, spread, 1e-5 * scale,
                       detail=f"dilation spread; two-bump ratio {inter/bound:.4f}")


def check_poisson_strong_residual(grid, scale=1.0):
    u = RadialFunction.from_callable(grid, lambda r: np.exp(-((r / 1.3) ** 2)))
    field = solve_poisson(u, 0.1)
    res = poisson_residual(field, u)
    return CheckResult("poisson_strong_residual", res <= 1e-4 * scale, res, 1e-4 * scale)


def run_suite(grid: RadialGrid | None = None, seed: int = 0,
              chi=None, chi_prime=None) -> list:
    """Execute every invariant check; returns the result matrix."""
    grid = grid if grid is not None else RadialGrid.uniform(30.0, 4500)
    rng = np.random.default_rng(seed)
    scale = _tol_scale(grid)
    n_ball = max(int(grid.n * 2 / 3), 512)
    checks = [
        check_poisson_identity(grid, rng, scale),
        check_poisson_scaling(grid, scale),
        check_poisson_closed_form(n_ball, scale),
        check_chi_contract(chi or quintic_cutoff, chi_prime or quintic_cutoff_prime),
        check_split_inequalities(),
        check_gradient_fd(grid, rng),
        check_h1_riesz(grid, rng),
        check_pohozaev_manufactured(grid, scale),
        check_interaction_bound(grid, scale),
        check_poisson_strong_residual(grid, scale),
    ]
    return checks
