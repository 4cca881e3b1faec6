"""Acceptance suite: every release gate in one module.

Each test prints one PASS/FAIL line with its measured value and runtime.
Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.
"""

import time

import numpy as np
import pytest

from schropoisson import (
    Nonlinearity,
    RadialFunction,
    TruncatedFunctional,
    TruncationConfig,
    check_scaling,
    continuation_run,
    epsilon_bound_certificate,
    solve_poisson,
    split,
)
from schropoisson.functional import level_floor, quintic_cutoff, quintic_cutoff_prime
from schropoisson.mountainpass import build_path, build_reference_profile, minimax_level
from schropoisson.verify import run_suite, unit_ball_grid
from schropoisson import RadialGrid

from conftest import random_profile


def _report(num, ok, detail, t0):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} - {detail} [{time.time() - t0:.2f}s]"
    print(line)
    assert ok, line


def test_criterion_1_poisson_identity(grid):
    t0 = time.time()
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(10):
        u = random_profile(grid, rng, amp=rng.uniform(0.2, 2.0))
        for q in (0.1, 1.0):
            worst = max(worst, solve_poisson(u, q).identity_deviation)
    _report(1, worst <= 1e-6, f"energy identity deviation {worst:.2e} <= 1e-6", t0)


def test_criterion_2_scaling_law(grid):
    t0 = time.time()
    u = RadialFunction.from_callable(grid, lambda r: np.exp(-(r**2)))
    worst = max(check_scaling(u, 0.5, 1.0), check_scaling(u, 2.0, 1.0))
    base = solve_poisson(u, 1.0).interaction
    worst_inter = 0.0
    for theta in (0.5, 2.0):
        scaled = solve_poisson(u.dilate(theta), 1.0).interaction
        worst_inter = max(worst_inter, abs(scaled - theta**5 * base) / (theta**5 * base))
    ok = worst <= 1e-5 and worst_inter <= 1e-5
    _report(2, ok, f"field deviation {worst:.2e}, interaction {worst_inter:.2e} <= 1e-5", t0)


def test_criterion_3_closed_form_poisson():
    t0 = time.time()
    grid = unit_ball_grid(3000)
    q = 1.0
    u = RadialFunction(grid, np.where(grid.r <= 1.0, 1.0, 0.0))
    field = solve_poisson(u, q, corrected=False)
    r = grid.r
    exact = np.where(r <= 1.0, q * (0.5 - r**2 / 6.0), q / (3.0 * np.maximum(r, 1e-300)))
    dev = max(float(np.max(np.abs(field.phi.values - exact))),
              abs(field.phi.values[0] - q / 2.0))
    _report(3, dev <= 1e-6, f"unit-ball field deviation {dev:.2e} <= 1e-6", t0)


def test_criterion_4_gradient_consistency(grid, split3):
    t0 = time.time()
    trunc = TruncationConfig(level=5.0)
    F = TruncatedFunctional(grid, split3, q=0.5, trunc=trunc)
    rng = np.random.default_rng(7)
    worst = 0.0
    for trial in range(20):
        u = random_profile(grid, rng, amp=rng.uniform(0.1, 5.0))
        uv = u.values
        if trial % 2 == 0:  # truncation-active band
            target = rng.uniform(1.1, 1.9) * trunc.level**trunc.exponent
            uv = uv * (target / F.alpha_power(uv)) ** (1.0 / trunc.exponent)
        ratio = F.cutoff_state(uv)[0]
        if trial % 2 == 0:
            assert 1.0 < ratio < 2.0
        v = random_profile(grid, rng, amp=rng.uniform(0.1, 2.0)).values
        lam = rng.uniform(0.9, 1.0)
        directional = grid.h1_inner(F.gradient(RadialFunction(grid, uv), lam).values, v)
        h = 1e-5
        up = F.energy(RadialFunction(grid, uv + h * v), lam).total
        dn = F.energy(RadialFunction(grid, uv - h * v), lam).total
        fd = (up - dn) / (2.0 * h)
        worst = max(worst, abs(directional - fd) / max(abs(fd), 1e-12))
    _report(4, worst <= 1e-5, f"gradient vs central differences {worst:.2e} <= 1e-5", t0)


def test_criterion_5_cutoff_contract():
    t0 = time.time()
    s = np.linspace(0.0, 3.0, 10_000)
    chi = np.asarray(quintic_cutoff(s))
    ok = (np.all(chi[s <= 1.0] == 1.0) and np.all(chi[s >= 2.0] == 0.0)
          and np.all((chi >= 0.0) & (chi <= 1.0)))
    sup = float(np.max(np.abs(quintic_cutoff_prime(s))))
    ok = ok and sup <= 2.0
    _report(5, ok, f"plateaus exact, range [0,1], sup|chi'| = {sup:.4f} <= 2", t0)


def test_criterion_6_split_inequalities():
    t0 = time.time()
    ok = True
    worst = -np.inf
    for p in (2.0, 3.0, 4.0):
        sp = split(Nonlinearity.power(p))
        m = sp.mass
        s = np.geomspace(1e-4, 1e2, 10_000)
        gap = (m * s - np.asarray(sp.g_minus(s))) / np.maximum(1.0, np.asarray(sp.g_plus(s)))
        worst = max(worst, float(np.max(gap)))
        tgrid = np.linspace(-10.0, 10.0, 10_000)
        gap = (0.5 * m * tgrid**2 - np.asarray(sp.G_minus(tgrid))) \
            / np.maximum(1.0, np.abs(np.asarray(sp.primitive(tgrid))))
        worst = max(worst, float(np.max(gap)))
        c = epsilon_bound_certificate(sp, 0.5)
        ok = ok and np.isfinite(c)
    ok = ok and worst <= 1e-12
    _report(6, ok, f"mass domination slack {worst:.2e}, certificates finite", t0)


def test_criterion_7_uncoupled_reduction(run_q0, oracle3):
    t0 = time.time()
    rel = abs(run_q0.energy_q - oracle3.energy) / abs(oracle3.energy)
    poho = abs(run_q0.pohozaev_residual)
    ok = rel <= 1e-2 and poho <= 1e-3
    _report(7, ok, f"energy vs shooting {rel:.2e} <= 1e-2, "
                   f"scale-invariance defect {poho:.2e} <= 1e-3", t0)


def test_criterion_8_full_pipeline(grid, power3, split3, run_q01):
    t0 = time.time()
    res = run_q01
    F = TruncatedFunctional(grid, split3, q=0.1,
                            trunc=TruncationConfig(level=res.trunc_level))
    res1, res2 = F.pde_residuals(res.u, res.phi)
    checks = {
        "gradient": res.grad_residual <= 1e-6,
        "pohozaev": abs(res.pohozaev_residual) <= 1e-3,
        "cutoff_open": F.cutoff_factor(res.u) == 1.0,
        "alpha_norm": res.alpha_norm <= res.trunc_level,
        "positive": res.positivity > 0.0,
        "pde_field": res1 <= 1e-4,
        "pde_poisson": res2 <= 1e-4,
    }
    res_2T = continuation_run(power3, q=0.1, grid=grid,
                              level=2.0 * res.trunc_level, depth=8)
    de = abs(res_2T.energy_q - res.energy_q)
    checks["level_independence"] = de <= 1e-8
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    _report(8, ok, f"grad {res.grad_residual:.1e}, poho {abs(res.pohozaev_residual):.1e}, "
                   f"pde ({res1:.1e}, {res2:.1e}), dE(2T) {de:.1e}"
                   + (f"; failed: {failed}" if failed else ""), t0)


def test_criterion_9_mountain_pass_geometry(grid, split3, run_q01):
    t0 = time.time()
    F = TruncatedFunctional(grid, split3, q=0.1,
                            trunc=TruncationConfig(level=run_q01.trunc_level))
    profile = build_reference_profile(F)
    path = build_path(profile, grid, 25)
    cert = epsilon_bound_certificate(split3, 0.5)
    floor = level_floor(cert)
    ok = F.energy(path[0], profile.lambda_floor).total == 0.0
    for lam in (profile.lambda_floor, 0.5 * (profile.lambda_floor + 1.0), 1.0):
        ok = ok and F.energy(path[-1], lam).total < 0.0
        est = minimax_level(F, path, lam, cert)
        ok = ok and est.value >= est.floor > 0.0
    uppers = [le["upper"] for le in run_q01.level_estimates]
    floors = [le["floor"] for le in run_q01.level_estimates]
    ok = ok and all(u >= f > 0 for u, f in zip(uppers, floors))
    ok = ok and all(a >= b - 1e-12 for a, b in zip(uppers, uppers[1:]))
    _report(9, ok, f"floor {floor:.3f} below all level estimates "
                   f"({uppers[0]:.3f} -> {uppers[-1]:.3f}, nonincreasing)", t0)


def test_criterion_10_grid_convergence(grid, power3, run_q0):
    t0 = time.time()
    fine = RadialGrid.uniform(30.0, 2 * (grid.n - 1) + 1)
    res_fine = continuation_run(power3, q=0.0, grid=fine, depth=8)
    de = abs(res_fine.energy_q - run_q0.energy_q) / abs(run_q0.energy_q)
    ok = de <= 1e-3
    half = RadialGrid.uniform(30.0, (grid.n - 1) // 2 + 1)
    checks = run_suite(grid=half, seed=0)
    failing = [c.name for c in checks if not c.passed]
    ok = ok and not failing
    _report(10, ok, f"doubled-n energy shift {de:.2e} <= 1e-3; "
                    f"half-n invariants at 4x tolerance"
                    + (f"; failed: {failing}" if failing else " all pass"), t0)
