import numpy as np
import pytest

from schropoisson import RadialFunction, check_scaling, interaction_bound_check, solve_poisson
from schropoisson.poisson import cumulative_integral, poisson_residual
from schropoisson.verify import unit_ball_grid

from conftest import random_profile


def test_zero_density(grid):
    field = solve_poisson(RadialFunction.zero(grid), 1.0)
    assert np.all(field.phi.values == 0.0)
    assert field.interaction == 0.0


def test_cumulative_integral_exact_cubic(grid):
    # the corrected panels integrate cubics exactly
    r = grid.r
    got = cumulative_integral(r**3 - 2.0 * r**2 + r, r)[-1]
    exact = 30.0**4 / 4 - 2.0 * 30.0**3 / 3 + 30.0**2 / 2
    assert got == pytest.approx(exact, rel=1e-13)


def test_unit_ball_closed_form():
    grid = unit_ball_grid(3000)
    u = RadialFunction(grid, np.where(grid.r <= 1.0, 1.0, 0.0))
    q = 1.0
    field = solve_poisson(u, q, corrected=False)
    r = grid.r
    inside = r <= 1.0
    assert field.phi.values[0] == pytest.approx(0.5 * q, abs=1e-6)
    assert np.max(np.abs(field.phi.values[inside] - q * (0.5 - r[inside] ** 2 / 6))) < 1e-6
    outside = r >= 1.0 + 1e-6
    assert np.max(np.abs(field.phi.values[outside] - q / (3 * r[outside]))) < 1e-6


def test_energy_identity_gaussian(grid):
    u = RadialFunction.from_callable(grid, lambda r: np.exp(-(r**2)))
    for q in (0.1, 1.0):
        field = solve_poisson(u, q)
        assert field.identity_deviation <= 1e-6
        assert field.d12_norm_sq == pytest.approx(q * field.interaction, rel=1e-6)


def test_energy_identity_random(grid):
    rng = np.random.default_rng(42)
    for _ in range(5):
        u = random_profile(grid, rng, amp=rng.uniform(0.2, 2.0))
        field = solve_poisson(u, 1.0)
        assert field.identity_deviation <= 1e-6


def test_positivity_and_monotone_tail(grid):
    rng = np.random.default_rng(9)
    u = random_profile(grid, rng)
    field = solve_poisson(u, 1.0)
    assert np.all(field.phi.values >= 0.0)
    # Newtonian tail beyond the support: phi * r approaches q * total charge
    far = grid.r > 20.0
    tail = field.phi.values[far] * grid.r[far]
    assert np.max(np.abs(tail - field.far_constant)) < 1e-6 * field.far_constant
    assert np.all(np.diff(field.phi.values[far]) <= 0.0)


def test_scaling_identity(grid):
    u = RadialFunction.from_callable(grid, lambda r: np.exp(-(r**2)))
    assert check_scaling(u, 1.0, 1.0) <= 1e-12
    assert check_scaling(u, 2.0, 1.0) <= 1e-5
    assert check_scaling(u, 0.5, 1.0) <= 1e-5


def test_interaction_scales_theta5(grid):
    u = RadialFunction.from_callable(grid, lambda r: np.exp(-(r**2)))
    base = solve_poisson(u, 1.0).interaction
    for theta in (0.5, 2.0):
        scaled = solve_poisson(u.dilate(theta), 1.0).interaction
        assert scaled == pytest.approx(theta**5 * base, rel=1e-5)


def test_interaction_bound_family(grid):
    ratios = []
    for sigma in (0.5, 1.0, 2.0, 4.0):
        u = RadialFunction.from_callable(grid, lambda r: np.exp(-((r / sigma) ** 2)))
        inter, bound = interaction_bound_check(u, 1.0)
        ratios.append(inter / bound)
    assert max(ratios) - min(ratios) <= 1e-5 * max(ratios)
    two_bump = RadialFunction.from_callable(
        grid, lambda r: np.exp(-(r**2)) + 0.7 * np.exp(-(((r - 2.5) / 0.8) ** 2)))
    inter, bound = interaction_bound_check(two_bump, 1.0)
    assert inter / bound <= 2.0 * max(ratios)


def test_interaction_bound_zero(grid):
    inter, bound = interaction_bound_check(RadialFunction.zero(grid), 1.0)
    assert inter == 0.0 and bound == 0.0


def test_strong_residual(grid):
    u = RadialFunction.from_callable(grid, lambda r: np.exp(-((r / 1.3) ** 2)))
    field = solve_poisson(u, 0.1)
    assert poisson_residual(field, u) <= 1e-4


def test_commutes_with_refinement(grid):
    # radial representation is structural: refining the grid only sharpens
    # quadrature, it does not move the potential
    fine = type(grid).uniform(30.0, 2 * (grid.n - 1) + 1)
    u_c = RadialFunction.from_callable(grid, lambda r: np.exp(-(r**2)))
    u_f = RadialFunction.from_callable(fine, lambda r: np.exp(-(r**2)))
    phi_c = solve_poisson(u_c, 1.0)
    phi_f = solve_poisson(u_f, 1.0)
    sample = np.linspace(0.0, 8.0, 50)
    assert np.max(np.abs(phi_c.at(sample) - phi_f.at(sample))) < 1e-8
