import numpy as np
import pytest

from schropoisson import Nonlinearity, shooting_ground_state
from schropoisson.nonlinearity import modify
from schropoisson.shooting import ShootingError


def test_ground_state_cubic(oracle3):
    # classic cubic scalar-field ground state in three dimensions
    assert oracle3.amplitude == pytest.approx(4.33739, rel=1e-4)
    assert oracle3.energy == pytest.approx(18.8973, rel=1e-4)
    # stationary-state identities: kinetic = 3 * L2 mass, energy = L2 mass
    assert oracle3.kinetic == pytest.approx(3.0 * oracle3.energy, rel=1e-5)
    assert 0.5 * oracle3.kinetic == pytest.approx(3.0 * oracle3.potential, rel=1e-4)


def test_ode_residual(oracle3, power3):
    nl = modify(power3)
    r = np.linspace(0.2, 8.0, 100)
    h = 1e-4
    upp = (oracle3.profile(r + h) - 2 * oracle3.profile(r) + oracle3.profile(r - h)) / h**2
    up = (oracle3.profile(r + h) - oracle3.profile(r - h)) / (2 * h)
    residual = upp + 2 * up / r + np.asarray(nl.g(oracle3.profile(r)))
    assert np.max(np.abs(residual)) < 1e-4


def test_profile_positive_decreasing(oracle3):
    r = np.linspace(0.0, 25.0, 500)
    u = oracle3.profile(r)
    assert np.all(u > 0)
    assert np.all(np.diff(u) < 0)
    # exponential tail with unit mass
    assert u[-1] / u[-2] == pytest.approx(
        np.exp(-(r[-1] - r[-2])) * r[-2] / r[-1], rel=1e-6)


def test_on_grid(grid, oracle3):
    u = oracle3.on_grid(grid)
    assert u.values[0] == pytest.approx(oracle3.amplitude, rel=1e-9)
    assert u.values[-1] == 0.0


def test_quadratic_family():
    nl = modify(Nonlinearity.power(2))
    res = shooting_ground_state(nl.g, nl.mass, nl.well)
    assert res.amplitude == pytest.approx(4.19168, rel=1e-3)
    assert 0.5 * res.kinetic == pytest.approx(3.0 * res.potential, rel=1e-3)


def test_rejects_missing_well():
    nl = Nonlinearity.pure_mass(1.0)
    with pytest.raises(ShootingError):
        shooting_ground_state(nl.g, nl.mass, nl.well)
