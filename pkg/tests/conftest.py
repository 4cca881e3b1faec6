import numpy as np
import pytest

from schropoisson import (
    Nonlinearity,
    RadialGrid,
    continuation_run,
    shooting_ground_state,
    split,
)
from schropoisson.nonlinearity import modify


@pytest.fixture(scope="session")
def grid():
    return RadialGrid.uniform(30.0, 4500)


@pytest.fixture(scope="session")
def coarse_grid():
    return RadialGrid.uniform(30.0, 3000)


@pytest.fixture(scope="session")
def power3():
    return Nonlinearity.power(3)


@pytest.fixture(scope="session")
def split3(power3):
    return split(power3)


@pytest.fixture(scope="session")
def oracle3(power3):
    nl = modify(power3)
    return shooting_ground_state(nl.g, nl.mass, nl.well)


@pytest.fixture(scope="session")
def run_q0(power3, grid):
    return continuation_run(power3, q=0.0, grid=grid, depth=8)


@pytest.fixture(scope="session")
def run_q01(power3, grid):
    return continuation_run(power3, q=0.1, grid=grid, depth=8)


def random_profile(grid, rng, amp=1.0):
    c = rng.uniform(0.0, 3.0, 3)
    w = rng.uniform(0.6, 2.5, 3)
    a = rng.uniform(-1.0, 1.0, 3)
    vals = sum(ai * np.exp(-(((grid.r - ci) / wi) ** 2)) for ai, ci, wi in zip(a, c, w))
    vals = amp * vals / max(np.max(np.abs(vals)), 1e-300)
    vals[-1] = 0.0
    from schropoisson import RadialFunction

    return RadialFunction(grid, vals)
