import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from schropoisson import Nonlinearity, epsilon_bound_certificate, modify, split
from schropoisson.nonlinearity import (
    InadmissibleNonlinearity,
    NonlinearityError,
    validate_hypotheses,
)


def test_power_family_basics(power3):
    assert power3.mass == 1.0
    assert power3.well == pytest.approx(1.5567, rel=1e-3)
    # primitive at the well is positive; the classic threshold is sqrt(2)
    assert power3.primitive(power3.well) > 0
    assert power3.primitive(1.4) < 0
    assert power3.first_zero == np.inf


def test_hypotheses_power_family():
    for p in (2.0, 3.0, 4.0):
        report = validate_hypotheses(Nonlinearity.power(p))
        assert report["well_energy"] > 0


def test_hypotheses_reject_pure_mass():
    with pytest.raises(InadmissibleNonlinearity):
        validate_hypotheses(Nonlinearity.pure_mass(1.0))


def test_modify_positive_axis_unchanged(power3):
    gm = modify(power3)
    s = np.linspace(0.0, 8.0, 200)
    assert np.allclose(gm.g(s), power3.g(s))
    assert gm.first_zero == np.inf


def test_modify_negative_branch(power3):
    gm = modify(power3)
    # (g(-s) - m s)^+ - g(-s) collapses to -s for the cubic family
    assert gm.g(-2.0) == pytest.approx(2.0, abs=1e-14)
    s = np.linspace(-6.0, 0.0, 100)
    assert np.allclose(gm.g(s), -s)
    assert gm.g(0.0) == 0.0
    assert gm.primitive(0.0) == 0.0


def test_modify_idempotent(power3):
    gm = modify(power3)
    gm2 = modify(gm)
    s = np.linspace(-8.0, 8.0, 400)
    assert np.allclose(gm2.g(s), gm.g(s))
    assert np.allclose(gm2.primitive(s), gm.primitive(s))


def test_modify_caps_growth():
    # a term with a zero above the well is cut off there
    s_tab = np.linspace(0.0, 40.0, 16001)
    g_tab = -s_tab + s_tab**3 * np.exp(-s_tab / 4.0)  # dies out at large s
    nl = Nonlinearity.from_table(s_tab, g_tab)
    assert np.isfinite(nl.first_zero)
    gm = modify(nl)
    s = np.linspace(nl.first_zero + 0.5, 40.0, 50)
    assert np.allclose(gm.g(s), 0.0)
    ratio = np.abs(gm.g(np.geomspace(1.0, 100.0, 200))) / np.geomspace(1.0, 100.0, 200) ** 5
    assert ratio[-1] <= 1e-10


def test_split_power3(split3):
    s = np.linspace(0.0, 5.0, 400)
    assert np.allclose(split3.g_plus(s), s**3)
    assert np.allclose(split3.g_minus(s), s)
    assert split3.g_plus(-1.0) == 0.0
    assert split3.g_minus(-1.0) == pytest.approx(-1.0)


def test_split_identities(split3):
    s = np.linspace(-10.0, 10.0, 2001)
    gm = split3.base
    assert np.allclose(split3.g_plus(s) - split3.g_minus(s), gm.g(s))
    assert np.allclose(split3.G_plus(s) - split3.G_minus(s), gm.primitive(s))
    assert np.all(np.asarray(split3.g_plus(s)) >= 0.0)
    assert np.all(np.asarray(split3.G_plus(s)) >= 0.0)


def test_split_mass_domination():
    for p in (2.0, 3.0, 4.0):
        sp = split(Nonlinearity.power(p))
        m = sp.mass
        s = np.geomspace(1e-4, 1e2, 10_000)
        slack = np.asarray(sp.g_minus(s)) - m * s
        assert np.all(slack >= -1e-9 * np.maximum(1.0, np.asarray(sp.g_plus(s))))
        t = np.linspace(-10.0, 10.0, 10_000)
        slack = np.asarray(sp.G_minus(t)) - 0.5 * m * t**2
        assert np.all(slack >= -1e-9 * np.maximum(1.0, np.abs(sp.primitive(t))))


def test_certificate_power3(split3):
    # oracle: one-dimensional maximization of (g_plus - eps g_minus)/s^5
    eps = 0.5
    res = minimize_scalar(lambda s: -(s**3 - eps * s) / s**5, bracket=(0.5, 1.0, 2.0))
    oracle = -res.fun
    got = epsilon_bound_certificate(split3, eps)
    assert got == pytest.approx(oracle, rel=1e-6)
    assert got == pytest.approx(0.5, rel=1e-6)


def test_certificate_rejects_eps_out_of_range(split3):
    with pytest.raises(NonlinearityError):
        epsilon_bound_certificate(split3, 1.5)


def test_certificate_rejects_critical_growth():
    sp = split(Nonlinearity.power(5))
    with pytest.raises(InadmissibleNonlinearity):
        epsilon_bound_certificate(sp, 0.5)


def test_certificate_pure_mass_zero():
    sp = split(Nonlinearity.pure_mass(1.0))
    assert epsilon_bound_certificate(sp, 0.5) == 0.0
    # every eps gives the zero constant when the driving part vanishes
    assert epsilon_bound_certificate(sp, 0.1) == 0.0


def test_table_family_matches_power(split3):
    s_tab = np.linspace(0.0, 20.0, 8001)
    nl = Nonlinearity.from_table(s_tab, -s_tab + s_tab**3)
    assert nl.mass == pytest.approx(1.0, abs=2e-4)
    sp = split(nl)
    s = np.linspace(0.0, 5.0, 200)
    assert np.max(np.abs(np.asarray(sp.g_plus(s)) - s**3)) < 2e-2
    validate_hypotheses(nl)


def test_table_rejects_positive_mass():
    s_tab = np.linspace(0.0, 5.0, 1001)
    with pytest.raises(InadmissibleNonlinearity):
        Nonlinearity.from_table(s_tab, +s_tab)  # wrong sign at the origin


def test_primitive_consistency(split3):
    # primitives differentiate back to their densities (centered differences)
    s = np.linspace(-5.0, 5.0, 101)
    h = 1e-6
    for fn, prim in ((split3.g_plus, split3.G_plus), (split3.g_minus, split3.G_minus)):
        fd = (np.asarray(prim(s + h)) - np.asarray(prim(s - h))) / (2 * h)
        assert np.allclose(fd, fn(s), atol=1e-6)
