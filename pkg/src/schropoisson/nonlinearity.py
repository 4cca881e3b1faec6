"""Nonlinear terms under Berestycki-Lions-type growth conditions.

A nonlinearity g must be continuous with g(0) = 0, have a negative
linearization -m < 0 at the origin, grow subcritically (g(s)/s^5 -> 0
after modification), and admit a point ``well`` of positive potential
energy, G(well) > 0.  The solver never consumes the raw g: it is first
modified (zeroed above its first zero past the well, reflected with a
mass-dominated branch on the negative axis) and then split as

    g = g_plus - g_minus,   g_plus >= 0,   g_minus(s) >= m s  (s >= 0),

which yields the coercive/driving decomposition the perturbed functionals
are built on.  All primitive callables are derivative-exact against their
densities, so finite-difference checks of the energy hold to round-off.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

SCAN_LO, SCAN_HI, SCAN_POINTS = 1e-4, 1e2, 10_000


class NonlinearityError(ValueError):
    pass


class InadmissibleNonlinearity(NonlinearityError):
    """The term violates one of the standing growth hypotheses."""


class TableFunction:
    """Piecewise-linear interpolant with its exact primitive.

    The primitive integrates the interpolant itself, so that
    primitive'(s) == self(s) identically; outside the knot range the
    function is held constant and the primitive extends linearly.
    """

    def __init__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 1 or x.size < 2 or np.any(np.diff(x) <= 0):
            raise NonlinearityError("table abscissae must be strictly increasing")
        if y.shape != x.shape or not np.all(np.isfinite(y)):
            raise NonlinearityError("table values must be finite and match abscissae")
        self.x, self.y = x, y
        panels = 0.5 * (y[:-1] + y[1:]) * np.diff(x)
        self.Y = np.concatenate([[0.0], np.cumsum(panels)])

    def __call__(self, s):
        return np.interp(s, self.x, self.y)

    def primitive(self, s):
        s = np.asarray(s, dtype=float)
        sc = np.clip(s, self.x[0], self.x[-1])
        idx = np.clip(np.searchsorted(self.x, sc, side="right") - 1, 0, self.x.size - 2)
        x0, x1 = self.x[idx], self.x[idx + 1]
        y0, y1 = self.y[idx], self.y[idx + 1]
        d = sc - x0
        out = self.Y[idx] + y0 * d + 0.5 * (y1 - y0) / (x1 - x0) * d**2
        # constant extension of the density -> linear extension here
        out = out + self.y[0] * np.minimum(s - self.x[0], 0.0)
        out = out + self.y[-1] * np.maximum(s - self.x[-1], 0.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class Nonlinearity:
    """A term g with its primitive and the derived admissibility data.

    mass:        -lim g(s)/s as s -> 0+ (must be positive)
    well:        a point with primitive(well) > 0, None when none exists
    first_zero:  smallest zero of g at or above the well (inf if none)
    plus_pair:   ((g + m s)^+ on s >= 0, its exact primitive), used by the
                 modification's negative branch and by the split
    """

    g: Callable
    primitive: Callable
    mass: float
    well: Optional[float]
    first_zero: float
    plus_pair: tuple
    name: str = "custom"
    modified: bool = False

    # -- constructors -------------------------------------------------------

    @classmethod
    def power(cls, p: float) -> "Nonlinearity":
        """g(s) = -s + |s|^(p-1) s.  Admissible for 1 < p < 5."""
        if p <= 1.0:
            raise NonlinearityError("power exponent must exceed 1")
        p = float(p)

        def g(s):
            s = np.asarray(s, dtype=float)
            return -s + np.abs(s) ** (p - 1) * s

        def G(s):
            s = np.asarray(s, dtype=float)
            return -0.5 * s**2 + np.abs(s) ** (p + 1) / (p + 1)

        def plus_fn(t):
            t = np.maximum(np.asarray(t, dtype=float), 0.0)
            return t**p

        def plus_primitive(t):
            t = np.maximum(np.asarray(t, dtype=float), 0.0)
            return t ** (p + 1) / (p + 1)

        well = _scan_well(G)
        return cls(g=g, primitive=G, mass=1.0, well=well,
                   first_zero=_scan_first_zero(g, well),
                   plus_pair=(plus_fn, plus_primitive),
                   name=f"power(p={p:g})")

    @classmethod
    def pure_mass(cls, m: float = 1.0) -> "Nonlinearity":
        """g(s) = -m s.  Degenerate reference: no positive well exists."""
        m = float(m)

        def g(s):
            return -m * np.asarray(s, dtype=float)

        def G(s):
            return -0.5 * m * np.asarray(s, dtype=float) ** 2

        zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        return cls(g=g, primitive=G, mass=m, well=None, first_zero=np.inf,
                   plus_pair=(zero, zero), name=f"pure_mass(m={m:g})")

    @classmethod
    def from_table(cls, s_nodes, g_values) -> "Nonlinearity":
        """Tabulated (s, g(s)) on s >= 0 with s[0] = 0, g(0) = 0.

        The mass is Aitken-extrapolated from g(s)/s near zero and must be
        positive.  Negative-axis behavior is supplied later by the
        modification, so only the positive axis is tabulated.
        """
        tab = TableFunction(s_nodes, g_values)
        if tab.x[0] != 0.0 or tab.y[0] != 0.0:
            raise NonlinearityError("table must start at (0, 0)")
        samples = np.array([1e-2, 1e-3, 1e-4])
        if tab.x[-1] < samples.max():
            raise NonlinearityError("table too coarse near the origin")
        ratios = tab(samples) / samples
        d1, d2 = ratios[1] - ratios[0], ratios[2] - ratios[1]
        if abs(d2 - d1) > 1e-14:
            m = -(ratios[0] - d1**2 / (d1 - d2))
        else:
            m = -ratios[2]
        if not np.isfinite(m) or m <= 0:
            raise InadmissibleNonlinearity(
                f"estimated mass {m:.3g} is not positive; need g(s) ~ -m s at 0+")

        g = tab
        G = tab.primitive
        splus = tab.x
        plus_tab = TableFunction(splus, np.maximum(tab(splus) + m * splus, 0.0))
        well = _scan_well(G, hi=tab.x[-1])
        return cls(g=g, primitive=G, mass=float(m), well=well,
                   first_zero=_scan_first_zero(g, well, hi=tab.x[-1]),
                   plus_pair=(plus_tab, plus_tab.primitive), name="table")


def _scan_well(G, lo: float = 1e-3, hi: float = SCAN_HI) -> Optional[float]:
    """Smallest scanned s with G(s) > 0, padded by 10 percent."""
    s = np.geomspace(lo, hi, SCAN_POINTS)
    vals = G(s)
    pos = np.nonzero(vals > 0)[0]
    if pos.size == 0:
        return None
    return float(1.1 * s[pos[0]])


def _scan_first_zero(g, well, hi: float = 1e3) -> float:
    """min{s >= well : g(s) = 0} by sign scan plus bisection, inf if none."""
    if well is None:
        return np.inf
    s = np.geomspace(well, hi, SCAN_POINTS)
    vals = np.asarray(g(s), dtype=float)
    if abs(vals[0]) < 1e-14:
        return float(s[0])
    flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    if flips.size == 0:
        return np.inf
    i = flips[0]
    return float(brentq(lambda t: float(g(t)), s[i], s[i + 1]))


def validate_hypotheses(nl: Nonlinearity, mass_tol: float = 0.05) -> dict:
    """Numeric audit of the standing hypotheses; raises when one fails.

    Checks, on scan grids: finiteness (continuity surrogate), the
    negative linearization g(s)/s -> -mass on s in {1e-2, 1e-3, 1e-4},
    the positive well with an independent quadrature of g, and the
    subcritical decay of the modified term's growth ratio.
    """
    report = {}
    s = np.geomspace(SCAN_LO, SCAN_HI, SCAN_POINTS)
    vals = np.asarray(nl.g(s))
    if not np.all(np.isfinite(vals)):
        raise InadmissibleNonlinearity("g is not finite on the scan range")
    report["finite"] = True

    samples = np.array([1e-2, 1e-3, 1e-4])
    ratios = np.asarray(nl.g(samples)) / samples
    devs = np.abs(ratios + nl.mass)
    if np.max(devs) > mass_tol * max(nl.mass, 1.0):
        raise InadmissibleNonlinearity(
            f"g(s)/s does not stay near -mass: deviations {devs}")
    report["mass_deviations"] = devs

    if nl.well is None:
        raise InadmissibleNonlinearity("no point of positive potential energy")
    quad_G, _ = quad(lambda t: float(np.asarray(nl.g(t)).ravel()[0]), 0.0, nl.well, limit=200)
    prim = float(nl.primitive(nl.well))
    if prim <= 0 or quad_G <= 0:
        raise InadmissibleNonlinearity(
            f"primitive at the well is not positive: table {prim:.3g}, quadrature {quad_G:.3g}")
    if abs(quad_G - prim) > 1e-6 * max(1.0, abs(prim)):
        raise InadmissibleNonlinearity(
            f"primitive inconsistent with quadrature of g: {prim:.8g} vs {quad_G:.8g}")
    report["well_energy"] = prim

    gm = modify(nl) if not nl.modified else nl
    _assert_subcritical(gm)
    report["subcritical"] = True
    return report


def _assert_subcritical(nl: Nonlinearity):
    """Growth audit: |g(s)/s^5| must decay along the scan tail."""
    s = np.geomspace(1.0, SCAN_HI, 2000)
    ratio = np.abs(np.asarray(nl.g(s))) / s**5
    peak = ratio.max()
    if peak == 0.0:
        return
    tail = ratio[s >= SCAN_HI / 10.0]
    st = s[s >= SCAN_HI / 10.0]
    good = tail > 1e-300
    if not np.any(good):
        return
    slope = np.polyfit(np.log(st[good]), np.log(tail[good]), 1)[0]
    if slope > -1e-3 and tail.max() > 1e-6 * peak:
        raise InadmissibleNonlinearity(
            f"g(s)/s^5 does not decay (tail log-slope {slope:.3g}); "
            "growth is critical or supercritical")


def modify(nl: Nonlinearity) -> Nonlinearity:
    """Standard modification ahead of the variational search.

    Keeps g on [0, first_zero], zeroes it above, and replaces the negative
    axis by (g(-s) - m s)^+ - g(-s), which is dominated by the mass term
    there.  The primitive is re-accumulated so it still vanishes at 0.
    Idempotent for terms with no zero above the well.
    """
    if nl.modified:
        return nl
    g_raw, G_raw, m, s0 = nl.g, nl.primitive, nl.mass, nl.first_zero
    plus_fn, plus_primitive = nl.plus_pair

    def g_mod(s):
        s = np.asarray(s, dtype=float)
        pos = np.where(s <= s0, np.asarray(g_raw(s), dtype=float), 0.0)
        t = np.maximum(-s, 0.0)  # = |s| on the negative axis
        gneg_val = np.asarray(g_raw(t), dtype=float)
        neg = np.maximum(gneg_val + m * t, 0.0) - gneg_val
        out = np.where(s >= 0, pos, neg)
        return out if out.ndim else float(out)

    def G_mod(s):
        s = np.asarray(s, dtype=float)
        pos = np.asarray(G_raw(np.minimum(s, s0)), dtype=float)
        t = np.maximum(-s, 0.0)
        neg = -(np.asarray(plus_primitive(t), dtype=float)
                - np.asarray(G_raw(t), dtype=float))
        out = np.where(s >= 0, pos, neg)
        return out if out.ndim else float(out)

    return Nonlinearity(g=g_mod, primitive=G_mod, mass=m, well=nl.well,
                        first_zero=s0, plus_pair=(plus_fn, plus_primitive),
                        name=nl.name + "~", modified=True)


@dataclass(frozen=True)
class SplitNonlinearity:
    """Decomposition g = g_plus - g_minus of a modified term.

    g_plus(s) = (g(s) + m s)^+ for s >= 0 and 0 below; g_minus mops up the
    rest and dominates the mass line:  g_minus(s) >= m s on s >= 0 and
    G_minus(s) >= m s^2 / 2 everywhere.  Both primitives are derivative-
    exact.
    """

    base: Nonlinearity
    g_plus: Callable
    G_plus: Callable
    g_minus: Callable
    G_minus: Callable

    @property
    def mass(self) -> float:
        return self.base.mass

    @property
    def well(self) -> float:
        return self.base.well

    @property
    def first_zero(self) -> float:
        return self.base.first_zero

    @property
    def g(self) -> Callable:
        return self.base.g

    @property
    def primitive(self) -> Callable:
        return self.base.primitive


def split(nl: Nonlinearity) -> SplitNonlinearity:
    """Build the g_plus / g_minus decomposition (modifying first if needed)."""
    nl = modify(nl)
    m, s0 = nl.mass, nl.first_zero
    g_mod, G_mod = nl.g, nl.primitive
    _, plus_primitive = nl.plus_pair
    P_s0 = float(plus_primitive(s0)) if np.isfinite(s0) else np.inf

    def g_plus(s):
        s = np.asarray(s, dtype=float)
        out = np.where(s >= 0,
                       np.maximum(np.asarray(g_mod(s), dtype=float) + m * s, 0.0),
                       0.0)
        return out if out.ndim else float(out)

    def G_plus(s):
        s = np.asarray(s, dtype=float)
        inside = np.asarray(plus_primitive(np.clip(s, 0.0, s0)), dtype=float)
        if np.isfinite(s0):
            above = P_s0 + 0.5 * m * (np.maximum(s, s0) ** 2 - s0**2)
            out = np.where(s <= s0, inside, above)
        else:
            out = inside
        out = np.where(s < 0, 0.0, out)
        return out if out.ndim else float(out)

    def g_minus(s):
        out = np.asarray(g_plus(s), dtype=float) - np.asarray(g_mod(s), dtype=float)
        return out if out.ndim else float(out)

    def G_minus(s):
        out = np.asarray(G_plus(s), dtype=float) - np.asarray(G_mod(s), dtype=float)
        return out if out.ndim else float(out)

    return SplitNonlinearity(base=nl, g_plus=g_plus, G_plus=G_plus,
                             g_minus=g_minus, G_minus=G_minus)


def epsilon_bound_certificate(sp: SplitNonlinearity, eps: float,
                              s_hi: float = SCAN_HI) -> float:
    """Smallest scan constant C with g_plus <= C s^5 + eps g_minus on s > 0.

    Also asserts the integrated form with C/6 on the scan.  Raises
    InadmissibleNonlinearity when the defining ratio fails to decay
    (critical or supercritical growth).
    """
    if not 0.0 < eps < 1.0:
        raise NonlinearityError("eps must lie in (0, 1)")
    s = np.geomspace(SCAN_LO, s_hi, SCAN_POINTS)
    gp = np.asarray(sp.g_plus(s), dtype=float)

    ratio5 = gp / s**5
    peak = ratio5.max()
    if peak > 0:
        tail_mask = s >= s_hi / 10.0
        tail, st = ratio5[tail_mask], s[tail_mask]
        good = tail > 1e-300
        if np.any(good):
            slope = np.polyfit(np.log(st[good]), np.log(tail[good]), 1)[0]
            if slope > -1e-3 and tail.max() > 1e-6 * peak:
                raise InadmissibleNonlinearity(
                    "g_plus(s)/s^5 stays bounded away from zero; "
                    "no finite certificate constant exists")

    c_eps = float(np.maximum((gp - eps * np.asarray(sp.g_minus(s))) / s**5, 0.0).max())

    lhs = np.asarray(sp.G_plus(s), dtype=float)
    rhs = c_eps / 6.0 * s**6 + eps * np.asarray(sp.G_minus(s), dtype=float)
    margin = 1e-12 * np.maximum(1.0, np.abs(rhs))
    if np.any(lhs > rhs + margin):
        worst = float(np.max(lhs - rhs))
        raise NonlinearityError(
            f"integrated growth bound violated by {worst:.3g}; "
            "split construction is inconsistent")
    return c_eps
