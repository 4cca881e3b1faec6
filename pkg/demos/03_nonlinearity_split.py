"""Admissible nonlinear terms: hypotheses, modification, and the split.

The solver accepts any term with a negative linearization at 0,
subcritical growth, and a point of positive potential energy.  Before the
search the term is modified (zeroed above its first zero past the well,
mass-dominated on the negative axis) and decomposed as
g = g_plus - g_minus with g_plus >= 0 and g_minus >= mass * s.
"""

import numpy as np

from schropoisson import Nonlinearity, epsilon_bound_certificate, modify, split
from schropoisson.nonlinearity import InadmissibleNonlinearity, validate_hypotheses

nl = Nonlinearity.power(3)
report = validate_hypotheses(nl)
print(f"power p=3: mass = {nl.mass}, well = {nl.well:.4f}, "
      f"G(well) = {report['well_energy']:.4f}, first zero = {nl.first_zero}")

gm = modify(nl)
print(f"modified negative branch: g~(-2) = {gm.g(-2.0):.1f} "
      f"(mass-dominated, equals +2 for this family)")

sp = split(nl)
s = np.array([0.5, 1.0, 2.0])
print(f"split at s = {s}: g_plus = {np.asarray(sp.g_plus(s))}, "
      f"g_minus = {np.asarray(sp.g_minus(s))}")

for eps in (0.25, 0.5, 0.75):
    c = epsilon_bound_certificate(sp, eps)
    print(f"growth certificate C(eps={eps}) = {c:.6f}   "
          f"(g_plus <= C s^5 + eps g_minus on s > 0)")

# critical growth is rejected
try:
    epsilon_bound_certificate(split(Nonlinearity.power(5)), 0.5)
except InadmissibleNonlinearity as exc:
    print(f"power p=5 rejected: {exc}")

# the same machinery runs on tabulated terms
s_tab = np.linspace(0.0, 20.0, 8001)
tab = Nonlinearity.from_table(s_tab, -s_tab + s_tab**3)
print(f"tabulated cubic: estimated mass = {tab.mass:.6f}, well = {tab.well:.4f}")
