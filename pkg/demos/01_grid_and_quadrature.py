"""Radial grids, volume quadrature, and the H^1 machinery.

Every object downstream (potentials, energies, gradients) is built from
the same discrete calculus: trapezoid weights with the 4 pi r^2 measure,
a symmetric stiffness form for the gradient term, and the H^1 solve that
turns integral densities into gradient representatives.
"""

import numpy as np

from schropoisson import RadialFunction, RadialGrid

grid = RadialGrid.uniform(r_max=30.0, n=4500)
print(f"grid: {grid},  sum of weights = {grid.weights.sum():.15g} (= r_max)")

# closed-form checks of the volume quadrature
g3 = RadialGrid.uniform(3.0, 2048)
print(f"int 1 over the ball r<3   : {g3.volume_integral(np.ones(g3.n)):.10f}"
      f"   exact {36*np.pi:.10f}")

gauss = RadialFunction.from_callable(grid, lambda r: np.exp(-r**2))
exact = np.pi * np.sqrt(np.pi / 8.0)
print(f"int exp(-2 r^2) (volume)  : {grid.volume_integral(gauss.values**2):.12f}"
      f"   exact {exact:.12f}")

kin = 6.0 * np.pi * np.sqrt(np.pi / 32.0)
print(f"H1 norm of exp(-r^2)      : {grid.norm_H1(gauss.values):.8f}"
      f"   exact {np.sqrt(kin + exact):.8f}")

# dilation laws: u(r/theta) scales the gradient mass by theta, L2 by theta^3
theta = 2.0
dil = gauss.dilate(theta)
print(f"kinetic scaling  (theta={theta}): "
      f"{grid.kinetic_integral(dil.values)/grid.kinetic_integral(gauss.values):.6f}"
      f"   expect {theta:.1f}")
print(f"L2-mass scaling  (theta={theta}): "
      f"{grid.volume_integral(dil.values**2)/grid.volume_integral(gauss.values**2):.6f}"
      f"   expect {theta**3:.1f}")

# the Riesz map: w = (-Lap + 1)^{-1} v represents the density v in H^1
rng = np.random.default_rng(0)
v = np.exp(-(grid.r - 1.5) ** 2)
v[-1] = 0.0
w = grid.h1_riesz(v)
phi_test = np.exp(-(grid.r - 2.0) ** 2)
phi_test[-1] = 0.0
lhs = grid.h1_inner(w, phi_test)
rhs = grid.volume_integral(v * phi_test)
print(f"Riesz contract <w,phi>_H1 = int v phi : {lhs:.10f} vs {rhs:.10f}"
      f"   (diff {abs(lhs-rhs):.2e})")
