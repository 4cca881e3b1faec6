"""The reduction map u -> phi_u and its structural identities.

The electrostatic potential generated by the charge density q u^2 is the
unique decaying solution of -Lap(phi) = q u^2; the map is evaluated by a
radial Newton kernel in O(n).  Three identities certify it: the energy
identity ||phi||_D12^2 = q int phi u^2, the dilation covariance
phi_{u(./theta)} = theta^2 phi_u(./theta), and the closed form for the
unit-ball density.
"""

import os

import numpy as np

from schropoisson import RadialFunction, RadialGrid, check_scaling, solve_poisson
from schropoisson.verify import unit_ball_grid

grid = RadialGrid.uniform(30.0, 4500)
u = RadialFunction.from_callable(grid, lambda r: np.exp(-r**2))

for q in (0.1, 1.0):
    field = solve_poisson(u, q)
    print(f"q = {q}: ||phi||_D12^2 = {field.d12_norm_sq:.10f},  "
          f"q int phi u^2 = {q*field.interaction:.10f},  "
          f"identity deviation {field.identity_deviation:.2e}")

print(f"dilation covariance, theta=2   : max deviation {check_scaling(u, 2.0, 1.0):.2e}")
print(f"dilation covariance, theta=1/2 : max deviation {check_scaling(u, 0.5, 1.0):.2e}")

# closed form: constant density on the unit ball
bgrid = unit_ball_grid(3000)
ball = RadialFunction(bgrid, np.where(bgrid.r <= 1.0, 1.0, 0.0))
field = solve_poisson(ball, 1.0, corrected=False)
r = bgrid.r
exact = np.where(r <= 1.0, 0.5 - r**2 / 6.0, 1.0 / (3.0 * np.maximum(r, 1e-300)))
print(f"unit ball: phi(0) = {field.phi.values[0]:.9f} (exact 0.5),  "
      f"max |phi - formula| = {np.max(np.abs(field.phi.values - exact)):.2e}")

# far field: r * phi approaches q times the reduced total charge
gfield = solve_poisson(u, 1.0)
far = grid.r > 20.0
print(f"far field: max |r phi - q Q| = "
      f"{np.max(np.abs(grid.r[far]*gfield.phi.values[far] - gfield.far_constant)):.2e}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs("demos/output", exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    mask = bgrid.r <= 4.0
    ax.plot(bgrid.r[mask], field.phi.values[mask], label="kernel solve")
    ax.plot(bgrid.r[mask], exact[mask], "--", label="closed form")
    ax.set_xlabel("r")
    ax.set_ylabel("phi(r)")
    ax.set_title("potential of the unit-ball density")
    ax.legend()
    fig.tight_layout()
    fig.savefig("demos/output/poisson_unit_ball.png", dpi=120)
    print("wrote demos/output/poisson_unit_ball.png")
except ImportError:
    pass
