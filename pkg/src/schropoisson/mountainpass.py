"""Mountain-pass search with continuation of the perturbation weight.

The search space is spanned by dilations of a plateau profile z with
positive total potential energy.  Paths t -> z(./(scale*t)) connect 0 to
an endpoint of negative energy; the perturbed functionals inherit the
mountain-pass geometry for every weight lam in [lambda_floor, 1].

For each weight on a geometric schedule approaching 1, the admissible
path is deformed downhill (preconditioned descent on its points, endpoint
pinned), and the path maximizer is refined to a critical point by a
Newton-Krylov solve on the H^1 gradient field.  The final weight-1
candidate is re-polished against the untruncated physical functional and
certified by independent residuals.

Non-convergence at an individual weight is tolerated and logged; the
schedule moves on (the underlying compactness theory only guarantees
bounded minimizing sequences for almost every weight).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import newton_krylov

try:
    from scipy.optimize import NoConvergence
except ImportError:  # older scipy layouts
    from scipy.optimize.nonlin import NoConvergence

from .functional import TruncatedFunctional, TruncationConfig, level_floor
from .grid import GridError, RadialFunction, RadialGrid
from .nonlinearity import (
    Nonlinearity,
    SplitNonlinearity,
    epsilon_bound_certificate,
    split as make_split,
    validate_hypotheses,
)
from .poisson import solve_poisson


class PathError(ValueError):
    """The candidate path is not admissible (endpoint energy >= 0)."""


class SolverFailure(RuntimeError):
    """No weight on the schedule produced a converged critical point."""

    def __init__(self, message, history):
        super().__init__(message)
        self.history = history


@dataclass(frozen=True)
class ReferenceProfile:
    """Plateau profile generating the admissible paths.

    z equals ``height`` on [0, plateau_radius], descends linearly to zero
    over one unit, and vanishes beyond.  ``endpoint_scale`` dilates it far
    enough that the endpoint energy is negative for every admissible
    weight; ``lambda_floor`` is the smallest usable weight.
    """

    z: RadialFunction
    z_fn: Callable
    plateau_radius: float
    height: float
    endpoint_scale: float
    lambda_floor: float
    int_G_plus: float
    int_G_minus: float


@dataclass
class ContinuationState:
    """Mutable bookkeeping of the weight continuation."""

    lam: float
    path: list
    c_lambda: float
    iterate: Optional[RadialFunction]
    grad_norm: float
    history: list = field(default_factory=list)


@dataclass(frozen=True)
class LevelEstimate:
    value: float    # path maximum: an upper bound for the minimax level
    index: int
    floor: float    # positive lower bound from the coercivity envelope


@dataclass(frozen=True)
class SolveResult:
    u: RadialFunction
    phi: object                 # PoissonField, or None when q = 0
    energy_q: float             # physical energy at weight 1, cutoff open
    grad_residual: float        # H^1 norm of the physical gradient
    pohozaev_residual: float
    alpha_norm: float
    truncation_active: bool
    positivity: float           # min of u over the interior nodes
    lambda_final: float
    history: list
    level_estimates: list
    q: float = 0.0
    trunc_level: float = np.inf


def _plateau(height: float, radius: float) -> Callable:
    def z_fn(r):
        r = np.asarray(r, dtype=float)
        out = height * np.clip(radius + 1.0 - r, 0.0, 1.0)
        return out if out.ndim else float(out)
    return z_fn


def build_reference_profile(F: TruncatedFunctional) -> ReferenceProfile:
    """Plateau radius, floor weight, and endpoint scale for the path family.

    The radius grows until the potential-energy balance of the plateau is
    positive; the floor weight is the midpoint between the balance ratio
    and 1; the endpoint scale is the first dilation making the endpoint
    energy negative, padded by 20 percent when the domain allows it.
    """
    sp, grid = F.split, F.grid
    if sp.well is None:
        raise PathError("nonlinearity admits no positive potential well")
    height = sp.well

    found_positive = False
    max_radius = 0.5 * grid.r_max - 1.0
    for cand in np.arange(2.0, max_radius + 1e-9, 1.0):
        z_fn = _plateau(height, cand)
        zv = z_fn(grid.r)
        int_gp = grid.volume_integral(np.asarray(sp.G_plus(zv)))
        int_gm = grid.volume_integral(np.asarray(sp.G_minus(zv)))
        if int_gp - int_gm <= 0.0:
            continue
        found_positive = True
        lam_floor = 0.5 * (int_gm / int_gp + 1.0)

        # a plateau is usable only if some dilation fits in the domain
        # with negative endpoint energy at the floor weight
        def endpoint_energy(theta):
            endpoint = RadialFunction.from_callable(
                grid, lambda r: z_fn(r / theta))
            return F.energy(endpoint, lam_floor).total

        cap = grid.r_max / (cand + 1.0)
        theta, theta_first = 1.0, None
        while theta <= cap:
            if endpoint_energy(theta) < 0.0:
                theta_first = theta
                break
            theta *= 1.25
        if theta_first is None and endpoint_energy(cap) < 0.0:
            theta_first = cap  # negativity opens just below the domain cap
        if theta_first is None:
            continue
        padded = min(1.2 * theta_first, cap)
        if padded > theta_first and endpoint_energy(padded) < 0.0:
            theta_first = padded

        return ReferenceProfile(
            z=RadialFunction.from_callable(grid, z_fn), z_fn=z_fn,
            plateau_radius=float(cand), height=height,
            endpoint_scale=theta_first, lambda_floor=lam_floor,
            int_G_plus=int_gp, int_G_minus=int_gm)

    if found_positive:
        raise PathError("no admissible endpoint fits in the domain; "
                        "increase r_max")
    raise PathError("no plateau with positive potential energy fits; "
                    "increase r_max or check the nonlinearity")


def build_path(profile: ReferenceProfile, grid: RadialGrid, points: int) -> list:
    """Dilation path 0 -> z(./scale) sampled at ``points`` parameters."""
    if points < 8:
        raise ValueError("need at least 8 path points")
    scale = profile.endpoint_scale
    if scale * (profile.plateau_radius + 1.0) > grid.r_max + 1e-9:
        raise PathError("endpoint support exceeds the domain; increase r_max")
    ts = np.linspace(0.0, 1.0, points)
    path = [RadialFunction.zero(grid)]
    for t in ts[1:]:
        path.append(RadialFunction.from_callable(
            grid, lambda r, t=t: profile.z_fn(r / (scale * t))))
    return path


def minimax_level(F: TruncatedFunctional, path: list, lam: float,
                  certificate_constant: Optional[float] = None) -> LevelEstimate:
    """Path maximum of the energy (upper bound for the minimax level).

    Attaches the positive floor from the coercivity envelope when the
    growth certificate constant is supplied.
    """
    energies = [F.energy(p, lam).total for p in path]
    if energies[-1] >= 0.0:
        raise PathError(f"endpoint energy {energies[-1]:.3g} is not negative "
                        f"at weight {lam:.6f}")
    idx = int(np.argmax(energies))
    floor = level_floor(certificate_constant) if certificate_constant else 0.0
    return LevelEstimate(value=float(energies[idx]), index=idx, floor=floor)


# -- descent and refinement ----------------------------------------------------


def _h1_dist(grid, a, b):
    return grid.norm_H1(a.values - b.values)


def _resolve_ridge(F, path, energies, lam, budget=8, min_seg=1e-3):
    """Bisect segments around the running maximum that hide the ridge.

    A discrete path can straddle the mountain ridge inside one long
    segment, leaving every node below the pass level; inserting the
    segment midpoint whenever it beats both ends repairs that.  Stops
    after ``budget`` insertions or when segments are resolved.
    """
    grid = F.grid
    used = 0
    while used < budget:
        i = int(np.argmax(energies))
        inserted = False
        for a in (i - 1, i):
            b = a + 1
            if a < 0 or b >= len(path):
                continue
            scale = 1.0 + max(grid.norm_H1(path[a].values),
                              grid.norm_H1(path[b].values))
            if _h1_dist(grid, path[a], path[b]) < min_seg * scale:
                continue
            mid = RadialFunction(grid, 0.5 * (path[a].values + path[b].values))
            e_mid = F.energy(mid, lam).total
            if e_mid > max(energies[a], energies[b]) + 1e-14:
                path.insert(b, mid)
                energies.insert(b, e_mid)
                used += 1
                inserted = True
                break
        if not inserted:
            break
    return used


def _ridge_rescue(F, path, energies, lam, samples=25):
    """Re-seed the ridge when the discrete maximum has collapsed.

    Any polyline from 0 to a negative-energy point crosses the mountain
    ridge, but all sampled nodes can end up below it when descent drags
    them off both sides.  Scan the ray from 0 to the first negative-energy
    point and insert the 1-d maximizer.
    """
    grid = F.grid
    j = next((k for k in range(1, len(path))
              if energies[k] < 0.0 and grid.norm_H1(path[k].values) > 1e-8), None)
    if j is None:
        return False
    norm_j = grid.norm_H1(path[j].values)
    t_lo = min(0.02, 1.0 / (1.0 + 10.0 * norm_j))
    ts = np.geomspace(t_lo, 1.0, samples)
    best_t, best_e = None, -np.inf
    for t in ts[:-1]:
        e = F.energy(RadialFunction(grid, t * path[j].values), lam).total
        if e > best_e:
            best_t, best_e = t, e
    if best_t is None or best_e <= max(energies):
        return False
    path.insert(j, RadialFunction(grid, best_t * path[j].values))
    energies.insert(j, best_e)
    return True


def _prune(path, energies, cap=240, protect=3):
    """Drop dead interior nodes: below the endpoint anchor, or overflow."""
    imax = int(np.argmax(energies))
    floor = energies[-1]
    for i in range(len(path) - 2, 0, -1):
        if abs(i - imax) <= protect:
            continue
        if energies[i] < floor:
            del path[i]
            del energies[i]
            if i < imax:
                imax -= 1
    while len(path) > cap:
        imax = int(np.argmax(energies))
        candidates = [i for i in range(1, len(path) - 1)
                      if abs(i - imax) > protect]
        if not candidates:
            break
        drop = min(candidates, key=lambda i: energies[i])
        del path[drop]
        del energies[drop]


def _maximizer_step(F, path, energies, lam, norm_cap=np.inf):
    """One capped, backtracked descent step on the path maximizer.

    Returns the gradient norm at the maximizer before the move.  Steps
    that would inflate the point past ``norm_cap`` in H^1 are not taken:
    nothing above the endpoint-anchor scale is ever useful.
    """
    grid = F.grid
    i = int(np.argmax(energies))
    if i == 0 or i == len(path) - 1:
        return None
    partials, _ = F.gradient_parts(path[i].values, lam)
    w = grid.h1_solve(partials)
    gnorm2 = float(max(w @ partials, 0.0))
    gnorm = float(np.sqrt(gnorm2))
    if gnorm == 0.0:
        return gnorm
    seg_prev = _h1_dist(grid, path[i - 1], path[i])
    seg_next = _h1_dist(grid, path[i], path[i + 1])
    scale = 1.0 + grid.norm_H1(path[i].values)
    # displacement window: mobile even on artificially short segments, but
    # never teleporting across the landscape (the maximizer must ooze)
    cap = float(np.clip(0.25 * (seg_prev + seg_next), 0.02 * scale, 0.25 * scale))
    step = min(1.0, cap / gnorm)
    accepted = None
    for k in range(12):
        cand = path[i].values - step * w
        e_cand = F.energy(RadialFunction(grid, cand), lam).total
        if e_cand <= energies[i] - 1e-4 * step * gnorm2:
            accepted = (cand, e_cand, step)
            break
        step *= 0.5
    if accepted is not None and k == 0:
        # first try took: expand inside the displacement window
        for _ in range(6):
            step *= 2.0
            if step * gnorm > cap:
                break
            cand = path[i].values - step * w
            if grid.norm_H1(cand) > norm_cap:
                break
            e_cand = F.energy(RadialFunction(grid, cand), lam).total
            if e_cand < accepted[1]:
                accepted = (cand, e_cand, step)
            else:
                break
    if accepted is not None:
        path[i] = RadialFunction(grid, accepted[0])
        energies[i] = accepted[1]
    return gnorm


def _newton_polish(F, values, lam, tol_h1, truncated=True, maxiter=40):
    """Drive the H^1 gradient field to zero with a Krylov-Newton solve."""
    grid = F.grid
    scale = max(1.0, float(np.max(np.abs(values))))

    def residual(x):
        vals = np.concatenate([x, [0.0]])
        if not np.all(np.isfinite(vals)) or np.max(np.abs(vals)) > 1e3 * scale:
            return 1e6 * x  # repel runaway Newton steps
        partials, _ = F.gradient_parts(vals, lam, truncated)
        return grid.h1_solve(partials)[:-1]

    x = values[:-1].copy()
    best_u, best_norm = None, np.inf
    for f_tol in (1e-7, 1e-9, 1e-11):
        try:
            x = newton_krylov(residual, x, f_tol=f_tol, maxiter=maxiter,
                              method="lgmres", verbose=False)
        except NoConvergence as exc:
            x = np.asarray(exc.args[0], dtype=float)
        except (ValueError, np.linalg.LinAlgError, OverflowError):
            break
        if not np.all(np.isfinite(x)):
            break
        u = RadialFunction(grid, np.concatenate([x, [0.0]]))
        gnorm = F.grad_norm(u, lam, truncated)
        if gnorm < best_norm:
            best_u, best_norm = u, gnorm
        if gnorm <= tol_h1:
            break
    if best_u is None:
        u = RadialFunction(grid, np.concatenate([values[:-1], [0.0]]))
        return u, F.grad_norm(u, lam, truncated)
    return best_u, best_norm


def _acceptable_candidate(F, u, lam, gnorm, tol_grad, level=np.inf):
    """Reject collapses to zero, runaways, and higher critical points.

    A mountain-pass candidate has positive energy and cannot exceed the
    path maximum it was refined from.
    """
    if not np.isfinite(gnorm) or gnorm > tol_grad:
        return False
    if F.grid.norm_H1(u.values) < 1e-2:
        return False
    e = F.energy(u, lam).total
    return 0.0 < e <= 1.5 * level


def deform_and_refine(F: TruncatedFunctional, state: ContinuationState,
                      tol_grad: float = 1e-6, max_iter: int = 200) -> ContinuationState:
    """Deform the path downhill and refine its maximizer to a critical point.

    Each sweep resolves the ridge around the running maximum (adaptive
    midpoint insertion), takes one capped preconditioned-descent step at
    the maximizer with the ends pinned, and re-maximizes.  Once the
    maximizer's gradient is small, or progress stalls, a Newton-Krylov
    polish refines it to a critical point; candidates that collapse to
    zero or leave the positive-level regime are rejected and deformation
    continues.

    The reported level estimate is the smallest resolved path maximum
    seen, hence nonincreasing across sweeps.  Non-convergence within
    ``max_iter`` sweeps is flagged, not raised (the schedule may skip
    such weights).
    """
    grid, lam = F.grid, state.lam
    path = list(state.path)
    energies = [F.energy(p, lam).total for p in path]
    if energies[-1] >= 0.0:
        raise PathError(f"path endpoint is not admissible at weight {lam:.6f}")

    _resolve_ridge(F, path, energies, lam, budget=24)
    imax = int(np.argmax(energies))
    gnorm = F.grad_norm(path[imax], lam)
    state.c_lambda = energies[imax]
    state.grad_norm = gnorm
    if _acceptable_candidate(F, path[imax], lam, gnorm, tol_grad):
        state.iterate = path[imax]
        state.path = path
        state.history.append({"lambda": lam, "c_lambda": state.c_lambda,
                              "grad_norm": gnorm, "converged": True, "sweeps": 0})
        return state

    # warm start: refine the previous weight's critical point first
    if state.iterate is not None:
        cand, cand_norm = _newton_polish(F, state.iterate.values, lam, tol_grad)
        if _acceptable_candidate(F, cand, lam, cand_norm, tol_grad):
            e_cand = F.energy(cand, lam).total
            if e_cand <= energies[imax]:
                path[imax] = cand
                energies[imax] = e_cand
            state.iterate = cand
            state.grad_norm = cand_norm
            state.c_lambda = min(state.c_lambda, max(energies))
            state.path = path
            state.history.append({"lambda": lam, "c_lambda": state.c_lambda,
                                  "grad_norm": cand_norm, "converged": True,
                                  "sweeps": 0})
            return state

    converged = False
    level = state.c_lambda
    rescue_floor = 1e-3 * max(level, 0.0)
    norm_cap = 3.0 * grid.norm_H1(path[-1].values) + 10.0
    gnorm_ref = max(gnorm, 1e-12)
    stall = 0
    sweep = 0
    for sweep in range(1, max_iter + 1):
        gnorm = _maximizer_step(F, path, energies, lam, norm_cap) or gnorm
        _resolve_ridge(F, path, energies, lam, budget=6)
        if max(energies) <= rescue_floor:
            _ridge_rescue(F, path, energies, lam)
            _resolve_ridge(F, path, energies, lam, budget=12)
        _prune(path, energies)
        new_level = min(level, max(energies))
        stall = stall + 1 if level - new_level < 1e-10 * max(1.0, abs(level)) else 0
        level = new_level

        trigger = (gnorm <= max(1e3 * tol_grad, 0.02 * gnorm_ref)
                   or stall >= 12 or sweep in (1, 10, 30, 80, 150) or sweep == max_iter)
        if trigger:
            imax = int(np.argmax(energies))
            cand, cand_norm = _newton_polish(F, path[imax].values, lam, tol_grad)
            if _acceptable_candidate(F, cand, lam, cand_norm, tol_grad, level):
                e_cand = F.energy(cand, lam).total
                path[imax] = cand
                energies[imax] = e_cand
                state.iterate = cand
                state.grad_norm = cand_norm
                level = min(level, max(energies))
                converged = True
                break
            gnorm_ref = min(gnorm_ref, max(gnorm, 1e-12)) * 0.5
            stall = 0

    state.path = path
    state.c_lambda = level
    if not converged:
        imax = int(np.argmax(energies))
        state.grad_norm = F.grad_norm(path[imax], lam)
    state.history.append({"lambda": lam, "c_lambda": state.c_lambda,
                          "grad_norm": state.grad_norm,
                          "converged": converged, "sweeps": sweep})
    return state


# -- the full pipeline -----------------------------------------------------------


def lambda_schedule(lam_floor: float, depth: int) -> np.ndarray:
    """Geometric approach 1 - (1 - floor) 2^-k, k = 0..depth."""
    k = np.arange(depth + 1)
    return 1.0 - (1.0 - lam_floor) * 0.5**k


def continuation_run(nl, q: float, grid: Optional[RadialGrid] = None,
                     level: float | str = "auto", depth: int = 8,
                     path_points: int = 25, tol_grad: float = 1e-6,
                     max_iter: int = 200) -> SolveResult:
    """End-to-end solve: profile, schedule, deformation, final certificate data.

    ``nl`` may be a raw Nonlinearity (validated, modified, and split here)
    or a prepared SplitNonlinearity.  ``level="auto"`` pre-solves the
    uncoupled problem by shooting and sets the truncation level to twice
    the resulting alpha-norm.  The default grid is finer than the generic
    grid default so the strong-form residual certificates close with
    margin.
    """
    if isinstance(nl, SplitNonlinearity):
        sp = nl
    else:
        validate_hypotheses(nl)
        sp = make_split(nl)
    grid = grid if grid is not None else RadialGrid.uniform(30.0, 4500)

    if level == "auto":
        from .shooting import shooting_ground_state
        base = shooting_ground_state(sp.base.g, sp.mass, sp.well)
        u0 = base.on_grid(grid)
        level = 2.0 * grid.norm_Ls(u0.values, 12.0 / 5.0)
    trunc = TruncationConfig(level=float(level))
    F = TruncatedFunctional(grid, sp, q, trunc)

    profile = build_reference_profile(F)
    cert_const = epsilon_bound_certificate(sp, 0.5)
    floor = level_floor(cert_const)

    path = build_path(profile, grid, path_points)
    state = ContinuationState(lam=profile.lambda_floor, path=path,
                              c_lambda=np.inf, iterate=None, grad_norm=np.inf)
    level_estimates = []
    last_u, last_lam = None, None
    cum_upper = np.inf
    for lam in lambda_schedule(profile.lambda_floor, depth):
        state.lam = lam
        est = minimax_level(F, state.path, lam, cert_const)
        state = deform_and_refine(F, state, tol_grad=tol_grad, max_iter=max_iter)
        # levels are nonincreasing in the weight, so earlier upper bounds
        # remain valid upper bounds here; report the cumulative minimum
        cum_upper = min(cum_upper, state.c_lambda)
        level_estimates.append({"lambda": lam, "upper": cum_upper,
                                "floor": floor, "initial": est.value})
        if state.history[-1]["converged"]:
            last_u, last_lam = state.iterate, lam

    if last_u is None:
        raise SolverFailure("no weight on the schedule converged", state.history)

    alpha = trunc.exponent
    alpha_norm = grid.norm_Ls(last_u.values, alpha)
    truncation_active = alpha_norm > trunc.level
    u_final, grad_res = last_u, F.grad_norm(last_u, 1.0, truncated=False)
    if not truncation_active:
        u_final, grad_res = _newton_polish(
            F, last_u.values, 1.0, min(tol_grad, 1e-8), truncated=False)
        if grad_res > tol_grad:  # keep the best of the two candidates
            alt = F.grad_norm(last_u, 1.0, truncated=False)
            if alt < grad_res:
                u_final, grad_res = last_u, alt
        alpha_norm = grid.norm_Ls(u_final.values, alpha)
        truncation_active = alpha_norm > trunc.level

    field = solve_poisson(u_final, q) if q > 0 else None
    breakdown = F.energy(u_final, 1.0, truncated=False)
    poho = F.pohozaev_residual(u_final, 1.0, truncated=False)
    positivity = float(np.min(u_final.values[:-1]))

    return SolveResult(
        u=u_final, phi=field, energy_q=breakdown.total,
        grad_residual=float(grad_res), pohozaev_residual=float(poho),
        alpha_norm=float(alpha_norm),
        truncation_active=bool(truncation_active),
        positivity=positivity, lambda_final=float(last_lam),
        history=state.history, level_estimates=level_estimates,
        q=float(q), trunc_level=float(trunc.level),
    )


# -- certification ----------------------------------------------------------------


@dataclass(frozen=True)
class CertificateEntry:
    name: str
    value: float
    limit: float
    kind: str      # "le": value <= limit passes; "ge": value >= limit passes
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class Certificate:
    entries: tuple
    passed: bool

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            op = "<=" if e.kind == "le" else ">="
            status = "PASS" if e.passed else "FAIL"
            note = f"  ({e.note})" if e.note else ""
            lines.append(f"{status}  {e.name:28s} {e.value: .6e} {op} {e.limit:.3e}{note}")
        lines.append(f"certificate: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "entries": [
                {"name": e.name, "value": e.value, "limit": e.limit,
                 "kind": e.kind, "passed": e.passed, "note": e.note}
                for e in self.entries
            ],
        }


def certify(result: SolveResult, F: TruncatedFunctional,
            tol_grad: float = 1e-6, tol_poho: float = 1e-3,
            tol_pde: float = 1e-4, tol_identity: float = 1e-6) -> Certificate:
    """Independent residual certificate for a solve result.

    Every check is recomputed here from the profile itself; failures carry
    actionable notes.  The zero function fails the nontriviality entry.
    """
    u = result.u
    entries = []

    def add(name, value, limit, kind, note=""):
        ok = value <= limit if kind == "le" else value >= limit
        entries.append(CertificateEntry(name, float(value), float(limit),
                                        kind, bool(ok), note))

    h1 = F.grid.norm_H1(u.values)
    add("nontrivial_h1_norm", h1, 1e-6, "ge",
        "trivial solution" if h1 < 1e-6 else "")

    add("gradient_residual_h1", F.grad_norm(u, 1.0, truncated=False),
        tol_grad, "le")
    add("pohozaev_residual", abs(F.pohozaev_residual(u, 1.0, truncated=False)),
        tol_poho, "le")

    res1, res2 = F.pde_residuals(u, result.phi, lam=1.0)
    add("pde_residual_field_eq", res1, tol_pde, "le")
    if result.phi is not None:
        add("pde_residual_poisson_eq", res2, tol_pde, "le")
        add("poisson_energy_identity", result.phi.identity_deviation,
            tol_identity, "le")

    add("positivity_min_u", result.positivity, 0.0, "ge",
        "" if result.positivity > 0 else "not positive on the interior")
    s0 = F.split.first_zero
    if np.isfinite(s0):
        add("upper_window_max_u", float(np.max(u.values)), s0, "le",
            "solution exits the (0, s0) window" if np.max(u.values) > s0 else "")

    ratio = F.cutoff_state(u.values)[0]
    add("cutoff_inactive_ratio", ratio, 1.0, "le",
        "truncation active: increase the truncation level or decrease q"
        if ratio > 1.0 else "")
    add("alpha_norm_within_level", result.alpha_norm, F.trunc.level, "le",
        "truncation active: increase the truncation level or decrease q"
        if result.alpha_norm > F.trunc.level else "")

    passed = all(e.passed for e in entries)
    return Certificate(entries=tuple(entries), passed=passed)
