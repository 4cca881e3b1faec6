"""Coupling sweep: where does the truncated regime stop certifying?

At a fixed truncation level the certificate passes for small couplings
and fails once the solution's alpha-norm crosses the level (the cutoff
stays active).  Sweeping q upward brackets that empirical threshold; the
existence theory only promises a positive threshold, not its value.
"""

import time

from schropoisson import (
    Nonlinearity,
    RadialGrid,
    TruncatedFunctional,
    TruncationConfig,
    certify,
    continuation_run,
    split,
)

grid = RadialGrid.uniform(30.0, 4500)
nl = Nonlinearity.power(3)
sp = split(nl)
level = 7.22  # about twice the uncoupled alpha-norm

rows = []
for q in (0.0, 0.1, 0.5, 2.0):
    t0 = time.time()
    try:
        # short schedule and iteration budget: aggressive couplings give up
        # quickly here; raise depth and max_iter for production runs
        res = continuation_run(nl, q=q, grid=grid, level=level, depth=4,
                               max_iter=60)
        F = TruncatedFunctional(grid, sp, q, TruncationConfig(level=level))
        ok = certify(res, F).passed
        rows.append((q, True, ok, res.energy_q, res.alpha_norm))
        print(f"q = {q:6.2f}: certificate {'PASS' if ok else 'FAIL'}  "
              f"energy {res.energy_q:10.4f}  alpha-norm {res.alpha_norm:.4f}  "
              f"[{time.time()-t0:.1f}s]")
    except Exception as exc:
        rows.append((q, False, False, float("nan"), float("nan")))
        print(f"q = {q:6.2f}: solver failed ({type(exc).__name__})  "
              f"[{time.time()-t0:.1f}s]")

passes = [q for q, conv, ok, *_ in rows if ok]
fails = [q for q, conv, ok, *_ in rows if not ok]
if passes and fails:
    print(f"\nempirical threshold bracket at level {level}: "
          f"({max(passes)}, {min(q for q in fails if q > max(passes))})")
    print("the CLI refines this bracket: "
          "schropoisson --config cfg.ini sweep --param q --values ... --bisect 4")
