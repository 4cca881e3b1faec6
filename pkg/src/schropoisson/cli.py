"""Batch front end: ``schropoisson solve | sweep | verify``.

Configuration is a flat INI file with one section per concern; results are
flat CSV tables and a structured certificate (text and JSON).  Identical
config and seed give bit-identical outputs.  Exit codes: 0 success,
1 solver failure or failed certificate, 2 usage or configuration error.

Environment overrides (these two only): ``SCHROPOISSON_OUT`` for the
output directory and ``SCHROPOISSON_THREADS`` for the sweep worker count.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .grid import GridError, RadialGrid
from .mountainpass import PathError, SolverFailure, certify, continuation_run
from .functional import TruncatedFunctional, TruncationConfig
from .nonlinearity import Nonlinearity, NonlinearityError, split
from .verify import run_suite

FLOAT_FMT = "{:.17e}"  # exact float round-trip, reproducible bytes


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    family: str = "power"
    p: float = 3.0
    table_s: tuple = ()
    table_g: tuple = ()
    q: float = 0.1
    level: float | str = "auto"
    depth: int = 8
    max_iter: int = 200
    r_max: float = 30.0
    n: int = 4500
    points: int = 25
    tol_grad: float = 1e-6
    tol_poho: float = 1e-3
    tol_pde: float = 1e-4
    tol_identity: float = 1e-6
    out_dir: str = "out"
    seed: int = 0

    def validate(self):
        if self.q < 0:
            raise ConfigError("coupling q must be nonnegative")
        if self.level != "auto" and (not isinstance(self.level, float) or self.level <= 0):
            raise ConfigError("truncation level must be positive or 'auto'")
        if self.points < 8:
            raise ConfigError("path needs at least 8 points")
        for name in ("tol_grad", "tol_poho", "tol_pde", "tol_identity"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.n < 8 or self.r_max <= 0:
            raise ConfigError("grid requires n >= 8 and r_max > 0")
        if self.family not in ("power", "table"):
            raise ConfigError(f"unknown nonlinearity family '{self.family}'")
        return self


def _parse_table(text: str):
    try:
        pairs = [item.split(":") for item in text.split(",") if item.strip()]
        s = tuple(float(a) for a, _ in pairs)
        g = tuple(float(b) for _, b in pairs)
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"malformed nonlinearity table: {exc}")
    return s, g


def _read_table_file(path: str):
    s, g = [], []
    try:
        with open(path) as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    s.append(float(row[0]))
                    g.append(float(row[1]))
                except ValueError:
                    if not s:  # tolerate a single header row
                        continue
                    raise
    except (OSError, ValueError, IndexError) as exc:
        raise ConfigError(f"cannot read nonlinearity table {path}: {exc}")
    return tuple(s), tuple(g)


def load_config(path: str) -> SolverConfig:
    parser = configparser.ConfigParser()
    loaded = parser.read(path)
    if not loaded:
        raise ConfigError(f"config file not found: {path}")
    cfg = SolverConfig()
    try:
        if parser.has_section("nonlinearity"):
            sec = parser["nonlinearity"]
            family = sec.get("family", cfg.family).strip()
            cfg = replace(cfg, family=family)
            if family == "power":
                cfg = replace(cfg, p=sec.getfloat("p", cfg.p))
            elif family == "table":
                if "table" in sec:
                    s, g = _parse_table(sec["table"])
                elif "table_file" in sec:
                    s, g = _read_table_file(sec["table_file"])
                else:
                    raise ConfigError("family 'table' needs 'table' or 'table_file'")
                cfg = replace(cfg, table_s=s, table_g=g)
        if parser.has_section("solver"):
            sec = parser["solver"]
            level = sec.get("T", sec.get("level", "auto")).strip()
            cfg = replace(
                cfg,
                q=sec.getfloat("q", cfg.q),
                level="auto" if level == "auto" else float(level),
                depth=sec.getint("depth", cfg.depth),
                max_iter=sec.getint("max_iter", cfg.max_iter),
            )
        if parser.has_section("grid"):
            sec = parser["grid"]
            cfg = replace(cfg, r_max=sec.getfloat("r_max", cfg.r_max),
                          n=sec.getint("n", cfg.n))
        if parser.has_section("path"):
            cfg = replace(cfg, points=parser["path"].getint("points", cfg.points))
        if parser.has_section("tolerances"):
            sec = parser["tolerances"]
            cfg = replace(
                cfg,
                tol_grad=sec.getfloat("grad", cfg.tol_grad),
                tol_poho=sec.getfloat("pohozaev", cfg.tol_poho),
                tol_pde=sec.getfloat("pde", cfg.tol_pde),
                tol_identity=sec.getfloat("identity", cfg.tol_identity),
            )
        if parser.has_section("output"):
            cfg = replace(cfg, out_dir=parser["output"].get("dir", cfg.out_dir))
        if parser.has_section("random"):
            cfg = replace(cfg, seed=parser["random"].getint("seed", cfg.seed))
    except (ValueError, configparser.Error) as exc:
        raise ConfigError(f"bad config value: {exc}")
    return cfg.validate()


def build_nonlinearity(cfg: SolverConfig) -> Nonlinearity:
    if cfg.family == "power":
        return Nonlinearity.power(cfg.p)
    try:
        return Nonlinearity.from_table(np.asarray(cfg.table_s), np.asarray(cfg.table_g))
    except NonlinearityError as exc:
        raise ConfigError(str(exc))


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([FLOAT_FMT.format(x) if isinstance(x, float) else x
                             for x in row])


def _solve_once(cfg: SolverConfig):
    """One full run; returns (result, certificate)."""
    nl = build_nonlinearity(cfg)
    grid = RadialGrid.uniform(cfg.r_max, cfg.n)
    result = continuation_run(
        nl, q=cfg.q, grid=grid, level=cfg.level, depth=cfg.depth,
        path_points=cfg.points, tol_grad=cfg.tol_grad, max_iter=cfg.max_iter)
    functional = TruncatedFunctional(
        grid, split(nl), cfg.q, TruncationConfig(level=result.trunc_level))
    cert = certify(result, functional, tol_grad=cfg.tol_grad,
                   tol_poho=cfg.tol_poho, tol_pde=cfg.tol_pde,
                   tol_identity=cfg.tol_identity)
    return result, cert


def _result_row(value_name, value, result, cert):
    return [
        value_name, float(value),
        int(result is not None and any(h["converged"] for h in result.history)),
        int(cert.passed if cert is not None else 0),
        float(result.energy_q) if result else float("nan"),
        float(result.alpha_norm) if result else float("nan"),
        float(result.grad_residual) if result else float("nan"),
        float(result.pohozaev_residual) if result else float("nan"),
    ]


def cmd_solve(cfg: SolverConfig, out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        result, cert = _solve_once(cfg)
    except SolverFailure as exc:
        _write_csv(out_dir / "history.csv",
                   ["lambda", "c_lambda", "grad_norm", "converged", "sweeps"],
                   [[h["lambda"], h["c_lambda"], h["grad_norm"],
                     int(h["converged"]), h["sweeps"]] for h in exc.history])
        print(f"solver failed: {exc}", file=sys.stderr)
        return 1

    phi = result.phi.phi.values if result.phi is not None else np.zeros(result.u.grid.n)
    _write_csv(out_dir / "solution.csv", ["r", "u", "phi"],
               [[float(r), float(u), float(p)]
                for r, u, p in zip(result.u.grid.r, result.u.values, phi)])
    _write_csv(out_dir / "history.csv",
               ["lambda", "c_lambda", "grad_norm", "converged", "sweeps"],
               [[h["lambda"], h["c_lambda"], h["grad_norm"],
                 int(h["converged"]), h["sweeps"]] for h in result.history])

    summary = {
        "q": result.q,
        "truncation_level": result.trunc_level,
        "energy": result.energy_q,
        "lambda_final": result.lambda_final,
        "alpha_norm": result.alpha_norm,
        "truncation_active": result.truncation_active,
        "positivity": result.positivity,
        "level_estimates": result.level_estimates,
    }
    (out_dir / "certificate.json").write_text(
        json.dumps({"run": summary, "certificate": cert.to_dict()},
                   indent=2, default=float) + "\n")
    lines = [f"{k} = {v}" for k, v in summary.items() if k != "level_estimates"]
    (out_dir / "certificate.txt").write_text(
        "\n".join(lines) + "\n\n" + cert.to_text() + "\n")
    print(cert.to_text())
    return 0 if cert.passed else 1


def _sweep_config(cfg: SolverConfig, param: str, value: float) -> SolverConfig:
    if param == "q":
        return replace(cfg, q=value)
    if param == "T":
        return replace(cfg, level=float(value))
    if param == "p":
        if cfg.family != "power":
            raise ConfigError("p-sweep requires the power family")
        return replace(cfg, p=value)
    raise ConfigError(f"unknown sweep parameter '{param}'")


def cmd_sweep(cfg: SolverConfig, param: str, values, bisect: int,
              out_dir: Path, threads: int) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)

    def run_one(value):
        try:
            result, cert = _solve_once(_sweep_config(cfg, param, value))
            return _result_row(param, value, result, cert)
        except (SolverFailure, PathError) as exc:
            return [param, float(value), 0, 0,
                    float("nan"), float("nan"), float("nan"), float("nan")]

    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        rows = list(pool.map(run_one, values))

    bracket = None
    if param == "q":
        ok = [row for row in rows if row[3] == 1]
        bad = [row for row in rows if row[3] != 1]
        if ok and bad:
            lo = max(row[1] for row in ok if row[1] < min(b[1] for b in bad))
            hi = min(b[1] for b in bad)
            for _ in range(max(bisect, 0)):
                mid = 0.5 * (lo + hi)
                row = run_one(mid)
                rows.append(row)
                if row[3] == 1:
                    lo = mid
                else:
                    hi = mid
            bracket = (lo, hi)

    rows.sort(key=lambda row: row[1])
    _write_csv(out_dir / "sweep.csv",
               ["param", "value", "converged", "certificate",
                "energy", "alpha_norm", "grad_residual", "pohozaev_residual"],
               rows)
    for row in rows:
        print(" ".join(str(x) for x in row))
    if bracket is not None:
        print(f"first-failure bracket for q: ({bracket[0]:.6g}, {bracket[1]:.6g})")
        (out_dir / "sweep_bracket.json").write_text(
            json.dumps({"param": "q", "pass": bracket[0], "fail": bracket[1]}) + "\n")
    return 0


def cmd_verify(cfg: SolverConfig, out_dir: Path) -> int:
    grid = RadialGrid.uniform(cfg.r_max, cfg.n)
    checks = run_suite(grid=grid, seed=cfg.seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = [c.line() for c in checks]
    print("\n".join(lines))
    ok = all(c.passed for c in checks)
    print(f"verify: {'PASS' if ok else 'FAIL'} "
          f"({sum(c.passed for c in checks)}/{len(checks)})")
    (out_dir / "verify.txt").write_text("\n".join(lines) + "\n")
    if not ok:
        failing = ", ".join(c.name for c in checks if not c.passed)
        print(f"failing invariants: {failing}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="schropoisson",
        description="Variational solver for the radial Schrodinger-Poisson system")
    parser.add_argument("--config", default=None, help="INI config file")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--threads", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", help="run the continuation solver and certify")
    sweep_p = sub.add_parser("sweep", help="independent solves over parameter values")
    sweep_p.add_argument("--param", required=True, choices=("q", "T", "p"))
    sweep_p.add_argument("--values", required=True,
                         help="comma-separated parameter values")
    sweep_p.add_argument("--bisect", type=int, default=0,
                         help="bisection refinements of the q failure bracket")
    sub.add_parser("verify", help="run the invariant suite")

    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else SolverConfig().validate()
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        out_dir = Path(os.environ.get("SCHROPOISSON_OUT",
                                      args.out if args.out else cfg.out_dir))
        threads = args.threads if args.threads is not None else 1
        threads = int(os.environ.get("SCHROPOISSON_THREADS", threads))

        if args.command == "solve":
            return cmd_solve(cfg, out_dir)
        if args.command == "sweep":
            try:
                values = [float(v) for v in args.values.split(",") if v.strip()]
            except ValueError as exc:
                raise ConfigError(f"bad sweep values: {exc}")
            if not values:
                raise ConfigError("sweep needs at least one value")
            return cmd_sweep(cfg, args.param, values, args.bisect, out_dir, threads)
        if args.command == "verify":
            return cmd_verify(cfg, out_dir)
        raise ConfigError(f"unknown command {args.command}")
    except (ConfigError, NonlinearityError, GridError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
