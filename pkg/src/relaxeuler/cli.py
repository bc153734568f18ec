"""Command line entry point.

Exit status: 0 on success, 1 for invalid input, 2 when the solver aborts
because a state left the phase space.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import config as config_mod
from .cases import CASE_SUMMARY, CASES
from .diagnostics import VARIABLES, eoc_table
from .eos import DomainError
from .io import ConfigError, write_report, write_snapshot
from .riemann import PositivityError
from .solver import Simulation

EXIT_OK, EXIT_INVALID, EXIT_ABORT = 0, 1, 2


def _simulate(rc, out_dir=None, snapshots=True):
    sim = Simulation(rc.problem, rc.scheme, boundary=rc.boundary)
    out = Path(out_dir or rc.output_dir)
    cb = None
    if snapshots and rc.snapshot_every > 0:
        def cb(s):
            if s.steps % rc.snapshot_every == 0:
                write_snapshot(out / f"snapshot_{s.steps:07d}.csv", s.U, s.grid, s.cfg.gamma, s.cfg.M)
    report = sim.run(monitor_entropy=rc.entropy_monitor, callback=cb)
    return sim, report


def cmd_run(args):
    rc = config_mod.load(args.config)
    sim, report = _simulate(rc)
    out = Path(rc.output_dir)
    write_snapshot(out / "final.csv", sim.U, sim.grid, sim.cfg.gamma, sim.cfg.M)
    data = report.to_dict()
    data["config"] = rc.raw
    write_report(out / "report.json", data)
    print(f"case {report.case}  scheme {report.scheme}  order {report.order}  {report.nx}x{report.ny}")
    print(f"t = {report.t_final:.6g}  steps = {report.steps}  wall = {report.wall_time:.2f}s")
    if report.l1_errors:
        for k in VARIABLES:
            print(f"L1({k}) = {report.l1_errors[k]:.3e}")
    if report.kinetic_energy_ratio is not None:
        print(f"kinetic energy retained = {100 * report.kinetic_energy_ratio:.2f}%")
    print(f"min rho = {report.min_rho:.6g}  min p = {report.min_p:.6g}")
    if report.max_entropy_residual is not None:
        print(f"max entropy residual = {report.max_entropy_residual:.3e}")
    return EXIT_OK


def cmd_convergence(args):
    try:
        levels = [int(v) for v in args.levels.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--levels must be comma-separated integers, got {args.levels!r}") from None
    if len(levels) < 2:
        raise ConfigError("--levels needs at least two resolutions")
    errors = []
    for n in levels:
        rc = config_mod.load(args.config, n_override=n)
        if rc.problem.exact is None:
            raise ConfigError(f"case {rc.case!r} has no exact solution to measure errors against")
        _, report = _simulate(rc, snapshots=False)
        errors.append([report.l1_errors[k] for k in VARIABLES])
    rows = eoc_table(levels, errors)
    head = "N".rjust(6) + "".join(f"{'L1(' + k + ')':>14}{'EOC':>7}" for k in VARIABLES)
    print(head)
    table = []
    for n, err, order in rows:
        line = f"{n:6d}"
        for k in range(len(VARIABLES)):
            o = "" if order is None else f"{order[k]:.2f}"
            line += f"{err[k]:14.3e}{o:>7}"
        print(line)
        table.append({"n": n, "errors": dict(zip(VARIABLES, err.tolist())),
                      "eoc": None if order is None else dict(zip(VARIABLES, order.tolist()))})
    write_report(Path(rc.output_dir) / "convergence.json", {"case": rc.case, "levels": table})
    return EXIT_OK


def cmd_cases(args):
    for name in CASES:
        print(f"{name:24s}{CASE_SUMMARY[name]}")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="relaxeuler", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run one simulation from a config file")
    p.add_argument("config")
    p.set_defaults(func=cmd_run)
    p = sub.add_parser("convergence", help="grid refinement study with EOC table")
    p.add_argument("config")
    p.add_argument("--levels", default="32,64,128")
    p.set_defaults(func=cmd_convergence)
    p = sub.add_parser("cases", help="list built-in cases")
    p.set_defaults(func=cmd_cases)
    return ap


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (PositivityError, DomainError) as exc:
        print(f"solver aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


run_cli = main

if __name__ == "__main__":
    sys.exit(main())
