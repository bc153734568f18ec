"""CSV snapshots, run reports and the flat ``key = value`` config format."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .eos import conserved_to_primitive_arrays

HEADER = ("x", "y", "rho", "u1", "u2", "p", "E", "e", "mach")


def _fmt(v):
    return "%.17g" % v


def write_snapshot(path, U, grid, gamma, M):
    """Write interior cells, y outer and x inner, 17 significant digits."""
    ix, iy = grid.interior
    Ui = U[:, ix, iy]
    rho, u1, u2, p = conserved_to_primitive_arrays(Ui, gamma, M)
    E = Ui[3]
    e = p / ((gamma - 1.0) * rho)
    mach = M * np.hypot(u1, u2) / np.sqrt(gamma * p / rho)
    X, Y = grid.centers(padded=False)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(HEADER)]
    for j in range(grid.ny):
        for i in range(grid.nx):
            row = (X[i, j], Y[i, j], rho[i, j], u1[i, j], u2[i, j], p[i, j], E[i, j], e[i, j], mach[i, j])
            lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_snapshot(path):
    """Return a dict of column arrays, in file order."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != HEADER:
            raise ValueError(f"unexpected snapshot header {header}")
        data = np.array([[float(v) for v in row] for row in reader], dtype=float)
    return {name: data[:, k] for k, name in enumerate(HEADER)}


def write_report(path, report: dict):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n")
    return path


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not serializable: {type(obj)}")


class ConfigError(ValueError):
    pass


def parse_config_text(text):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def read_config(path):
    return parse_config_text(Path(path).read_text())
