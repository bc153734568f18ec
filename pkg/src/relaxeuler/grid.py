"""Cartesian grid, ghost cells, CFL restriction and the spatial operator.

Storage layout: ``U`` has shape ``(4, nx + 2*gx, ny + 2*gy)`` holding
``(rho, rho*u1, rho*u2, E)``; the first array axis is x.  One-dimensional
runs use ``ny == 1`` and ``gy == 0``.  The potential and the optional
hydrostatic profile live on the same padded grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _backend
from .eos import conserved_to_primitive_arrays, primitive_to_conserved_arrays
from .riemann import PositivityError, RhoBarMode, low_mach_factor

PERIODIC = "periodic"
DIRICHLET = "dirichlet-exact"
ZERO_GRADIENT = "zero-gradient"
HYDROSTATIC = "hydrostatic-fill"
BOUNDARY_KINDS = (PERIODIC, DIRICHLET, ZERO_GRADIENT, HYDROSTATIC)
SCHEMES = ("two-speed", "one-speed", "rusanov-nwb")


@dataclass(frozen=True)
class Grid:
    nx: int
    ny: int = 1
    lo: tuple = (0.0, 0.0)
    hi: tuple = (1.0, 1.0)
    ghost: int = 2

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("cell counts must be positive")
        if self.ghost < 2:
            raise ValueError("the stencil needs two ghost layers")
        if not (self.hi[0] > self.lo[0] and self.hi[1] > self.lo[1]):
            raise ValueError("empty domain")

    @property
    def dx(self):
        return (self.hi[0] - self.lo[0]) / self.nx

    @property
    def dy(self):
        return (self.hi[1] - self.lo[1]) / self.ny

    @property
    def gx(self):
        return self.ghost

    @property
    def gy(self):
        return self.ghost if self.ny > 1 else 0

    @property
    def two_d(self):
        return self.ny > 1

    @property
    def shape(self):
        return (self.nx + 2 * self.gx, self.ny + 2 * self.gy)

    @property
    def interior(self):
        return (slice(self.gx, self.gx + self.nx), slice(self.gy, self.gy + self.ny))

    @property
    def cell_volume(self):
        return self.dx * self.dy

    @cached_property
    def padded_centers(self):
        return self.centers(padded=True)

    def centers(self, padded=True):
        """Cell-center coordinates as ``(X, Y)`` with ``indexing='ij'``."""
        gx, gy = (self.gx, self.gy) if padded else (0, 0)
        x = self.lo[0] + (np.arange(-gx, self.nx + gx) + 0.5) * self.dx
        y = self.lo[1] + (np.arange(-gy, self.ny + gy) + 0.5) * self.dy
        return np.meshgrid(x, y, indexing="ij")


@dataclass(frozen=True)
class BoundaryRule:
    xlo: str
    xhi: str
    ylo: str
    yhi: str

    def __post_init__(self):
        for side in (self.xlo, self.xhi, self.ylo, self.yhi):
            if side not in BOUNDARY_KINDS:
                raise ValueError(f"unknown boundary kind {side!r}")
        if (self.xlo == PERIODIC) != (self.xhi == PERIODIC) or (self.ylo == PERIODIC) != (self.yhi == PERIODIC):
            raise ValueError("periodic boundaries must be paired with the opposite side")

    @classmethod
    def uniform(cls, kind):
        return cls(kind, kind, kind, kind)


@dataclass
class FieldSet:
    U: np.ndarray
    phi: np.ndarray
    hs: tuple | None = None
    t: float = 0.0

    def copy(self):
        return FieldSet(self.U.copy(), self.phi, self.hs, self.t)

    def interior(self, grid):
        ix, iy = grid.interior
        return self.U[:, ix, iy]


@dataclass
class SchemeConfig:
    scheme: str = "two-speed"
    order: int = 2
    rho_bar: str = "isothermal"
    M: float = 1.0
    gamma: float = 1.4
    beta: float = 1.1
    cfl: float = 0.45
    mhat_k: float | None = None
    poly_gamma: float | None = None
    stepper: str | None = None
    backend: str | None = None
    positivity_retries: int = 0
    kernels: object = field(default=None, repr=False)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        RhoBarMode(self.rho_bar)
        if self.rho_bar == "polytropic" and self.poly_gamma is None:
            raise ValueError("polytropic rho_bar needs poly_gamma")
        if not self.M > 0:
            raise ValueError("Mach number must be positive")
        if not self.gamma > 1:
            raise ValueError("gamma must exceed 1")
        if not 0 < self.cfl <= 0.5:
            raise ValueError("cfl must lie in (0, 0.5]")
        if self.beta < 1:
            raise ValueError("beta must be at least 1")
        if self.positivity_retries < 0:
            raise ValueError("positivity_retries must be >= 0")
        if self.stepper is None:
            self.stepper = "ssprk3" if self.order == 2 else "euler"
        if self.kernels is None:
            self.kernels = _backend.load(self.backend)

    @property
    def mode_code(self):
        return RhoBarMode(self.rho_bar).code

    def theta(self, h):
        if self.scheme == "one-speed":
            return 1.0
        return low_mach_factor(self.M, self.mhat_k, h)


def make_fields(grid: Grid, problem, gamma, M):
    X, Y = grid.centers()
    rho, ux, uy, p = problem.init(X, Y)
    U = primitive_to_conserved_arrays(rho, ux, uy, p, gamma, M)
    phi = np.broadcast_to(np.asarray(problem.potential(X, Y), dtype=float), X.shape).copy()
    hs = None
    if problem.hydrostatic is not None:
        hr, hp = problem.hydrostatic(X, Y)
        hs = (np.broadcast_to(hr, X.shape).astype(float), np.broadcast_to(hp, X.shape).astype(float))
    fields = FieldSet(U, phi, hs)
    if grid.gx:
        _wrap_static(grid, fields, problem.boundary)
    return fields


def _wrap_static(grid, fields, rule):
    """Periodic copies of the potential and hydrostatic profile."""
    arrays = [fields.phi] + (list(fields.hs) if fields.hs is not None else [])
    for a in arrays:
        _periodic_axis(a[None], grid.gx, grid.nx, 1, rule.xlo == PERIODIC)
        if grid.two_d:
            _periodic_axis(a[None], grid.gy, grid.ny, 2, rule.ylo == PERIODIC)


def _periodic_axis(A, g, n, axis, active):
    if not active:
        return
    idx = [slice(None)] * A.ndim
    def sl(s):
        idx[axis] = s
        return tuple(idx)
    A[sl(slice(0, g))] = A[sl(slice(n, n + g))]
    A[sl(slice(n + g, n + 2 * g))] = A[sl(slice(g, 2 * g))]


def fill_ghosts(grid: Grid, fields: FieldSet, rule: BoundaryRule, t: float, problem, gamma, M, U=None):
    """Fill ghost layers of ``U`` (default ``fields.U``) in place."""
    U = fields.U if U is None else U
    g = grid.gx
    nx = grid.nx
    X, Y = grid.padded_centers
    sides = [("x", rule.xlo, rule.xhi, g, nx, 1)]
    if grid.two_d:
        sides.append(("y", rule.ylo, rule.yhi, grid.gy, grid.ny, 2))
    for _, klo, khi, gg, n, axis in sides:
        if klo == PERIODIC:
            _periodic_axis(U, gg, n, axis, True)
            continue
        for kind, ghost, inner in ((klo, slice(0, gg), gg), (khi, slice(n + gg, n + 2 * gg), n + gg - 1)):
            idx = [slice(None)] * 3
            idx[axis] = ghost
            idx = tuple(idx)
            if kind == ZERO_GRADIENT:
                src = [slice(None)] * 3
                src[axis] = slice(inner, inner + 1)
                U[idx] = U[tuple(src)]
            elif kind == DIRICHLET:
                if problem.exact is None:
                    raise ValueError(f"case {problem.name!r} has no exact solution for Dirichlet data")
                U[idx] = primitive_to_conserved_arrays(*problem.exact(X[idx[1:]], Y[idx[1:]], t), gamma, M)
            elif kind == HYDROSTATIC:
                if problem.equilibrium is None:
                    raise ValueError(f"case {problem.name!r} has no equilibrium profile")
                U[idx] = primitive_to_conserved_arrays(*problem.equilibrium(X[idx[1:]], Y[idx[1:]]), gamma, M)
    return U


def _sweep_views(grid, U, fields, direction):
    """Line views ``(rho, mn, mt, E, phi, hsr, hsp)`` for one direction."""
    if direction == "x":
        iy = slice(grid.gy, grid.gy + grid.ny)
        arr = [U[0][:, iy].T, U[1][:, iy].T, U[2][:, iy].T, U[3][:, iy].T, fields.phi[:, iy].T]
        hs = [h[:, iy].T for h in fields.hs] if fields.hs is not None else [arr[4], arr[4]]
    else:
        ix = slice(grid.gx, grid.gx + grid.nx)
        arr = [U[0][ix], U[2][ix], U[1][ix], U[3][ix], fields.phi[ix]]
        hs = [h[ix] for h in fields.hs] if fields.hs is not None else [arr[4], arr[4]]
    return arr + hs


def _require_profile(cfg, fields):
    if cfg.rho_bar == "apriori" and fields.hs is None:
        raise ValueError("a-priori rho_bar needs a hydrostatic profile")


def max_speeds(grid: Grid, fields: FieldSet, cfg: SchemeConfig, U=None):
    """Largest face wave speed per direction, from cell averages."""
    U = fields.U if U is None else U
    _require_profile(cfg, fields)
    k = cfg.kernels
    out = []
    for d, h in (("x", grid.dx), ("y", grid.dy))[: 2 if grid.two_d else 1]:
        views = _sweep_views(grid, U, fields, d)
        if cfg.scheme == "rusanov-nwb":
            from .baselines import rusanov_max_speed
            s = rusanov_max_speed(*views[:4], cfg.M, cfg.gamma, grid.ghost)
        else:
            try:
                s = k.max_wave_speed(*views, cfg.M, cfg.theta(h), cfg.gamma, cfg.beta, cfg.mode_code,
                                     cfg.poly_gamma or 0.0, grid.ghost)
            except FloatingPointError:
                # usually a cell outside the phase space; report it as such
                check_interior(grid, U, cfg.gamma, cfg.M)
                raise
        out.append(s)
    return out


def compute_dt(grid: Grid, fields: FieldSet, cfg: SchemeConfig, U=None):
    """Time step ``cfl / sum_d (S_d / h_d)``.

    Summing over directions makes the unsplit 2D update a convex combination
    of 1D updates, which carries over positivity and the entropy bound.
    In 1D this is the usual ``cfl * dx / S``.
    """
    speeds = max_speeds(grid, fields, cfg, U)
    rate = sum(s / h for s, h in zip(speeds, (grid.dx, grid.dy)))
    if not (np.isfinite(rate) and rate > 0):
        raise FloatingPointError(f"invalid wave-speed rate {rate!r}")
    return cfg.cfl / rate


def spatial_residual(grid: Grid, fields: FieldSet, cfg: SchemeConfig, U=None, stats=None):
    """``dU/dt`` on interior cells from the face fluxes and source halves.

    Raises :class:`PositivityError` if a cell, a reconstructed trace or an
    intermediate state leaves the phase space.  If ``stats`` is a dict, its
    ``min_rho``/``min_p`` entries are lowered to the interior minima of ``U``.
    """
    U = fields.U if U is None else U
    _require_profile(cfg, fields)
    if cfg.scheme == "rusanov-nwb":
        from .baselines import rusanov_residual
        R = rusanov_residual(grid, fields, cfg, U)
        if stats is not None:
            r, p = check_interior(grid, U, cfg.gamma, cfg.M)
            stats["min_rho"] = min(stats.get("min_rho", np.inf), r)
            stats["min_p"] = min(stats.get("min_p", np.inf), p)
        return R
    R = np.zeros((4, grid.nx, grid.ny))
    k = cfg.kernels
    common = (cfg.M, None, cfg.gamma, cfg.beta, cfg.mode_code, cfg.poly_gamma or 0.0, cfg.order, grid.ghost)
    for d, h in (("x", grid.dx), ("y", grid.dy))[: 2 if grid.two_d else 1]:
        views = _sweep_views(grid, U, fields, d)
        if d == "x":
            Rv = (R[0].T, R[1].T, R[2].T, R[3].T)
        else:
            Rv = (R[0], R[2], R[1], R[3])
        args = list(common)
        args[1] = cfg.theta(h)
        try:
            mr, mp = k.residual_sweep(*views, *Rv, 1.0 / h, *args, cfg.positivity_retries)
        except PositivityError as exc:
            exc.context["direction"] = d
            raise
        if stats is not None:
            stats["min_rho"] = min(stats.get("min_rho", np.inf), mr)
            stats["min_p"] = min(stats.get("min_p", np.inf), mp)
    return R


def check_interior(grid: Grid, U, gamma, M, t=None):
    ix, iy = grid.interior
    rho, _, _, p = conserved_to_primitive_arrays(U[:, ix, iy], gamma, M)
    bad = ~((rho > 0) & (p > 0))
    if np.any(bad):
        i, j = (int(v) for v in np.argwhere(bad)[0])
        ctx = {"cell": (i, j), "rho": float(rho[i, j]), "p": float(p[i, j]), "t": t}
        raise PositivityError(f"cell {(i, j)} left the phase space: rho={rho[i, j]!r}, p={p[i, j]!r}", ctx)
    return float(rho.min()), float(p.min())


def step_first_order(grid: Grid, fields: FieldSet, dt, cfg: SchemeConfig):
    """One forward-Euler step of the spatial operator; ghosts must be filled."""
    R = spatial_residual(grid, fields, cfg)
    out = fields.copy()
    ix, iy = grid.interior
    out.U[:, ix, iy] += dt * R
    out.t = fields.t + dt
    check_interior(grid, out.U, cfg.gamma, cfg.M, out.t)
    return out
