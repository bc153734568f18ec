"""Reference schemes used for comparison.

* the one-speed relaxation solver (``a = b``), i.e. the classical speeds
  without the low-Mach scaling;
* a non-well-balanced Rusanov scheme with minmod reconstruction and a
  centered gravity source.
"""

import numpy as np

from .eos import conserved_to_primitive_arrays
from .reconstruction import plain_slope
from .riemann import euler_flux, solve_faces


def one_speed_face(rhoL, unL, utL, pL, rhoR, unR, utR, pR, rbar, dZ, M, gamma, beta=1.1, check=True):
    return solve_faces(rhoL, unL, utL, pL, rhoR, unR, utR, pR, rbar, dZ, M, gamma, beta, 1.0, check)


def _line_prims(rho, mn, mt, E, M, gamma):
    un = mn / rho
    ut = mt / rho
    p = (gamma - 1.0) * (E - 0.5 * M * M * rho * (un * un + ut * ut))
    return un, ut, p


def rusanov_max_speed(rho, mn, mt, E, M, gamma, g):
    rho, mn, mt, E = (np.asarray(a) for a in (rho, mn, mt, E))
    n = rho.shape[1] - 2 * g
    s = slice(g, g + n)
    un, _, p = _line_prims(rho[:, s], mn[:, s], mt[:, s], E[:, s], M, gamma)
    return float(np.max(np.abs(un) + np.sqrt(gamma * p / rho[:, s]) / M))


def rusanov_sweep(rho, mn, mt, E, phi, R0, R1, R2, R3, inv_dx, M, gamma, g):
    rho, mn, mt, E, phi = (np.asarray(a) for a in (rho, mn, mt, E, phi))
    n = rho.shape[1] - 2 * g
    sub = slice(g - 2, g + n + 2)
    w = [rho[:, sub], *_line_prims(rho[:, sub], mn[:, sub], mt[:, sub], E[:, sub], M, gamma)]
    plus, minus = [], []
    for q in w:
        d = plain_slope(q)
        qc = q[:, 1:-1]
        plus.append((qc + d)[:, :-1])
        minus.append((qc - d)[:, 1:])
    if np.any(plus[0] <= 0) or np.any(minus[0] <= 0) or np.any(plus[3] <= 0) or np.any(minus[3] <= 0):
        from .riemann import PositivityError
        raise PositivityError("Rusanov reconstruction left the phase space")

    def cons(r, un, ut, p):
        return np.stack([r, r * un, r * ut, p / (gamma - 1.0) + 0.5 * M * M * r * (un * un + ut * ut)])

    FL, FR = euler_flux(*plus, M, gamma), euler_flux(*minus, M, gamma)
    lam = np.maximum(np.abs(plus[1]) + np.sqrt(gamma * plus[3] / plus[0]) / M,
                     np.abs(minus[1]) + np.sqrt(gamma * minus[3] / minus[0]) / M)
    F = 0.5 * (FL + FR) - 0.5 * lam * (cons(*minus) - cons(*plus))

    s = slice(g, g + n)
    dphi = (phi[:, g + 1:g + n + 1] - phi[:, g - 1:g + n - 1]) * (0.5 * inv_dx)
    r_i = rho[:, s]
    src = (0.0, -r_i * dphi / (M * M), 0.0, -mn[:, s] * dphi)
    for k, Rk in enumerate((R0, R1, R2, R3)):
        Rk[...] += -(F[k][:, 1:] - F[k][:, :-1]) * inv_dx + src[k]


def rusanov_residual(grid, fields, cfg, U):
    from .grid import _sweep_views

    R = np.zeros((4, grid.nx, grid.ny))
    for d, h in (("x", grid.dx), ("y", grid.dy))[: 2 if grid.two_d else 1]:
        v = _sweep_views(grid, U, fields, d)
        Rv = (R[0].T, R[1].T, R[2].T, R[3].T) if d == "x" else (R[0], R[2], R[1], R[3])
        rusanov_sweep(*v[:5], *Rv, 1.0 / h, cfg.M, cfg.gamma, grid.ghost)
    return R


def rusanov_nwb_step(grid, fields, dt, cfg):
    """One forward-Euler step of the Rusanov baseline; ghosts must be filled."""
    out = fields.copy()
    ix, iy = grid.interior
    out.U[:, ix, iy] += dt * rusanov_residual(grid, fields, cfg, fields.U)
    out.t = fields.t + dt
    conserved_to_primitive_arrays(out.U, cfg.gamma, cfg.M)
    return out
