"""Run diagnostics: error norms, convergence orders, kinetic energy,
discrete entropy residual and the odd-even (checkerboard) amplitude."""

from __future__ import annotations

import math

import numpy as np

from .eos import conserved_to_primitive_arrays
from .riemann import solve_faces

VARIABLES = ("rho", "rho_u1", "rho_u2", "E")


def l1_error(U, U_ref, grid):
    """Per-variable ``sum |q - q_ref| dx dy`` over interior cells."""
    U = np.asarray(U, dtype=float)
    U_ref = np.asarray(U_ref, dtype=float)
    if U.shape != U_ref.shape:
        raise ValueError(f"shape mismatch {U.shape} vs {U_ref.shape}")
    axes = tuple(range(1, U.ndim))
    return np.sum(np.abs(U - U_ref), axis=axes) * grid.cell_volume


def eoc(err_coarse, err_fine):
    """Observed order for a grid refinement by a factor of two."""
    err_coarse = np.asarray(err_coarse, dtype=float)
    err_fine = np.asarray(err_fine, dtype=float)
    return np.log2(err_coarse / err_fine)


def eoc_table(levels, errors):
    """Rows ``(n, errors, orders)``; orders only for consecutive doublings."""
    rows = []
    for k, (n, e) in enumerate(zip(levels, errors)):
        order = None
        if k > 0 and levels[k] == 2 * levels[k - 1]:
            order = eoc(errors[k - 1], e)
        rows.append((n, np.asarray(e), order))
    return rows


def kinetic_energy(U, grid):
    """``sum 1/2 rho |u|^2 dx dy`` (the ``M^2`` factor is left out)."""
    rho = U[0]
    return float(np.sum(0.5 * (U[1] ** 2 + U[2] ** 2) / rho) * grid.cell_volume)


def checkerboard_amplitude(q):
    """Largest Nyquist-mode amplitude over all grid lines of a 1D/2D field."""
    q = np.atleast_2d(np.asarray(q, dtype=float))
    amps = []
    for axis in range(2):
        n = q.shape[axis]
        if n < 2:
            continue
        sign = (-1.0) ** np.arange(n)
        dev = q - q.mean(axis=axis, keepdims=True)
        proj = np.tensordot(dev, sign, axes=([axis], [0])) / n
        amps.append(np.max(np.abs(proj)))
    return float(max(amps)) if amps else 0.0


def rms(q):
    q = np.asarray(q, dtype=float)
    return float(math.sqrt(np.mean(q * q)))


def normalized_correlation(a, b):
    """Zero-lag normalized cross-correlation (cosine similarity)."""
    a = np.ravel(np.asarray(a, dtype=float))
    b = np.ravel(np.asarray(b, dtype=float))
    den = np.linalg.norm(a) * np.linalg.norm(b)
    if den == 0:
        return 0.0
    return float(np.dot(a, b) / den)


def entropy_density(rho, p, gamma):
    """``eta = rho s`` with ``s = -(ln e - (gamma-1) ln rho)``."""
    e = p / ((gamma - 1.0) * rho)
    return -rho * (np.log(e) - (gamma - 1.0) * np.log(rho))


def _entropy_of(rho, e, gamma):
    return -rho * (np.log(e) - (gamma - 1.0) * np.log(rho))


def face_entropy_flux(rhoL, unL, pL, rhoR, unR, pR, sol, gamma):
    """Entropy flux through ``x/t = 0`` of the approximate Riemann fan.

    With ``eta`` constant in each of the four fan states, the flux is
    ``eta_L u_L`` plus ``s_k [eta]_k`` for every wave ``k`` moving left.
    Star states use the equilibrium entropy of ``(rho*, e*)``.
    """
    etaL = entropy_density(rhoL, pL, gamma)
    etaR = entropy_density(rhoR, pR, gamma)
    etaLs = _entropy_of(sol.rhoLs, sol.eLs, gamma)
    etaRs = _entropy_of(sol.rhoRs, sol.eRs, gamma)
    G = etaL * unL
    G = G + np.where(sol.sigma_minus < 0, sol.sigma_minus * (etaLs - etaL), 0.0)
    G = G + np.where(sol.vstar < 0, sol.vstar * (etaRs - etaLs), 0.0)
    G = G + np.where(sol.sigma_plus < 0, sol.sigma_plus * (etaR - etaRs), 0.0)
    return G


def _line_entropy_divergence(rho, mn, mt, E, phi, hsr, hsp, cfg, theta, g):
    from ._pykernels import _balance, _primitives

    rho, mn, mt, E, phi, hsr, hsp = (np.asarray(a) for a in (rho, mn, mt, E, phi, hsr, hsp))
    n = rho.shape[1] - 2 * g
    sub = slice(g - 1, g + n + 1)
    r = rho[:, sub]
    un, ut, p = _primitives(r, mn[:, sub], mt[:, sub], E[:, sub], cfg.M, cfg.gamma)
    rb, dZ = _balance(r, phi[:, sub], hsr[:, sub], hsp[:, sub], cfg.mode_code, cfg.poly_gamma or 0.0)
    L = (r[:, :-1], un[:, :-1], ut[:, :-1], p[:, :-1])
    R = (r[:, 1:], un[:, 1:], ut[:, 1:], p[:, 1:])
    sol = solve_faces(*L, *R, rb, dZ, cfg.M, cfg.gamma, cfg.beta, theta)
    G = face_entropy_flux(L[0], L[1], L[3], R[0], R[1], R[3], sol, cfg.gamma)
    return G[:, 1:] - G[:, :-1]


def entropy_residual(grid, fields, U_before, U_after, dt, cfg):
    """Cellwise ``eta^{n+1} - eta^n + dt sum_d (G_{i+1/2} - G_{i-1/2}) / h_d``.

    ``U_before`` must have its ghost layers filled for the step.  Returns the
    largest value over interior cells; a non-positive value means the
    discrete entropy inequality holds everywhere.
    """
    from .grid import _sweep_views

    ix, iy = grid.interior
    r0, _, _, p0 = conserved_to_primitive_arrays(U_before[:, ix, iy], cfg.gamma, cfg.M)
    r1, _, _, p1 = conserved_to_primitive_arrays(U_after[:, ix, iy], cfg.gamma, cfg.M)
    res = entropy_density(r1, p1, cfg.gamma) - entropy_density(r0, p0, cfg.gamma)
    for d, h in (("x", grid.dx), ("y", grid.dy))[: 2 if grid.two_d else 1]:
        v = _sweep_views(grid, U_before, fields, d)
        div = _line_entropy_divergence(*v, cfg, cfg.theta(h), grid.ghost)
        res = res + dt / h * (div.T if d == "x" else div)
    return float(np.max(res))
