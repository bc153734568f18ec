"""Vectorized numpy implementation of the per-line kernels.

This is the reference and fallback backend.  The compiled module ``_core``
exposes the same two functions with the same argument lists.

Line arrays have shape ``(lines, n + 2*g)`` and may be strided views; the
normal momentum is ``mn`` and the transverse momentum ``mt``.  Residual
arrays have shape ``(lines, n)`` and are accumulated in place; the sweep
returns the smallest interior density and pressure it has seen.
"""

import numpy as np

from .reconstruction import face_balance, limited_slopes, reconstruct_faces
from .riemann import PositivityError, relaxation_speeds, solve_faces

_MODES = ("arithmetic", "isothermal", "polytropic", "apriori")


def _primitives(rho, mn, mt, E, M, gamma):
    un = mn / rho
    ut = mt / rho
    p = (gamma - 1.0) * (E - 0.5 * M * M * rho * (un * un + ut * ut))
    return un, ut, p


def _balance(rho, phi, hsr, hsp, mode, poly_gamma):
    name = _MODES[mode]
    hs = (hsr, hsp) if name == "apriori" else None
    return face_balance(rho, phi, name, poly_gamma, hs)


def residual_sweep(rho, mn, mt, E, phi, hsr, hsp, R0, R1, R2, R3,
                   inv_dx, M, theta, gamma, beta, mode, poly_gamma, order, g, retries=0):
    rho, mn, mt, E, phi, hsr, hsp = (np.asarray(a) for a in (rho, mn, mt, E, phi, hsr, hsp))
    n = rho.shape[1] - 2 * g
    sub = slice(g - 2, g + n + 2)
    r, un, ut, p = rho[:, sub], *_primitives(rho[:, sub], mn[:, sub], mt[:, sub], E[:, sub], M, gamma)
    rb, dZ = _balance(rho[:, sub], phi[:, sub], hsr[:, sub], hsp[:, sub], mode, poly_gamma)
    slopes = limited_slopes(r, un, ut, p, rb * dZ, gamma) if order == 2 else None
    (lr, lun, lut, lp), (rr, run, rut, rp) = reconstruct_faces(r, un, ut, p, slopes)
    rbf, dZf = rb[:, 1:-1], dZ[:, 1:-1]
    try:
        sol = solve_faces(lr, lun, lut, lp, rr, run, rut, rp, rbf, dZf, M, gamma, beta, theta, retries=retries)
    except PositivityError as exc:
        raise PositivityError(str(exc), {**exc.context, "line": exc.context["face"][0]}) from None
    F, Sp, Sm = sol.flux, sol.src_plus, sol.src_minus
    for k, Rk in enumerate((R0, R1, R2, R3)):
        Rk[...] += (-(F[k][:, 1:] - F[k][:, :-1])
                    + 0.5 * (Sp[k][:, :-1] * dZf[:, :-1] + Sm[k][:, 1:] * dZf[:, 1:])) * inv_dx
    inner = slice(2, 2 + n)
    return float(np.min(r[:, inner])), float(np.min(p[:, inner]))


def max_wave_speed(rho, mn, mt, E, phi, hsr, hsp, M, theta, gamma, beta, mode, poly_gamma, g):
    """Largest ``|sigma^-|``, ``|sigma^+|`` over the faces touching the interior."""
    rho, mn, mt, E, phi, hsr, hsp = (np.asarray(a) for a in (rho, mn, mt, E, phi, hsr, hsp))
    n = rho.shape[1] - 2 * g
    sub = slice(g - 1, g + n + 1)
    r = rho[:, sub]
    un, _, p = _primitives(r, mn[:, sub], mt[:, sub], E[:, sub], M, gamma)
    rb, dZ = _balance(r, phi[:, sub], hsr[:, sub], hsp[:, sub], mode, poly_gamma)
    sp = relaxation_speeds(r[:, :-1], un[:, :-1], p[:, :-1], r[:, 1:], un[:, 1:], p[:, 1:],
                           rb, dZ, M, gamma, beta, theta)
    sm = un[:, :-1] - sp.aL / (M * r[:, :-1])
    spl = un[:, 1:] + sp.aR / (M * r[:, 1:])
    s = float(np.max(np.maximum(np.abs(sm), np.abs(spl))))
    if not np.isfinite(s):
        raise FloatingPointError("non-finite wave speed")
    return s
