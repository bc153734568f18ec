"""Limited linear reconstruction in primitive variables.

Slopes are carried as half-cell increments ``delta = sigma * dx / 2``, i.e. the
excursion from the cell average to either face.  In that normalization the
positivity clamp ``|delta| <= w_i`` is exactly the statement that the face
values of density and pressure stay nonnegative, and the velocity factor
``kappa`` is dimensionless.

All routines act along the last axis of their inputs (one grid line per
row), so they serve 1D lines and stacks of lines alike.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .riemann import PositivityError, potential_jump, rho_bar


def minmod(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    same = a * b > 0.0
    return np.where(same, np.where(np.abs(a) < np.abs(b), a, b), 0.0)


def face_balance(rho, phi, mode, poly_gamma=None, hs=None):
    """``(rho_bar, dZ)`` at every face between consecutive cells.

    ``rho_bar`` is evaluated from the cell averages; ``hs`` is an optional
    ``(rho_hs, p_hs)`` pair for the a-priori mode.
    """
    rb = rho_bar(mode, rho[..., :-1], rho[..., 1:], poly_gamma)
    if hs is not None:
        hr, hp = hs
        dZ = potential_jump(mode, None, None, (hr[..., :-1], hp[..., :-1]), (hr[..., 1:], hp[..., 1:]))
    else:
        dZ = potential_jump(mode, phi[..., :-1], phi[..., 1:])
    return rb, dZ


def hydrostatic_pressure_slope(p, rb_dZ):
    """Half-cell pressure increments for cells ``1 .. n-2`` of the line.

    ``rb_dZ`` holds ``rho_bar * dZ`` on the ``n-1`` faces.  The neighbours are
    first shifted onto the local hydrostatic branch,
    ``q_{i-1} = p_{i-1} - rb dZ`` and ``q_{i+1} = p_{i+1} + rb dZ``,
    so that discrete equilibria produce a zero slope.
    """
    p = np.asarray(p, dtype=float)
    q_minus = p[..., :-2] - rb_dZ[..., :-1]
    q_plus = p[..., 2:] + rb_dZ[..., 1:]
    pc = p[..., 1:-1]
    return 0.5 * minmod(pc - q_minus, q_plus - pc)


def plain_slope(w):
    w = np.asarray(w, dtype=float)
    wc = w[..., 1:-1]
    return 0.5 * minmod(wc - w[..., :-2], w[..., 2:] - wc)


def _clamp_to(value, bound):
    return bound * np.clip(value / bound, -1.0, 1.0)


def velocity_factor(rho, un, ut, p, d_rho, d_un, d_ut, gamma):
    """``kappa = min(1, kappa_bar)`` scaling the velocity increments."""
    udot = un * d_un + ut * d_ut
    n2 = d_un * d_un + d_ut * d_ut
    root = np.sqrt(d_rho * d_rho * udot * udot + n2 * rho * p / (gamma - 1.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        kbar = (-d_rho * udot + root) / (rho * n2)
    kbar = np.where(n2 > 0.0, kbar, 1.0)
    return np.minimum(1.0, kbar)


@dataclass
class SlopeSet:
    """Half-cell increments of ``(rho, un, ut, p)`` for cells ``1 .. n-2``."""

    d_rho: np.ndarray
    d_un: np.ndarray
    d_ut: np.ndarray
    d_p: np.ndarray
    kappa: np.ndarray


def limited_slopes(rho, un, ut, p, rb_dZ, gamma, well_balanced=True):
    rho, un, ut, p = (np.asarray(x, dtype=float) for x in (rho, un, ut, p))
    rc, pc = rho[..., 1:-1], p[..., 1:-1]
    # the cell increment 2*d is clipped to [-w, w], so traces stay in [w/2, 3w/2]
    d_rho = _clamp_to(plain_slope(rho), 0.5 * rc)
    d_p = hydrostatic_pressure_slope(p, rb_dZ) if well_balanced else plain_slope(p)
    d_p = _clamp_to(d_p, 0.5 * pc)
    d_un = plain_slope(un)
    d_ut = plain_slope(ut)
    kappa = velocity_factor(rc, un[..., 1:-1], ut[..., 1:-1], pc, d_rho, d_un, d_ut, gamma)
    return SlopeSet(d_rho, kappa * d_un, kappa * d_ut, d_p, kappa)


def reconstruct_faces(rho, un, ut, p, slopes: SlopeSet | None):
    """Face pairs for the faces between cells ``1 .. n-2`` of the line.

    Returns ``(left, right)``, each a tuple ``(rho, un, ut, p)`` with one entry
    per face; ``left`` is the trace of the cell on the left of the face.
    Passing ``slopes=None`` gives the piecewise-constant reconstruction.
    """
    cells = [np.asarray(x, dtype=float)[..., 1:-1] for x in (rho, un, ut, p)]
    if slopes is None:
        incs = [0.0, 0.0, 0.0, 0.0]
    else:
        incs = [slopes.d_rho, slopes.d_un, slopes.d_ut, slopes.d_p]
    plus = [w + d for w, d in zip(cells, incs)]
    minus = [w - d for w, d in zip(cells, incs)]
    left = tuple(np.asarray(w)[..., :-1] for w in plus)
    right = tuple(np.asarray(w)[..., 1:] for w in minus)
    for side, vals in (("left", left), ("right", right)):
        bad = ~((vals[0] > 0.0) & (vals[3] > 0.0))
        if np.any(bad):
            idx = tuple(int(k) for k in np.argwhere(bad)[0])
            raise PositivityError(f"reconstructed {side} trace outside the phase space at face {idx}",
                                  {"face": idx, "side": side})
    return left, right
