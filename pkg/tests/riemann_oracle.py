"""Star states from the Riemann invariants of the relaxation system.

Independent of the closed-form solver: the unknowns are the jumps of
``(tau, u, e, pi, v)`` across the outer waves, and the equations are the
invariants ``v -/+ a tau / M``, ``u -/+ b tau / M``, ``tau + pi/(ab)`` and the
energy invariant, plus continuity of ``v`` at the contact and the closure
``pi_R* - pi_L* = -rho_bar dZ``.  Writing the invariants as differences keeps
the system well conditioned down to ``M = 1e-3``.

The energy invariant follows from the jump conditions of the Lagrangian
form of the homogeneous relaxation system with kinetic energy
``M^2 u^2 / 2``:  across the wave with sign ``s`` (``-1`` left, ``+1`` right)
``e - pi^2/(2ab) + s b M tau (v - u) + b (a - b) tau^2 / 2`` is constant.
"""

import warnings

import numpy as np
from scipy.optimize import fsolve


def _side(d, tau, u, e, pi, v, a, b, M, s):
    dtau, du, de, dpi, dv = d
    w, dw = v - u, dv - du
    return np.array([
        dv + s * a * dtau / M,
        du + s * b * dtau / M,
        dtau + dpi / (a * b),
        de - dpi * (2 * pi + dpi) / (2 * a * b)
        + s * b * M * (tau * dw + w * dtau + dtau * dw)
        + 0.5 * b * (a - b) * dtau * (2 * tau + dtau),
    ])


def oracle_star_states(rhoL, uL, pL, rhoR, uR, pR, aL, bL, aR, bR, rbar, dZ, M, gamma):
    """Return ``dict`` of star values solved by a generic root finder."""
    tL, tR = 1.0 / rhoL, 1.0 / rhoR
    eL = pL / ((gamma - 1.0) * rhoL)
    eR = pR / ((gamma - 1.0) * rhoR)
    # scales for the unknowns: velocities ~ c/M, tau ~ tau, energies ~ e, pi ~ p
    cmax = max(np.sqrt(gamma * pL / rhoL), np.sqrt(gamma * pR / rhoR))
    vs = max(abs(uL), abs(uR), cmax / M, 1.0)
    scale = np.array([tL, vs, eL, pL, vs, tR, vs, eR, pR, vs])

    def F(z):
        x = z * scale
        dl, dr = x[:5], x[5:]
        fl = _side(dl, tL, uL, eL, pL, uL, aL, bL, M, -1.0)
        fr = _side(dr, tR, uR, eR, pR, uR, aR, bR, M, 1.0)
        tie = [(uL + dl[4]) - (uR + dr[4]), (pR + dr[3]) - (pL + dl[3]) + rbar * dZ]
        # normalize each equation by a natural size
        fl = fl / np.array([vs, vs, tL, eL])
        fr = fr / np.array([vs, vs, tR, eR])
        return np.concatenate([fl, fr, [tie[0] / vs, tie[1] / max(pL, pR)]])

    with warnings.catch_warnings():
        # fsolve warns when it stalls at round-off; the Newton polish below finishes
        warnings.simplefilter("ignore", RuntimeWarning)
        z = fsolve(F, np.zeros(10), xtol=1e-13, maxfev=2000)
    # two Newton polishing steps with a finite-difference Jacobian
    for _ in range(2):
        f0 = F(z)
        J = np.empty((10, 10))
        for k in range(10):
            h = 1e-7 * max(1.0, abs(z[k]))
            zp = z.copy()
            zp[k] += h
            J[:, k] = (F(zp) - f0) / h
        z = z - np.linalg.solve(J, f0)
    x = z * scale
    return {
        "rhoLs": 1.0 / (tL + x[0]),
        "uLs": uL + x[1],
        "eLs": eL + x[2],
        "piLs": pL + x[3],
        "vstar": uL + x[4],
        "rhoRs": 1.0 / (tR + x[5]),
        "uRs": uR + x[6],
        "eRs": eR + x[7],
        "piRs": pR + x[8],
        "residual": float(np.max(np.abs(F(z)))),
    }
