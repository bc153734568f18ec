"""Two-speed relaxation approximate Riemann solver at a single interface.

Every function is written with numpy broadcasting so that one call can
process a scalar face or a whole array of faces.  Face inputs are always at
relaxation equilibrium (``pi = p``, ``v = u``, ``Z = phi``).

Conventions
-----------
* ``un`` is the velocity normal to the face, ``ut`` the transverse one.
* ``dZ`` is the potential jump ``Z^R - Z^L`` seen by the solver.
* ``theta`` is the low-Mach scaling factor of the speeds, ``min(1, M)`` for
  the two-speed solver and ``1`` for the classical one-speed solver.
* ``sgn(0) = +1`` in both the flux selection and the source split.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class PositivityError(RuntimeError):
    """An intermediate or reconstructed state left the phase space."""

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = context or {}


class RhoBarMode(str, Enum):
    ARITHMETIC = "arithmetic"
    ISOTHERMAL = "isothermal"
    POLYTROPIC = "polytropic"
    APRIORI = "apriori"

    @property
    def code(self) -> int:
        return _MODE_CODES[self]


_MODE_CODES = {
    RhoBarMode.ARITHMETIC: 0,
    RhoBarMode.ISOTHERMAL: 1,
    RhoBarMode.POLYTROPIC: 2,
    RhoBarMode.APRIORI: 3,
}


def log_mean(a, b):
    """Logarithmic mean ``(a - b) / (ln a - ln b)``, robust for ``a ~ b``.

    Uses the Ismail-Roe series in ``f = (a-b)/(a+b)`` close to equality and a
    ``log1p`` quotient elsewhere; both branches are accurate to a few ulp.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    f = (a - b) / (a + b)
    u = f * f
    series = (a + b) / (2.0 * (1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0 + u / 9.0)))))
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = (a - b) / np.log1p((a - b) / b)
    return np.where(u < 1e-3, series, exact)


def polytropic_mean(a, b, poly_gamma):
    """``(G-1)/G * (b^G - a^G) / (b^(G-1) - a^(G-1))``, equal inputs give ``a``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    G = float(poly_gamma)
    t = np.log1p((b - a) / a)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (G - 1.0) / G * a * np.expm1(G * t) / np.expm1((G - 1.0) * t)
    return np.where(t == 0.0, a, val)


def rho_bar(mode, rho_left, rho_right, poly_gamma=None):
    mode = RhoBarMode(mode)
    if mode is RhoBarMode.ISOTHERMAL:
        return log_mean(rho_left, rho_right)
    if mode is RhoBarMode.POLYTROPIC:
        if poly_gamma is None:
            raise ValueError("polytropic rho_bar needs poly_gamma")
        return polytropic_mean(rho_left, rho_right, poly_gamma)
    return 0.5 * (np.asarray(rho_left, dtype=float) + np.asarray(rho_right, dtype=float))


def potential_jump(mode, phi_left, phi_right, hs_left=None, hs_right=None):
    """Jump ``Z^R - Z^L`` used by the solver.

    In a-priori mode ``hs_left``/``hs_right`` are ``(rho_hs, p_hs)`` pairs and
    the jump is the discrete hydrostatic surrogate
    ``-(p_hs^R - p_hs^L) / (0.5 (rho_hs^L + rho_hs^R))``.
    """
    if RhoBarMode(mode) is RhoBarMode.APRIORI:
        if hs_left is None or hs_right is None:
            raise ValueError("a-priori mode requires a hydrostatic profile")
        rl, pl = hs_left
        rr, pr = hs_right
        return -(np.asarray(pr) - np.asarray(pl)) / (0.5 * (np.asarray(rl) + np.asarray(rr)))
    return np.asarray(phi_right, dtype=float) - np.asarray(phi_left, dtype=float)


def low_mach_factor(M, mhat_k=None, dx=None):
    """Speed scaling ``theta``.

    Without ``mhat_k`` this is ``min(1, M)``.  With it, the numerical wave
    speed ``c/(M theta)`` is capped at ``c / max(M^2, k dx)``.
    """
    if mhat_k is None:
        return min(1.0, M)
    mhat = max(M * M, mhat_k * dx)
    return min(1.0, mhat / M)


@dataclass
class RelaxationSpeeds:
    aL: np.ndarray
    aR: np.ndarray
    bL: np.ndarray
    bR: np.ndarray
    aqL: np.ndarray
    aqR: np.ndarray
    XL: np.ndarray
    XR: np.ndarray


def relaxation_speeds(rhoL, unL, pL, rhoR, unR, pR, rbar, dZ, M, gamma, beta, theta):
    rhoL, unL, pL, rhoR, unR, pR = (np.asarray(x, dtype=float) for x in (rhoL, unL, pL, rhoR, unR, pR))
    cL = np.sqrt(gamma * pL / rhoL)
    cR = np.sqrt(gamma * pR / rhoR)
    aqL = theta * cL
    aqR = theta * cR
    den = rhoL * aqL + rhoR * aqR
    jump = pR - pL + rbar * dZ
    dv = np.maximum(M * (unL - unR), 0.0)
    XL = (dv + np.maximum(jump, 0.0) / den) / cL
    XR = (dv + np.maximum(-jump, 0.0) / den) / cR
    fL = cL * (1.0 + beta * XL)
    fR = cR * (1.0 + beta * XR)
    return RelaxationSpeeds(
        aL=rhoL * fL / theta,
        aR=rhoR * fR / theta,
        bL=rhoL * theta * fL,
        bR=rhoR * theta * fR,
        aqL=aqL,
        aqR=aqR,
        XL=XL,
        XR=XR,
    )


@dataclass
class FaceSolution:
    vstar: np.ndarray
    rhoLs: np.ndarray
    rhoRs: np.ndarray
    uLs: np.ndarray
    uRs: np.ndarray
    piLs: np.ndarray
    piRs: np.ndarray
    eLs: np.ndarray
    eRs: np.ndarray
    sigma_minus: np.ndarray
    sigma_plus: np.ndarray
    flux: np.ndarray = None
    src_plus: np.ndarray = None
    src_minus: np.ndarray = None
    speeds: RelaxationSpeeds = None


def intermediate_states(rhoL, unL, pL, rhoR, unR, pR, speeds: RelaxationSpeeds, rbar, dZ, M, gamma):
    """Closed-form star states of the relaxation Riemann problem.

    The kinetic part of the star energies, ``M^2 (v* - u*)^2 / (2 (a/b - 1))``,
    is evaluated as ``M^2 Q^2 b (a - b) / (2 a^2)`` with ``Q = v* - u``; the two
    agree for equilibrium data (``v = u``) and the second is regular at
    ``a = b``.  The ``M^2`` comes from the energy jump condition across the
    outer waves, where the kinetic energy is ``M^2 |u|^2 / 2``.
    """
    rhoL, unL, pL, rhoR, unR, pR = (np.asarray(x, dtype=float) for x in (rhoL, unL, pL, rhoR, unR, pR))
    aL, aR, bL, bR = speeds.aL, speeds.aR, speeds.bL, speeds.bR
    D = bL + bR
    R = pL - pR - rbar * dZ
    dv = unR - unL

    vstar = (M * bL * unL + M * bR * unR + R) / (M * D)
    tauLs = 1.0 / rhoL + (M * bR * dv + R) / (aL * D)
    tauRs = 1.0 / rhoR + (M * bL * dv - R) / (aR * D)
    uLs = unL + bL * (bR * M * dv + R) / (M * aL * D)
    uRs = unR + bR * (-bL * M * dv + R) / (M * aR * D)
    common = bR * pL + bL * pR - M * bL * bR * dv
    piLs = (common + bL * rbar * dZ) / D
    piRs = (common - bR * rbar * dZ) / D

    eL = pL / ((gamma - 1.0) * rhoL)
    eR = pR / ((gamma - 1.0) * rhoR)
    QL = (M * bR * dv + R) / (M * D)
    QR = (-M * bL * dv + R) / (M * D)
    eLs = eL + (piLs**2 - pL**2) / (2.0 * aL * bL) + M**2 * QL**2 * bL * (aL - bL) / (2.0 * aL**2)
    eRs = eR + (piRs**2 - pR**2) / (2.0 * aR * bR) + M**2 * QR**2 * bR * (aR - bR) / (2.0 * aR**2)

    with np.errstate(divide="ignore"):
        rhoLs = 1.0 / tauLs
        rhoRs = 1.0 / tauRs
    return FaceSolution(
        vstar=vstar,
        rhoLs=np.where(tauLs > 0, rhoLs, -np.inf),
        rhoRs=np.where(tauRs > 0, rhoRs, -np.inf),
        uLs=uLs,
        uRs=uRs,
        piLs=piLs,
        piRs=piRs,
        eLs=eLs,
        eRs=eRs,
        sigma_minus=unL - aL / (M * rhoL),
        sigma_plus=unR + aR / (M * rhoR),
        speeds=speeds,
    )


def euler_flux(rho, un, ut, p, M, gamma):
    """Exact normal flux of ``(rho, m_n, m_t, E)``."""
    E = p / (gamma - 1.0) + 0.5 * M**2 * rho * (un * un + ut * ut)
    return np.stack(np.broadcast_arrays(rho * un, rho * un * un + p / M**2, rho * un * ut, (E + p) * un))


def interface_flux(rhoL, unL, utL, pL, rhoR, unR, utR, pR, sol: FaceSolution, rbar, M, gamma):
    """Numerical flux and the two source halves ``S^+``, ``S^-``.

    Components are ordered ``(rho, m_n, m_t, E)``.  The source halves are the
    vectors multiplying ``dZ/2`` in the cell update; ``S^+`` goes to the cell
    on the right of the face, ``S^-`` to the cell on the left.
    """
    vs = sol.vstar
    ELs = sol.rhoLs * sol.eLs + 0.5 * M**2 * sol.rhoLs * (sol.uLs**2 + utL**2)
    ERs = sol.rhoRs * sol.eRs + 0.5 * M**2 * sol.rhoRs * (sol.uRs**2 + utR**2)
    FLs = np.stack(np.broadcast_arrays(
        sol.rhoLs * vs, sol.rhoLs * sol.uLs * vs + sol.piLs / M**2, sol.rhoLs * vs * utL, (ELs + sol.piLs) * vs))
    FRs = np.stack(np.broadcast_arrays(
        sol.rhoRs * vs, sol.rhoRs * sol.uRs * vs + sol.piRs / M**2, sol.rhoRs * vs * utR, (ERs + sol.piRs) * vs))
    FL = euler_flux(rhoL, unL, utL, pL, M, gamma)
    FR = euler_flux(rhoR, unR, utR, pR, M, gamma)

    flux = np.where(
        sol.sigma_minus > 0.0,
        FL,
        np.where(vs >= 0.0, FLs, np.where(sol.sigma_plus > 0.0, FRs, FR)),
    )

    sgn = np.where(vs >= 0.0, 1.0, -1.0)
    zero = np.zeros_like(vs * rbar)
    base = np.stack(np.broadcast_arrays(zero, rbar / M**2, zero, rbar * vs))
    src_plus = -(sgn + 1.0) * base
    src_minus = (sgn - 1.0) * base
    return flux, src_plus, src_minus


def _nonpositive(sol):
    return ~((sol.rhoLs > 0) & (sol.rhoRs > 0) & (sol.eLs > 0) & (sol.eRs > 0))


def solve_faces(rhoL, unL, utL, pL, rhoR, unR, utR, pR, rbar, dZ, M, gamma, beta, theta, check=True, retries=0):
    """Full face pipeline: speeds, star states, flux and sources.

    With ``retries > 0``, faces whose intermediate density or energy is not
    positive are solved again with ``beta`` doubled, up to ``retries`` times.
    The larger speeds are not fed back into the time step, so this is a
    last-resort fallback and is off by default.
    """
    speeds = relaxation_speeds(rhoL, unL, pL, rhoR, unR, pR, rbar, dZ, M, gamma, beta, theta)
    sol = intermediate_states(rhoL, unL, pL, rhoR, unR, pR, speeds, rbar, dZ, M, gamma)
    if retries > 0:
        face_beta = beta
        with np.errstate(invalid="ignore", divide="ignore"):
            for _ in range(retries):
                bad = _nonpositive(sol)
                if not np.any(bad):
                    break
                face_beta = np.where(bad, 2.0 * face_beta, face_beta)
                speeds = relaxation_speeds(rhoL, unL, pL, rhoR, unR, pR, rbar, dZ, M, gamma, face_beta, theta)
                sol = intermediate_states(rhoL, unL, pL, rhoR, unR, pR, speeds, rbar, dZ, M, gamma)
    if check:
        bad = _nonpositive(sol)
        if np.any(bad):
            idx = tuple(int(k) for k in np.argwhere(np.atleast_1d(bad))[0])
            pick = (lambda x: np.broadcast_to(np.asarray(x, dtype=float), np.shape(bad))[idx] if np.ndim(bad) else float(x))
            ctx = {
                "face": idx,
                "left": (pick(rhoL), pick(unL), pick(pL)),
                "right": (pick(rhoR), pick(unR), pick(pR)),
                "rho_star": (pick(sol.rhoLs), pick(sol.rhoRs)),
                "e_star": (pick(sol.eLs), pick(sol.eRs)),
            }
            raise PositivityError(f"nonpositive intermediate state at face {idx}: {ctx}", ctx)
    sol.flux, sol.src_plus, sol.src_minus = interface_flux(
        rhoL, unL, utL, pL, rhoR, unR, utR, pR, sol, rbar, M, gamma)
    return sol


def whitham_margin(rhoL, pL, rhoR, pR, sol: FaceSolution, gamma):
    """Relative slack of the subcharacteristic conditions, per face.

    For an ideal gas ``p dp/de - dp/dtau = gamma p rho``, so each side needs
    ``a b >= gamma p rho`` at its outer and its intermediate state.  Returns
    ``min (a b - gamma p rho) / (a b)`` over the four checks; negative means
    a condition is violated.  These involve the intermediate states, so they
    can only be checked after the solve; the result is a diagnostic.
    """
    sp = sol.speeds
    abL = sp.aL * sp.bL
    abR = sp.aR * sp.bR
    pLs = (gamma - 1.0) * sol.rhoLs * sol.eLs
    pRs = (gamma - 1.0) * sol.rhoRs * sol.eRs
    checks = (
        1.0 - gamma * pL * rhoL / abL,
        1.0 - gamma * pLs * sol.rhoLs / abL,
        1.0 - gamma * pRs * sol.rhoRs / abR,
        1.0 - gamma * pR * rhoR / abR,
    )
    return np.minimum.reduce(np.broadcast_arrays(*checks))
