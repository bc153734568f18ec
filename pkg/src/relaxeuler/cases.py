"""Built-in test problems.

Every generator returns a :class:`Problem`.  Initial data, exact solutions
and equilibrium profiles are callables of cell-center coordinate arrays and
return primitive fields ``(rho, u1, u2, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .grid import DIRICHLET, HYDROSTATIC, PERIODIC, ZERO_GRADIENT, BoundaryRule


@dataclass
class Problem:
    name: str
    gamma: float
    M: float
    potential: Callable
    init: Callable
    boundary: BoundaryRule
    t_final: float
    nx: int
    ny: int
    rho_bar: str = "isothermal"
    poly_gamma: float | None = None
    exact: Callable | None = None
    equilibrium: Callable | None = None
    hydrostatic: Callable | None = None
    lo: tuple = (0.0, 0.0)
    hi: tuple = (1.0, 1.0)
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def manifest(self):
        return {
            "case": self.name,
            "gamma": self.gamma,
            "mach": self.M,
            "nx": self.nx,
            "ny": self.ny,
            "t_final": self.t_final,
            "rho_bar": self.rho_bar,
            "boundary": [self.boundary.xlo, self.boundary.xhi, self.boundary.ylo, self.boundary.yhi],
            "params": dict(self.params),
            "notes": list(self.notes),
        }


def _zeros(X):
    return np.zeros_like(np.asarray(X, dtype=float))


def hydrostatic_profiles(kind, phi, K=1.0, C=0.0, Gamma=None, rho0=1.0):
    """Density and pressure of an analytic hydrostatic family.

    ``isothermal``: ``rho = exp((C - phi)/K)``, ``p = K rho``.
    ``polytropic``: ``p = K rho^Gamma`` with enthalpy ``C - phi``, so
    ``rho = ((Gamma-1)/(Gamma K) (C - phi))^(1/(Gamma-1))``.
    ``incompressible``: ``rho = rho0``, ``p = C - rho0 phi``.
    """
    phi = np.asarray(phi, dtype=float)
    if kind == "isothermal":
        rho = np.exp((C - phi) / K)
        return rho, K * rho
    if kind == "polytropic":
        if Gamma is None or Gamma == 1.0:
            raise ValueError("polytropic profile needs Gamma != 1")
        base = (Gamma - 1.0) / (Gamma * K) * (C - phi)
        if np.any(base <= 0):
            raise ValueError("polytropic profile has no positive density for these constants")
        rho = base ** (1.0 / (Gamma - 1.0))
        return rho, K * rho**Gamma
    if kind == "incompressible":
        return np.full_like(phi, rho0), C - rho0 * phi
    raise ValueError(f"unknown hydrostatic family {kind!r}")


def _smooth_wave(u10, u20, p0, amp=0.2):
    def exact(X, Y, t):
        s = X + Y - (u10 + u20) * t
        rho = 1.0 + amp * np.sin(np.pi * s)
        p = p0 + (u10 + u20) * t - (X + Y) + amp * np.cos(np.pi * s) / np.pi
        return rho, u10 + _zeros(X), u20 + _zeros(X), p
    return exact


def case_accuracy(n=32, u10=20.0, u20=20.0, p0=4.5, gamma=5.0 / 3.0, t_final=0.01):
    exact = _smooth_wave(u10, u20, p0)
    return Problem(
        name="accuracy",
        gamma=gamma,
        M=1.0,
        potential=lambda X, Y: X + Y,
        init=lambda X, Y: exact(X, Y, 0.0),
        exact=exact,
        boundary=BoundaryRule.uniform(DIRICHLET),
        t_final=t_final,
        nx=n,
        ny=n,
        params={"u10": u10, "u20": u20, "p0": p0},
    )


def case_general_steady(rho_bar="isothermal", n=32, p0=4.5, gamma=5.0 / 3.0, t_final=1.0):
    exact = _smooth_wave(0.0, 0.0, p0)

    def steady(X, Y, t=0.0):
        return exact(X, Y, 0.0)

    def profile(X, Y):
        rho, _, _, p = exact(X, Y, 0.0)
        return rho, p

    return Problem(
        name="general-steady",
        gamma=gamma,
        M=1.0,
        potential=lambda X, Y: X + Y,
        init=lambda X, Y: steady(X, Y),
        exact=steady,
        equilibrium=lambda X, Y: steady(X, Y),
        hydrostatic=profile,
        boundary=BoundaryRule.uniform(DIRICHLET),
        t_final=t_final,
        nx=n,
        ny=n,
        rho_bar=rho_bar,
        params={"p0": p0},
        notes=["discrete hydrostatic profile for the a-priori mode is the initial data"],
    )


def _isothermal_atmosphere(rho0, p0, g):
    def state(X, Y, t=0.0):
        f = np.exp(-rho0 * g * (X + Y) / p0)
        return rho0 * f, _zeros(X), _zeros(X), p0 * f
    return state


def case_isothermal_atmosphere(n=64, rho0=1.21, p0=1.0, g=1.0, gamma=1.4, t_final=1.0):
    state = _isothermal_atmosphere(rho0, p0, g)
    return Problem(
        name="isothermal-atmosphere",
        gamma=gamma,
        M=1.0,
        potential=lambda X, Y: g * (X + Y),
        init=lambda X, Y: state(X, Y),
        exact=state,
        equilibrium=lambda X, Y: state(X, Y),
        hydrostatic=lambda X, Y: (state(X, Y)[0], state(X, Y)[3]),
        boundary=BoundaryRule.uniform(HYDROSTATIC),
        t_final=t_final,
        nx=n,
        ny=n,
        params={"rho0": rho0, "p0": p0, "g": g},
        notes=["ghost cells are filled with the equilibrium profile"],
    )


def case_perturbation(eta=0.1, n=64, rho0=1.21, p0=1.0, g=1.0, gamma=1.4, t_final=0.15, center=(0.3, 0.3)):
    state = _isothermal_atmosphere(rho0, p0, g)

    def init(X, Y):
        rho, u1, u2, p = state(X, Y)
        pulse = eta * np.exp(-100.0 * rho0 * g * ((X - center[0]) ** 2 + (Y - center[1]) ** 2) / p0)
        return rho, u1, u2, p + pulse

    return Problem(
        name="perturbation",
        gamma=gamma,
        M=1.0,
        potential=lambda X, Y: g * (X + Y),
        init=init,
        equilibrium=lambda X, Y: state(X, Y),
        hydrostatic=lambda X, Y: (state(X, Y)[0], state(X, Y)[3]),
        boundary=BoundaryRule.uniform(HYDROSTATIC),
        t_final=t_final,
        nx=n,
        ny=n,
        params={"eta": eta, "rho0": rho0, "p0": p0, "g": g},
        notes=["ghost cells are filled with the unperturbed equilibrium"],
    )


def case_rarefaction(n=128, C=-0.01, gamma=1.4, speed=2.0, t_final=0.1):
    K = gamma - 1.0

    def potential(X, Y):
        return 0.5 * ((X - 0.5) ** 2 + (Y - 0.5) ** 2)

    def equilibrium(X, Y):
        rho, p = hydrostatic_profiles("isothermal", potential(X, Y), K=K, C=C)
        return rho, _zeros(X), _zeros(X), p

    def init(X, Y):
        rho, _, u2, p = equilibrium(X, Y)
        return rho, np.where(X < 0.5, -speed, speed), u2, p

    return Problem(
        name="rarefaction",
        gamma=gamma,
        M=1.0,
        potential=potential,
        init=init,
        equilibrium=equilibrium,
        hydrostatic=lambda X, Y: hydrostatic_profiles("isothermal", potential(X, Y), K=K, C=C),
        boundary=BoundaryRule.uniform(ZERO_GRADIENT),
        t_final=t_final,
        nx=n,
        ny=n,
        params={"C": C, "K": K, "speed": speed},
        notes=["zero-gradient boundaries"],
    )


# vortex ----------------------------------------------------------------------

U_REF = 2.0 * 0.2 * np.pi


def vortex_speed(r):
    r = np.asarray(r, dtype=float)
    return np.select([r <= 0.2, r <= 0.4], [5.0 * r, 2.0 - 5.0 * r], 0.0) / U_REF


def vortex_potential(r, r_c=0.45):
    """Radial potential; the inner branch is ``12 r^2`` as tabulated."""
    r = np.asarray(r, dtype=float)
    s = r_c / (r_c - 0.4)
    with np.errstate(divide="ignore"):
        logr = np.log(np.where(r > 0, r, 1.0))
    return np.select(
        [r <= 0.2, r <= 0.4, r <= r_c],
        [12.0 * r**2,
         0.5 - np.log(0.2) + logr,
         np.log(2.0) - 0.5 * s + 2.5 * s * r - 1.25 / (r_c - 0.4) * r**2],
        np.log(2.0) - 0.5 * s + 1.25 * r_c**2 / (r_c - 0.4),
    )


def vortex_p2(r, M):
    """Centrifugal pressure correction, held constant beyond ``r = 0.4``."""
    r = np.asarray(r, dtype=float)
    RT = 1.0 / M**2
    M4 = M**4

    def p21(x):
        return 1.0 - np.exp(-12.5 * x**2 / RT)

    def p22(x):
        pre = np.exp((-0.5 + np.log(0.2)) / RT) / ((1.0 - M**2) * (1.0 - 0.5 * M**2))
        a = x ** (-1.0 / RT) * (M4 * (x * (10.0 - 12.5 * x) - 2.0) - 4.0 + M4 * (x * (12.5 * x - 20.0) + 6.0) * RT)
        b = np.exp(-np.log(0.2) / RT) * (4.0 - 2.5 * M4 * RT + 0.5 * M4)
        return pre * (a + b)

    rr = np.clip(r, 0.2, 0.4)
    inner = p21(np.minimum(r, 0.2))
    val = np.where(r <= 0.2, inner, p21(0.2) + p22(rr))
    return RT / U_REF**2 * val


def case_gresho_vortex(M=0.1, n=40, r_c=0.45, gamma=5.0 / 3.0, t_final=1.0, pressure_scaling="consistent"):
    """Rotating vortex in a radial potential well.

    ``pressure_scaling='consistent'`` uses the potential ``M^2 Phi(r)`` and the
    background pressure ``p0 = rho``, so the sound speed is O(1) and the
    maximal local Mach number is of order ``M``.  ``'literal'`` keeps
    ``p0 = rho / M^2`` with the unscaled potential, which makes the local Mach
    number of order ``M^2``.  Both are balanced by ``p = p0 + M^2 p2``.
    """
    if not 0 < M < 1:
        raise ValueError("vortex Mach number must lie in (0, 1)")
    if not r_c > 0.4:
        raise ValueError("r_c must exceed 0.4")
    if pressure_scaling not in ("consistent", "literal"):
        raise ValueError("pressure_scaling is 'consistent' or 'literal'")
    scale = M**2 if pressure_scaling == "consistent" else 1.0

    def polar(X, Y):
        dx, dy = X - 0.5, Y - 0.5
        return np.hypot(dx, dy), dx, dy

    def potential(X, Y):
        return scale * vortex_potential(polar(X, Y)[0], r_c)

    def init(X, Y):
        r, dx, dy = polar(X, Y)
        phi_r = vortex_potential(r, r_c)
        rho = np.exp(-(M**2) * phi_r)
        ut = vortex_speed(r)
        with np.errstate(invalid="ignore", divide="ignore"):
            ux = np.where(r > 0, -ut * dy / r, 0.0)
            uy = np.where(r > 0, ut * dx / r, 0.0)
        p = rho * (scale / M**2) + M**2 * vortex_p2(r, M)
        return rho, ux, uy, p

    return Problem(
        name="gresho-vortex",
        gamma=gamma,
        M=M,
        potential=potential,
        init=init,
        boundary=BoundaryRule.uniform(PERIODIC),
        t_final=t_final,
        nx=n,
        ny=n,
        params={"r_c": r_c, "pressure_scaling": pressure_scaling},
        notes=[
            "r_c defaults to 0.45",
            "inner potential branch 12 r^2 as tabulated; it does not join the second branch continuously",
            "centrifugal pressure is constant beyond r = 0.4",
        ],
    )


CASES = {
    "accuracy": case_accuracy,
    "rarefaction": case_rarefaction,
    "isothermal-atmosphere": case_isothermal_atmosphere,
    "general-steady": case_general_steady,
    "perturbation": case_perturbation,
    "gresho-vortex": case_gresho_vortex,
}

CASE_SUMMARY = {
    "accuracy": "advected smooth density wave in a linear potential, exact solution known",
    "rarefaction": "two strong rarefactions on an isothermal atmosphere in a quadratic well",
    "isothermal-atmosphere": "isothermal hydrostatic equilibrium in a linear potential",
    "general-steady": "non-isothermal hydrostatic equilibrium in a linear potential",
    "perturbation": "small pressure pulse on an isothermal atmosphere",
    "gresho-vortex": "low Mach rotating vortex in a radial potential, periodic",
}


def get_case(name, **overrides):
    try:
        gen = CASES[name]
    except KeyError:
        raise ValueError(f"unknown case {name!r}; available: {', '.join(CASES)}") from None
    return gen(**overrides)
