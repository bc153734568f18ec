"""Ideal-gas equation of state under the Mach-scaled energy relation.

The total energy is ``E = rho*e + 0.5*M**2*rho*|u|**2`` and the pressure law
is ``p = (gamma - 1)*rho*e``.  All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DomainError(ValueError):
    """Raised when a state leaves the admissible set (rho > 0, e > 0)."""


@dataclass(frozen=True)
class GasModel:
    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise DomainError(f"gamma must exceed 1, got {self.gamma}")


@dataclass
class PrimitiveState:
    rho: float
    u: tuple
    p: float


@dataclass
class ConservedState:
    rho: float
    mom: tuple
    E: float


def _require_positive(name, value):
    arr = np.asarray(value)
    if not np.all(arr > 0):
        bad = np.argwhere(~(arr > 0))
        where = "" if arr.ndim == 0 else f" at index {tuple(bad[0])}"
        raise DomainError(f"{name} must be positive{where}")


def pressure(model: GasModel, rho, e):
    _require_positive("rho", rho)
    _require_positive("e", e)
    return (model.gamma - 1.0) * rho * e


def sound_speed(model: GasModel, rho, p):
    _require_positive("rho", rho)
    _require_positive("p", p)
    return np.sqrt(model.gamma * p / rho)


def specific_entropy(model: GasModel, rho, e):
    """Mathematical specific entropy ``s = -(ln e + (gamma-1) ln tau)``.

    It decreases where the physical entropy increases, so ``rho*s`` is a
    convex entropy in the conserved variables.
    """
    _require_positive("rho", rho)
    _require_positive("e", e)
    return -(np.log(e) - (model.gamma - 1.0) * np.log(rho))


def entropy_density(model: GasModel, rho, e):
    return rho * specific_entropy(model, rho, e)


def cons_to_prim(model: GasModel, w: ConservedState, M: float) -> PrimitiveState:
    rho = w.rho
    _require_positive("rho", rho)
    mom = np.atleast_1d(np.asarray(w.mom, dtype=float))
    u = mom / rho
    e = (w.E - 0.5 * M**2 * rho * float(np.dot(u, u))) / rho
    if not e > 0:
        raise DomainError(f"internal energy e={e!r} <= 0 for state {w}")
    return PrimitiveState(rho, tuple(u), pressure(model, rho, e))


def prim_to_cons(model: GasModel, q: PrimitiveState, M: float) -> ConservedState:
    _require_positive("rho", q.rho)
    _require_positive("p", q.p)
    u = np.atleast_1d(np.asarray(q.u, dtype=float))
    E = q.p / (model.gamma - 1.0) + 0.5 * M**2 * q.rho * float(np.dot(u, u))
    return ConservedState(q.rho, tuple(q.rho * u), E)


def conserved_to_primitive_arrays(U, gamma, M):
    """Array version: ``U`` has shape ``(4, ...)`` = (rho, mx, my, E).

    Returns ``(rho, ux, uy, p)``.  No domain check is performed here; callers
    validate with :func:`check_admissible`.
    """
    rho = U[0]
    ux = U[1] / rho
    uy = U[2] / rho
    p = (gamma - 1.0) * (U[3] - 0.5 * M**2 * rho * (ux * ux + uy * uy))
    return rho, ux, uy, p


def primitive_to_conserved_arrays(rho, ux, uy, p, gamma, M):
    rho = np.asarray(rho, dtype=float)
    E = p / (gamma - 1.0) + 0.5 * M**2 * rho * (ux * ux + uy * uy)
    return np.stack(np.broadcast_arrays(rho, rho * ux, rho * uy, E)).astype(float)


def check_admissible(U, gamma, M):
    """Return the index of the first cell outside the phase space, or None."""
    rho, _, _, p = conserved_to_primitive_arrays(U, gamma, M)
    bad = ~((rho > 0) & (p > 0))
    if np.any(bad):
        return tuple(int(k) for k in np.argwhere(bad)[0])
    return None
