"""Explicit time integrators acting on padded state arrays.

``rhs(U, t)`` must fill the ghost layers of ``U`` for time ``t`` and return
the interior residual; ``check(U, t)`` validates a stage result.
"""

from __future__ import annotations

STEPPERS = ("euler", "ssprk3")


def _axpy(U0, R, dt, interior, out=None):
    out = U0.copy() if out is None else out
    out[(slice(None),) + interior] += dt * R
    return out


def advance(stepper, rhs, U, t, dt, interior, check=None):
    """Advance the padded state ``U`` from ``t`` to ``t + dt``.

    The three SSP-RK3 stages see boundary data at ``t``, ``t + dt`` and
    ``t + dt/2``.  Each stage is a convex combination of forward-Euler
    steps, so anything the Euler step preserves survives the full step.
    """
    check = check or (lambda V, s: None)
    if stepper == "euler":
        U1 = _axpy(U, rhs(U, t), dt, interior)
        check(U1, t + dt)
        return U1
    if stepper != "ssprk3":
        raise ValueError(f"unknown stepper {stepper!r}")
    U1 = _axpy(U, rhs(U, t), dt, interior)
    check(U1, t + dt)
    # combinations written as U + c (V - U) keep exact fixed points bitwise
    U2 = _axpy(U1, rhs(U1, t + dt), dt, interior)
    U2 -= U
    U2 *= 0.25
    U2 += U
    check(U2, t + 0.5 * dt)
    U3 = _axpy(U2, rhs(U2, t + 0.5 * dt), dt, interior)
    U3 -= U
    U3 *= 2.0 / 3.0
    U3 += U
    check(U3, t + dt)
    return U3
