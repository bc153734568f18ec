import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaxeuler.eos import (
    ConservedState,
    DomainError,
    GasModel,
    PrimitiveState,
    check_admissible,
    cons_to_prim,
    conserved_to_primitive_arrays,
    entropy_density,
    prim_to_cons,
    primitive_to_conserved_arrays,
    pressure,
    sound_speed,
    specific_entropy,
)


@pytest.mark.parametrize("gamma,rho,e", [(1.4, 1.0, 2.5), (5.0 / 3.0, 3.0, 0.5), (1.4, 1.21, 1.0 / (0.4 * 1.21))])
def test_pressure_examples(gamma, rho, e):
    assert pressure(GasModel(gamma), rho, e) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("gamma,rho,p,c", [
    (1.4, 1.0, 1.0, math.sqrt(1.4)),
    (5.0 / 3.0, 1.0, 5.0 / 3.0, 5.0 / 3.0),
    (1.4, 4.0, 1.0, math.sqrt(0.35)),
])
def test_sound_speed(gamma, rho, p, c):
    assert sound_speed(GasModel(gamma), rho, p) == pytest.approx(c, rel=1e-15)


def test_specific_entropy_values():
    g = GasModel(1.4)
    assert specific_entropy(g, 1.0, 1.0) == 0.0
    assert specific_entropy(g, 2.0, 1.0) == pytest.approx(-0.4 * math.log(0.5), rel=1e-14)
    assert specific_entropy(g, 1.0, 1.0) == pytest.approx(specific_entropy(g, 2.0, 2.0 ** 0.4), abs=1e-15)
    assert entropy_density(g, 2.0, 1.0) == pytest.approx(2.0 * -0.4 * math.log(0.5))


def test_domain_errors():
    g = GasModel(1.4)
    with pytest.raises(DomainError):
        pressure(g, -1.0, 1.0)
    with pytest.raises(DomainError):
        specific_entropy(g, 1.0, 0.0)
    with pytest.raises(ValueError):
        GasModel(1.0)


def test_cons_to_prim_examples():
    g = GasModel(1.4)
    q = cons_to_prim(g, ConservedState(1.0, (2.0,), 3.0), 1.0)
    assert (q.rho, q.u) == (1.0, (2.0,))
    assert q.p / (0.4 * q.rho) == pytest.approx(1.0)
    q = cons_to_prim(g, ConservedState(1.0, (2.0,), 1.02), 0.1)
    assert q.p / 0.4 == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(DomainError):
        cons_to_prim(g, ConservedState(1.0, (2.0, 0.0), 1.0), 1.0)


def test_prim_to_cons_examples():
    g = GasModel(1.4)
    assert prim_to_cons(g, PrimitiveState(1.0, (0.0,), 1.0), 1.0).E == pytest.approx(2.5)
    assert prim_to_cons(g, PrimitiveState(1.0, (1.0,), 1.0), 0.01).E == pytest.approx(2.5 + 5e-5, rel=1e-15)
    for M in (1.0, 0.1, 1e-3):
        q = cons_to_prim(g, prim_to_cons(g, PrimitiveState(1.21, (0.0, 0.0), 1.0), M), M)
        assert (q.rho, q.u, q.p) == (1.21, (0.0, 0.0), pytest.approx(1.0, rel=1e-15))


@settings(max_examples=200, deadline=None)
@given(
    rho=st.floats(1e-3, 1e3), u1=st.floats(-10, 10), u2=st.floats(-10, 10), p=st.floats(1e-3, 1e3),
    gamma=st.floats(1.05, 3.0), M=st.sampled_from([1e-3, 0.01, 0.3, 1.0, 5.0]),
)
def test_roundtrip_property(rho, u1, u2, p, gamma, M):
    U = primitive_to_conserved_arrays(np.array(rho), np.array(u1), np.array(u2), np.array(p), gamma, M)
    r, a, b, q = conserved_to_primitive_arrays(U, gamma, M)
    assert r == rho
    assert a == pytest.approx(u1, rel=1e-14, abs=1e-14)
    assert b == pytest.approx(u2, rel=1e-14, abs=1e-14)
    # the pressure loses digits when the kinetic part dominates E
    kin = 0.5 * M * M * rho * (u1 * u1 + u2 * u2) * (gamma - 1.0)
    assert q == pytest.approx(p, rel=1e-13 * (1.0 + kin / p))


def test_check_admissible_flags_bad_cells():
    U = primitive_to_conserved_arrays(np.ones(3), np.zeros(3), np.zeros(3), np.ones(3), 1.4, 1.0)
    assert check_admissible(U, 1.4, 1.0) is None
    U[3, 1] = -1.0
    assert check_admissible(U, 1.4, 1.0) == (1,)
