import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from relaxeuler.reconstruction import (
    face_balance,
    hydrostatic_pressure_slope,
    limited_slopes,
    minmod,
    plain_slope,
    reconstruct_faces,
    velocity_factor,
)


@pytest.mark.parametrize("a,b,out", [(1, 2, 1), (-1, 2, 0), (-2, -1, -1), (0, 3, 0), (3, 3, 3)])
def test_minmod(a, b, out):
    assert minmod(a, b) == out


def test_isothermal_triple_has_zero_pressure_slope():
    K, dx = 0.8, 0.05
    phi = np.array([0.1, 0.1 + dx, 0.1 + 2 * dx])
    rho = np.exp(-phi / K)
    p = K * rho
    rb, dZ = face_balance(rho, phi, "isothermal")
    assert hydrostatic_pressure_slope(p, rb * dZ)[0] == 0.0


def test_pressure_slope_without_gravity_is_plain_minmod():
    p = np.array([1.0, 1.3, 1.4, 2.0])
    np.testing.assert_array_equal(hydrostatic_pressure_slope(p, np.zeros(3)), plain_slope(p))


def test_linear_pressure_gives_unit_slope():
    dx = 0.1
    p = 1.0 + dx * np.arange(5)
    # half-cell increments: slope * dx / 2
    np.testing.assert_allclose(2.0 * hydrostatic_pressure_slope(p, np.zeros(4)) / dx, 1.0, rtol=1e-13)


def test_uniform_triple():
    one = np.ones(3)
    s = limited_slopes(one, 0.5 * one, 0.2 * one, one, np.zeros(2), 1.4)
    for d in (s.d_rho, s.d_un, s.d_ut, s.d_p):
        assert d[0] == 0.0
    assert s.kappa[0] == 1.0


def test_kappa_branches():
    # no velocity slope -> kappa = 1
    assert velocity_factor(1.0, 0.3, 0.0, 1.0, 0.2, 0.0, 0.0, 1.4) == 1.0
    # u . du = 0 with a density slope: kappa_bar = sqrt(rho p/(g-1) |du|^2)/(rho |du|^2)
    k = velocity_factor(1.0, 0.0, 0.0, 1.0, 0.5, 100.0, 0.0, 1.4)
    assert k == pytest.approx(np.sqrt(1.0 / 0.4) / 100.0, rel=1e-14)
    assert velocity_factor(1.0, 0.0, 0.0, 1.0, 0.5, 0.1, 0.0, 1.4) == 1.0


def test_steep_density_drop_stays_positive():
    rho = np.array([1.0, 0.1, 0.01, 0.001])
    p = np.array([1.0, 0.05, 0.001, 1e-4])
    u = np.array([0.0, 2.0, -3.0, 1.0])
    s = limited_slopes(rho, u, 0 * u, p, np.zeros(3), 1.4)
    left, right = reconstruct_faces(rho, u, 0 * u, p, s)
    for side in (left, right):
        assert np.all(side[0] > 0) and np.all(side[3] > 0)


def test_zero_slopes_give_cell_averages():
    rho = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    u = np.zeros(5)
    p = np.arange(1.0, 6.0)
    (rl, _, _, pl), (rr, _, _, pr) = reconstruct_faces(rho, u, u, p, None)
    np.testing.assert_array_equal(rl, rho[1:-2])
    np.testing.assert_array_equal(rr, rho[2:-1])
    np.testing.assert_array_equal(pl, p[1:-2])


def test_hydrostatic_line_reconstructs_cell_averages():
    K = 1.2
    phi = 0.07 * np.arange(8)
    rho = np.exp(-phi / K)
    p = K * rho
    rb, dZ = face_balance(rho, phi, "isothermal")
    s = limited_slopes(rho, 0 * rho, 0 * rho, p, rb * dZ, 1.4)
    np.testing.assert_array_equal(s.d_p, 0.0)
    (_, _, _, pl), (_, _, _, pr) = reconstruct_faces(rho, 0 * rho, 0 * rho, p, s)
    np.testing.assert_array_equal(pl, p[1:-2])
    np.testing.assert_array_equal(pr, p[2:-1])


def test_linear_data_reconstructs_exactly():
    x = np.linspace(0, 1, 9)
    rho = 1.0 + 0.5 * x
    s = limited_slopes(rho, 0 * x, 0 * x, 2.0 + x, np.zeros(8), 1.4)
    (rl, _, _, pl), (rr, _, _, _) = reconstruct_faces(rho, 0 * x, 0 * x, 2.0 + x, s)
    np.testing.assert_allclose(rl, 0.5 * (rho[1:-2] + rho[2:-1]), rtol=1e-14)
    np.testing.assert_allclose(rl, rr, rtol=1e-14)


positive = arrays(np.float64, 12, elements=st.floats(1e-6, 1e3))
velocity = arrays(np.float64, 12, elements=st.floats(-1e2, 1e2))


@settings(max_examples=300, deadline=None)
@given(rho=positive, p=positive, un=velocity, ut=velocity, g=st.floats(-5, 5))
def test_reconstruction_positivity_property(rho, p, un, ut, g):
    phi = g * np.linspace(0.0, 1.0, rho.size)
    rb, dZ = face_balance(rho, phi, "isothermal")
    s = limited_slopes(rho, un, ut, p, rb * dZ, 1.4)
    left, right = reconstruct_faces(rho, un, ut, p, s)
    for side in (left, right):
        assert np.all(side[0] > 0) and np.all(side[3] > 0)
    assert np.all((s.kappa > 0) & (s.kappa <= 1))
