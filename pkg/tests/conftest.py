import numpy as np
import pytest

from relaxeuler import BoundaryRule, Problem


def uniform_problem(rho=1.0, u=0.0, v=0.0, p=1.0, n=8, ny=1, gamma=1.4, M=1.0, boundary="periodic"):
    return Problem(
        name="uniform",
        gamma=gamma,
        M=M,
        potential=lambda X, Y: 0.0 * X,
        init=lambda X, Y: (rho + 0 * X, u + 0 * X, v + 0 * X, p + 0 * X),
        boundary=BoundaryRule.uniform(boundary),
        t_final=0.1,
        nx=n,
        ny=ny,
    )


def riemann_problem(left, right, n=50, gamma=1.4, M=1.0, x0=0.5):
    """1D shock-tube data; ``left``/``right`` are ``(rho, u, p)``."""
    def init(X, Y):
        L = X < x0
        return (np.where(L, left[0], right[0]), np.where(L, left[1], right[1]), 0 * X,
                np.where(L, left[2], right[2]))
    return Problem(
        name="shock-tube",
        gamma=gamma,
        M=M,
        potential=lambda X, Y: 0.0 * X,
        init=init,
        boundary=BoundaryRule.uniform("zero-gradient"),
        t_final=0.1,
        nx=n,
        ny=1,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def perturbation_field(scheme, eta, n=64):
    """Pressure minus the unperturbed equilibrium at the final time."""
    from relaxeuler import SchemeConfig, Simulation, get_case
    from relaxeuler.eos import conserved_to_primitive_arrays

    prob = get_case("perturbation", eta=eta, n=n)
    sim = Simulation(prob, SchemeConfig(scheme=scheme, M=prob.M, gamma=prob.gamma, rho_bar=prob.rho_bar))
    sim.run()
    X, Y = sim.grid.centers(padded=False)
    _, _, _, p_eq = prob.equilibrium(X, Y)
    _, _, _, p = conserved_to_primitive_arrays(sim.interior(), prob.gamma, prob.M)
    return p - p_eq


# one line per acceptance criterion, echoed again at the end of the session
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
