"""Well-balanced, low-Mach two-speed relaxation solver for the Euler
equations with gravity."""

from .cases import CASES, Problem, get_case, hydrostatic_profiles
from .eos import DomainError, GasModel
from .grid import BoundaryRule, Grid, SchemeConfig
from .riemann import PositivityError
from .solver import RunReport, Simulation

__all__ = [
    "CASES",
    "BoundaryRule",
    "DomainError",
    "GasModel",
    "Grid",
    "PositivityError",
    "Problem",
    "RunReport",
    "SchemeConfig",
    "Simulation",
    "get_case",
    "hydrostatic_profiles",
]

__version__ = "0.1.0"
