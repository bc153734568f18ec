"""Validated run configuration built from a flat ``key = value`` mapping."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cases import CASES, get_case
from .grid import BOUNDARY_KINDS, SCHEMES, BoundaryRule, SchemeConfig
from .io import ConfigError, read_config
from .riemann import RhoBarMode

KEYS = {
    "case", "scheme", "order", "rho_bar", "mach", "beta", "cfl", "nx", "ny", "t_final", "boundary",
    "mhat_k", "output_dir", "snapshot_every", "eta", "r_c", "pressure_scaling", "stepper", "backend",
    "entropy_monitor", "poly_gamma", "positivity_retries",
}

# case-specific keys and the case that accepts them
CASE_ONLY = {
    "eta": "perturbation",
    "r_c": "gresho-vortex",
    "pressure_scaling": "gresho-vortex",
    "mach": "gresho-vortex",
}


def _to_bool(v):
    low = v.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {v!r}")


def _num(key, v, kind=float):
    try:
        return kind(v)
    except ValueError:
        raise ConfigError(f"{key}: expected {kind.__name__}, got {v!r}") from None


@dataclass
class RunConfig:
    case: str
    problem: object
    scheme: SchemeConfig
    boundary: BoundaryRule
    output_dir: str = "output"
    snapshot_every: int = 0
    entropy_monitor: bool = False
    raw: dict = field(default_factory=dict)


def build(raw: dict, n_override=None) -> RunConfig:
    unknown = sorted(set(raw) - KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    if "case" not in raw:
        raise ConfigError("missing required key 'case'")
    case = raw["case"]
    if case not in CASES:
        raise ConfigError(f"unknown case {case!r}; available: {', '.join(CASES)}")
    for key, owner in CASE_ONLY.items():
        if key in raw and case != owner:
            raise ConfigError(f"key {key!r} only applies to case {owner!r}, not {case!r}")

    kwargs = {}
    if "eta" in raw:
        kwargs["eta"] = _num("eta", raw["eta"])
    if "r_c" in raw:
        kwargs["r_c"] = _num("r_c", raw["r_c"])
    if "pressure_scaling" in raw:
        kwargs["pressure_scaling"] = raw["pressure_scaling"]
    if "mach" in raw:
        kwargs["M"] = _num("mach", raw["mach"])
    if "t_final" in raw:
        kwargs["t_final"] = _num("t_final", raw["t_final"])
    rho_bar = raw.get("rho_bar")
    if rho_bar is not None:
        try:
            RhoBarMode(rho_bar)
        except ValueError:
            raise ConfigError(f"rho_bar must be one of {[m.value for m in RhoBarMode]}") from None
    if case == "general-steady" and rho_bar is not None:
        kwargs["rho_bar"] = rho_bar
    try:
        problem = get_case(case, **kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    nx = _num("nx", raw["nx"], int) if "nx" in raw else problem.nx
    ny = _num("ny", raw["ny"], int) if "ny" in raw else problem.ny
    if n_override is not None:
        nx = ny = n_override
    if nx < 1 or ny < 1:
        raise ConfigError("nx and ny must be positive")
    problem.nx, problem.ny = nx, ny

    rho_bar = rho_bar or problem.rho_bar
    if rho_bar == "apriori" and problem.hydrostatic is None:
        raise ConfigError(f"rho_bar 'apriori' needs a hydrostatic profile, which case {case!r} lacks")
    problem.rho_bar = rho_bar

    boundary = problem.boundary
    if "boundary" in raw:
        kind = raw["boundary"]
        if kind not in BOUNDARY_KINDS:
            raise ConfigError(f"boundary must be one of {BOUNDARY_KINDS}")
        if kind == "dirichlet-exact" and problem.exact is None:
            raise ConfigError(f"case {case!r} has no exact solution for 'dirichlet-exact'")
        if kind == "hydrostatic-fill" and problem.equilibrium is None:
            raise ConfigError(f"case {case!r} has no equilibrium profile for 'hydrostatic-fill'")
        boundary = BoundaryRule.uniform(kind)
        problem.boundary = boundary

    scheme = raw.get("scheme", "two-speed")
    if scheme not in SCHEMES:
        raise ConfigError(f"scheme must be one of {SCHEMES}")
    order = _num("order", raw.get("order", "2"), int)
    entropy_monitor = _to_bool(raw.get("entropy_monitor", "false"))
    stepper = raw.get("stepper")
    if entropy_monitor and (order != 1 or stepper not in (None, "euler")):
        raise ConfigError("entropy_monitor requires order = 1 with the euler stepper")
    poly_gamma = _num("poly_gamma", raw["poly_gamma"]) if "poly_gamma" in raw else problem.poly_gamma
    try:
        sc = SchemeConfig(
            scheme=scheme,
            order=order,
            rho_bar=rho_bar,
            M=problem.M,
            gamma=problem.gamma,
            beta=_num("beta", raw.get("beta", "1.1")),
            cfl=_num("cfl", raw.get("cfl", "0.45")),
            mhat_k=_num("mhat_k", raw["mhat_k"]) if "mhat_k" in raw else None,
            poly_gamma=poly_gamma,
            stepper=stepper,
            backend=raw.get("backend"),
            positivity_retries=_num("positivity_retries", raw.get("positivity_retries", "0"), int),
        )
    except (ValueError, ImportError) as exc:
        raise ConfigError(str(exc)) from None
    snap = _num("snapshot_every", raw.get("snapshot_every", "0"), int)
    if snap < 0:
        raise ConfigError("snapshot_every must be >= 0")
    return RunConfig(
        case=case,
        problem=problem,
        scheme=sc,
        boundary=boundary,
        output_dir=raw.get("output_dir", "output"),
        snapshot_every=snap,
        entropy_monitor=entropy_monitor,
        raw=dict(raw),
    )


def load(path, n_override=None) -> RunConfig:
    return build(read_config(path), n_override)
