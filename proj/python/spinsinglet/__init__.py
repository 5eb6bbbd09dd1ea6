"""Robust generation of the three-logical-qubit singlet state."""

from ._core import (
    ConfigError,
    InvalidPathError,
    NumericalQualityError,
    PathParams,
    SingularInversionError,
    bessel_j,
    beta,
    controls,
    invert_controls,
    max_control,
    phi0,
    qs,
    run_scenario,
    scenarios,
    sensitivity_exact,
    simulate_effective,
    simulate_init,
    simulate_modulated,
    simulate_rotating,
    theta,
    upsilon,
)

__all__ = [
    "ConfigError",
    "InvalidPathError",
    "NumericalQualityError",
    "PathParams",
    "SingularInversionError",
    "bessel_j",
    "beta",
    "controls",
    "invert_controls",
    "max_control",
    "phi0",
    "qs",
    "run_scenario",
    "scenarios",
    "sensitivity_exact",
    "simulate_effective",
    "simulate_init",
    "simulate_modulated",
    "simulate_rotating",
    "theta",
    "upsilon",
]
