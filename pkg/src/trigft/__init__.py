"""Closed-form trigonometric and radial Fourier integrals with independent numerical oracles."""

from .errors import (
    CalibrationError,
    ChartSingularityError,
    ConvergenceError,
    DomainError,
    NonFiniteIntegrandError,
)
from .quadrature import QuadResult, McResult, Tolerance
from .radial_ft import RadialExpParams, ft_closed
from .special_fn import beta_fn, double_factorial, gamma_fn, wallis
from .trig_integrals import TrigSpec, closed_form, trig_quadrature

__version__ = "0.1.0"

__all__ = [
    "CalibrationError",
    "ChartSingularityError",
    "ConvergenceError",
    "DomainError",
    "NonFiniteIntegrandError",
    "QuadResult",
    "McResult",
    "Tolerance",
    "RadialExpParams",
    "ft_closed",
    "beta_fn",
    "double_factorial",
    "gamma_fn",
    "wallis",
    "TrigSpec",
    "closed_form",
    "trig_quadrature",
]
