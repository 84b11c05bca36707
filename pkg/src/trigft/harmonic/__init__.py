"""Harmonic extension into the unit ball of R^3 by superposition over the complex null cone."""

from ._backend import BACKEND
from .boundary import LIBRARY, BoundaryFunction, boundary_function
from .cone import ConeChart, NullConePoint, cone_density, null_cone_param
from .superposition import (
    DEFAULT_R_MAX,
    DEFAULT_TOL,
    Calibration,
    SuperpositionResult,
    calibrate_normalization,
    calibration_report,
    harmonic_superposition,
    poisson_oracle,
    poisson_value,
    raw_superposition,
    superposition_many,
)

__all__ = [
    "BACKEND",
    "LIBRARY",
    "BoundaryFunction",
    "boundary_function",
    "ConeChart",
    "NullConePoint",
    "cone_density",
    "null_cone_param",
    "DEFAULT_R_MAX",
    "DEFAULT_TOL",
    "Calibration",
    "SuperpositionResult",
    "calibrate_normalization",
    "calibration_report",
    "harmonic_superposition",
    "poisson_oracle",
    "poisson_value",
    "raw_superposition",
    "superposition_many",
]
