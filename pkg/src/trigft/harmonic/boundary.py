"""Boundary data on the unit sphere S^2.

Each library entry may carry its harmonic extension into the ball, which
tests use as an exact reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import DomainError, NonFiniteIntegrandError


@dataclass(frozen=True)
class BoundaryFunction:
    """Real function on S^2, vectorized over a trailing axis of length 3."""

    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    extension: Optional[Callable[[np.ndarray], float]] = None

    def __call__(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if xi.shape[-1] != 3:
            raise DomainError(f"boundary data expects points in R^3, got shape {xi.shape}")
        out = np.broadcast_to(np.asarray(self.eval(xi), dtype=float), xi.shape[:-1])
        if not np.all(np.isfinite(out)):
            raise NonFiniteIntegrandError(f"boundary function {self.name!r} is not finite")
        return out

    def rotated(self, rotation) -> "BoundaryFunction":
        """xi -> f(R^T xi); its extension is u(R^T t)."""
        rot = np.asarray(rotation, dtype=float)
        ext = None
        if self.extension is not None:
            ext = lambda t, e=self.extension: e(rot.T @ np.asarray(t, dtype=float))  # noqa: E731
        return BoundaryFunction(f"{self.name}@rot", lambda xi: self.eval(xi @ rot), ext)

    def scaled_sum(self, alpha: float, other: "BoundaryFunction", beta: float) -> "BoundaryFunction":
        """alpha f + beta g."""
        ext = None
        if self.extension is not None and other.extension is not None:
            ext = lambda t: alpha * self.extension(t) + beta * other.extension(t)  # noqa: E731
        return BoundaryFunction(
            f"{alpha}*{self.name}+{beta}*{other.name}",
            lambda xi: alpha * self.eval(xi) + beta * other.eval(xi),
            ext,
        )


def _coord(j):
    return lambda xi: xi[..., j]


LIBRARY = {
    "one": BoundaryFunction("one", lambda xi: np.ones(xi.shape[:-1]), lambda t: 1.0),
    "x1": BoundaryFunction("x1", _coord(0), lambda t: float(t[0])),
    "x2": BoundaryFunction("x2", _coord(1), lambda t: float(t[1])),
    "x3": BoundaryFunction("x3", _coord(2), lambda t: float(t[2])),
    "x1x2": BoundaryFunction("x1x2", lambda xi: xi[..., 0] * xi[..., 1], lambda t: float(t[0] * t[1])),
    # 3 xi_3^2 - 1 on the sphere extends to the solid harmonic 3 t_3^2 - |t|^2
    "zonal2": BoundaryFunction(
        "zonal2", lambda xi: 3 * xi[..., 2] ** 2 - 1, lambda t: float(3 * t[2] ** 2 - np.dot(t, t))
    ),
    "exp_x1": BoundaryFunction("exp_x1", lambda xi: np.exp(xi[..., 0])),
}


def boundary_function(name: str) -> BoundaryFunction:
    try:
        return LIBRARY[name]
    except KeyError:
        raise DomainError(f"unknown boundary function {name!r}; choose from {sorted(LIBRARY)}") from None
