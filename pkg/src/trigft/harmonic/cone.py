"""Explicit chart for the complex null cone V = {z in C^3 : z.z = 0}.

A point z = x + i y of V has |x| = |y| = r and x . y = 0.  The chart is
(r, theta, phi, psi):

    omega = (sin th cos ph, sin th sin ph, cos th)       direction of y
    y     = r omega
    x     = r (cos psi e1(omega) + sin psi e2(omega))

where (e1, e2, omega) is a right-handed orthonormal frame.  The frame is
the standard frame at e3 carried to omega by the Householder reflection
taking e3 to -omega (composed with a flip of e3, so the map is a
rotation).  It degenerates at omega = -e3, so the southern hemisphere uses
the same construction anchored at -e3.

The density of (sum_j dx_j ^ dy_j / |y|)^2 in this chart is |Pf(Omega)| / r^2
where Omega is the antisymmetric matrix of the pulled-back 2-form,
obtained here from a central-difference Jacobian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ChartSingularityError, DomainError

NORTH = 1
SOUTH = -1
# charts refuse points closer than this (radians) to their singular direction
SINGULAR_MARGIN = 0.1
JACOBIAN_STEP = 1e-5

_FLIP = np.array([1.0, -1.0, -1.0])  # rotation by pi about e1, swaps e3 and -e3


@dataclass(frozen=True)
class NullConePoint:
    x: np.ndarray
    y: np.ndarray

    @property
    def z(self) -> np.ndarray:
        return self.x + 1j * self.y

    def square(self) -> complex:
        """z . z = |x|^2 - |y|^2 + 2 i x . y; zero on the cone."""
        z = self.z
        return complex(np.sum(z * z))


@dataclass(frozen=True)
class ConeChart:
    r: float
    theta: float
    phi: float
    psi: float
    anchor: int = NORTH

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f"cone chart needs r > 0, got {self.r}")
        if self.anchor not in (NORTH, SOUTH):
            raise DomainError(f"anchor must be NORTH (1) or SOUTH (-1), got {self.anchor}")
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")

    @classmethod
    def for_direction(cls, r, theta, phi, psi):
        """Chart anchored on the hemisphere containing the direction."""
        anchor = NORTH if theta <= math.pi / 2 else SOUTH
        return cls(r, theta, phi, psi, anchor)

    def coords(self) -> np.ndarray:
        return np.array([self.r, self.theta, self.phi, self.psi])


def direction(theta, phi):
    """omega(theta, phi) with the last axis holding the components."""
    st = np.sin(theta)
    return np.stack(np.broadcast_arrays(st * np.cos(phi), st * np.sin(phi), np.cos(theta)), axis=-1)


def frame(omega, anchor: int = NORTH):
    """(e1, e2) completing omega to a right-handed orthonormal frame."""
    w = np.asarray(omega, dtype=float)
    if anchor == SOUTH:
        w = w * _FLIP
    w1, w2, w3 = w[..., 0], w[..., 1], w[..., 2]
    c = 1.0 + w3
    e1 = np.stack([1.0 - w1 * w1 / c, -w1 * w2 / c, -w1], axis=-1)
    e2 = np.stack([-w1 * w2 / c, 1.0 - w2 * w2 / c, -w2], axis=-1)
    if anchor == SOUTH:
        e1 = e1 * _FLIP
        e2 = e2 * _FLIP
    return e1, e2


def _check_regular(theta, anchor):
    theta = np.asarray(theta)
    if anchor == NORTH:
        bad = theta > math.pi - SINGULAR_MARGIN
    else:
        bad = theta < SINGULAR_MARGIN
    if np.any(bad):
        side = "-e3" if anchor == NORTH else "+e3"
        raise ChartSingularityError(
            f"direction within {SINGULAR_MARGIN} rad of the frame singularity at {side}; "
            "rotate the chart (use the other anchor)"
        )


def embed(r, theta, phi, psi, anchor: int = NORTH):
    """(x, y) for broadcastable chart coordinates; last axis holds components."""
    omega = direction(theta, phi)
    e1, e2 = frame(omega, anchor)
    r = np.asarray(r)[..., None]
    psi = np.asarray(psi)[..., None]
    x = r * (np.cos(psi) * e1 + np.sin(psi) * e2)
    y = r * omega
    return x, y


def null_cone_param(chart: ConeChart) -> NullConePoint:
    """The point of V with chart coordinates ``chart``."""
    x, y = embed(chart.r, chart.theta, chart.phi, chart.psi, chart.anchor)
    return NullConePoint(np.asarray(x, dtype=float), np.asarray(y, dtype=float))


def pfaffian4(omega) -> np.ndarray:
    """Pfaffian of 4x4 antisymmetric matrices (last two axes)."""
    o = np.asarray(omega)
    return o[..., 0, 1] * o[..., 2, 3] - o[..., 0, 2] * o[..., 1, 3] + o[..., 0, 3] * o[..., 1, 2]


def symplectic_matrix(r, theta, phi, psi, anchor: int = NORTH, step: float = JACOBIAN_STEP):
    """Matrix of the pullback of sum_j dx_j ^ dy_j in (r, theta, phi, psi).

    Jacobian columns by central differences; the r step is relative to r
    so the stencil never reaches r <= 0.
    """
    base = [np.asarray(c, dtype=float) for c in (r, theta, phi, psi)]
    base = np.broadcast_arrays(*base)
    steps = [step * base[0], step, step, step]
    dx, dy = [], []
    for k in range(4):
        plus = list(base)
        minus = list(base)
        plus[k] = base[k] + steps[k]
        minus[k] = base[k] - steps[k]
        xp, yp = embed(*plus, anchor)
        xm, ym = embed(*minus, anchor)
        width = 2 * np.asarray(steps[k])[..., None]
        dx.append((xp - xm) / width)
        dy.append((yp - ym) / width)
    dx = np.stack(dx, axis=-1)  # (..., 3, 4)
    dy = np.stack(dy, axis=-1)
    m = np.swapaxes(dx, -1, -2) @ dy
    return m - np.swapaxes(m, -1, -2)


def cone_density(chart: ConeChart, wedge_factorial: bool = False) -> float:
    """|Pf(Omega)| / |y|^2 at ``chart``.

    With ``wedge_factorial`` the top power of the 2-form is reported as
    2! Pf(Omega); the default omits the factorial.
    """
    _check_regular(chart.theta, chart.anchor)
    omega = symplectic_matrix(chart.r, chart.theta, chart.phi, chart.psi, chart.anchor)
    dens = abs(float(pfaffian4(omega))) / chart.r**2
    return 2.0 * dens if wedge_factorial else dens
