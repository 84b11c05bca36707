"""Spherical coordinates on S^(n-1) and rotations aligning e_1 with a vector.

Angles theta_1..theta_{n-2} lie in [0, pi] and theta_{n-1} in [0, 2 pi]:

    eta_1 = cos th_1
    eta_j = sin th_1 ... sin th_{j-1} cos th_j
    eta_n = sin th_1 ... sin th_{n-2} sin th_{n-1}

with surface element prod_j sin^(n-1-j)(th_j) d th_j.  For n = 2 the single
angle runs over the whole circle and the weight is 1.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .special_fn import gamma_fn

_ANGLE_SLACK = 1e-12


def _as_angles(angles) -> np.ndarray:
    th = np.asarray(angles, dtype=float)
    if th.ndim == 0 or th.shape[-1] < 1:
        raise DomainError("need at least one angle (n >= 2)")
    return th


def validate_angles(angles) -> np.ndarray:
    """Check angle ranges; the last axis holds theta_1..theta_{n-1}."""
    th = _as_angles(angles)
    polar = th[..., :-1]
    last = th[..., -1]
    if np.any(polar < -_ANGLE_SLACK) or np.any(polar > math.pi + _ANGLE_SLACK):
        raise DomainError("polar angles must lie in [0, pi]")
    if np.any(last < -_ANGLE_SLACK) or np.any(last > 2 * math.pi + _ANGLE_SLACK):
        raise DomainError("the last angle must lie in [0, 2 pi]")
    return th


def sphere_from_angles(angles, check: bool = True) -> np.ndarray:
    """Unit vector(s) on S^(n-1) for angles theta_1..theta_{n-1} (last axis)."""
    th = validate_angles(angles) if check else _as_angles(angles)
    m = th.shape[-1]
    out = np.empty(th.shape[:-1] + (m + 1,))
    running = np.ones(th.shape[:-1])
    for j in range(m):
        out[..., j] = running * np.cos(th[..., j])
        running = running * np.sin(th[..., j])
    out[..., m] = running
    return out


def surface_weight(angles, check: bool = True) -> np.ndarray | float:
    """prod_j sin^(n-1-j)(theta_j), the density of the surface element."""
    th = validate_angles(angles) if check else _as_angles(angles)
    m = th.shape[-1]
    n = m + 1
    w = np.ones(th.shape[:-1])
    for j in range(1, m):
        w = w * np.sin(th[..., j - 1]) ** (n - 1 - j)
    return float(w) if w.ndim == 0 else w


def angle_box(n: int):
    """Integration box for the angles of S^(n-1)."""
    if n < 2:
        raise DomainError(f"angle_box needs n >= 2, got {n}")
    return [(0.0, math.pi)] * (n - 2) + [(0.0, 2 * math.pi)]


def sphere_area(n: int) -> float:
    """Surface area of S^(n-1): 2 pi^(n/2) / Gamma(n/2)."""
    return 2 * math.pi ** (n / 2) / gamma_fn(n / 2)


def align_rotation(t) -> np.ndarray:
    """A rotation g in SO(n) with g e_1 = t / |t|.

    Householder based.  When t/|t| leans toward -e_1 a single reflection
    H (e_1 -> t/|t|) is used and its last column negated to fix the
    determinant.  Otherwise g = H_u H_{e1} with u = e_1 + t/|t|, which
    never divides by a small norm and gives the identity for t along e_1.
    """
    t = np.asarray(t, dtype=float).ravel()
    n = t.size
    norm = np.linalg.norm(t)
    if n == 0 or not norm > 0:
        raise DomainError("align_rotation needs a nonzero vector")
    unit = t / norm
    if n == 1:
        if unit[0] < 0:
            raise DomainError("SO(1) is trivial: cannot rotate e_1 onto a negative vector")
        return np.eye(1)
    e1 = np.zeros(n)
    e1[0] = 1.0
    if unit[0] <= 0:
        v = e1 - unit
        g = np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)
        g[:, -1] *= -1.0
    else:
        u = e1 + unit
        h_u = np.eye(n) - 2.0 * np.outer(u, u) / (u @ u)
        g = h_u.copy()
        g[:, 0] *= -1.0  # right-multiplying by H_{e1} = diag(-1, 1, ..., 1)
    return g
