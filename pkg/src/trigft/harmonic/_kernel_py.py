"""Pure-numpy weight grid for the null-cone superposition integrand."""

from __future__ import annotations

import numpy as np

from .cone import embed, pfaffian4, symplectic_matrix


def weight_grid(r, theta, phi, psi, t, anchor: int, step: float) -> np.ndarray:
    """Boundary-data-free part of the integrand on a tensor grid.

    Returns W[i, j, k, l] = (1 - 1/(2 r)) exp(-i z.t) exp(-r) |Pf| / r^2 at
    (r_i, theta_j, phi_k, psi_l), with z = x + i y from the cone chart.
    """
    t = np.asarray(t, dtype=float)
    rr = np.asarray(r, dtype=float)[:, None, None, None]
    th = np.asarray(theta, dtype=float)[None, :, None, None]
    ph = np.asarray(phi, dtype=float)[None, None, :, None]
    ps = np.asarray(psi, dtype=float)[None, None, None, :]
    density = np.abs(pfaffian4(symplectic_matrix(rr, th, ph, ps, anchor, step))) / rr**2
    x, y = embed(rr, th, ph, ps, anchor)
    # exp(-i z.t) = exp(y.t) exp(-i x.t)
    phase = np.exp((y @ t - rr) - 1j * (x @ t))
    return (1.0 - 0.5 / rr) * density * phase
