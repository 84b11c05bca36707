"""Harmonic functions on the unit ball of R^3 as superpositions over the null cone.

For boundary data f the harmonic extension is

    u(t) = kappa int_V (1 - 1/(2|y|)) f(y/|y|) exp(-i z.t) exp(-|y|) dmu(z)

with dmu the density from :func:`cone.cone_density`.  The integral runs over
the chart box r in (0, R_max], theta in [0, pi], phi, psi in [0, 2 pi],
split at theta = pi/2 between the two anchored charts, and is evaluated by
box-adaptive 15^4 Kronrod cubature.  The r-dependent weights do not depend
on f, so several boundary functions share one cubature.

kappa is fixed by requiring u = 1 for f = 1 at t = 0 and is then checked at
ten further points.  A classical Poisson integral serves as the
independent reference.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import quadrature as quad
from ..errors import CalibrationError, ConvergenceError, DomainError
from ..sphere_geom import align_rotation, sphere_from_angles
from . import _backend
from .boundary import BoundaryFunction, LIBRARY
from .cone import JACOBIAN_STEP, NORTH, SOUTH, direction

DEFAULT_R_MAX = 40.0
DEFAULT_TOL = 1e-5
# interior cuts in r where the integrand changes character (e^-r scale)
R_SPLITS = (2.0, 6.0, 15.0)
MAX_BOXES = 3000
# exp(-i z.t) averages to 1 over the cone, so f = 1 gives 8 pi^2 before kappa
RAW_SCALE = 8 * math.pi**2
PRINTED_CONSTANT = 1.0 / (2 * (2 * math.pi) ** 2)

# f = 1 must give 1 here after calibration at the origin
STABILITY_POINTS = (
    (0.5, 0.0, 0.0),
    (0.0, -0.4, 0.0),
    (0.0, 0.0, 0.55),
    (0.2, 0.2, -0.2),
    (-0.3, 0.1, 0.25),
    (0.1, -0.45, 0.3),
    (-0.25, -0.25, -0.25),
    (0.05, 0.5, -0.1),
    (-0.5, 0.15, 0.1),
    (0.33, -0.12, -0.41),
)
STABILITY_TOL = 1e-3


@dataclass(frozen=True)
class SuperpositionResult:
    """Per-function results of one cubature run at a point t."""

    names: tuple
    t: tuple
    raw: tuple  # complex integrals before kappa
    raw_abs_errors: tuple
    kappa: float | None
    n_boxes: int
    n_evals: int
    converged: bool

    @property
    def values(self) -> tuple:
        if self.kappa is None:
            raise ValueError("result was computed without a normalization")
        return tuple(self.kappa * v.real for v in self.raw)

    @property
    def abs_errors(self) -> tuple:
        k = 1.0 if self.kappa is None else self.kappa
        return tuple(k * e for e in self.raw_abs_errors)

    @property
    def imag_ratios(self) -> tuple:
        """|Im| / |Re| of each raw integral (inf when Re vanishes)."""
        return tuple(abs(v.imag) / abs(v.real) if v.real else math.inf for v in self.raw)


def _check_point(t) -> np.ndarray:
    t = np.asarray(t, dtype=float).ravel()
    if t.size != 3:
        raise DomainError(f"t must be a point of R^3, got {t.size} components")
    if not np.all(np.isfinite(t)) or np.linalg.norm(t) >= 1:
        raise DomainError(f"t must lie in the open unit ball, |t| = {np.linalg.norm(t)}")
    return t


def _as_functions(fs) -> list[BoundaryFunction]:
    if isinstance(fs, (BoundaryFunction, str)):
        fs = [fs]
    out = []
    for f in fs:
        if isinstance(f, str):
            f = LIBRARY[f] if f in LIBRARY else None
            if f is None:
                raise DomainError(f"unknown boundary function; choose from {sorted(LIBRARY)}")
        elif not isinstance(f, BoundaryFunction):
            f = BoundaryFunction(getattr(f, "__name__", "f"), f)
        out.append(f)
    return out


def raw_superposition(fs, t, tol: float = DEFAULT_TOL, r_max: float = DEFAULT_R_MAX,
                      kernel=None, max_boxes: int = MAX_BOXES) -> SuperpositionResult:
    """Unnormalized cone integrals for one or more boundary functions at t.

    ``tol`` is relative to each value, with an absolute floor of
    ``tol * 8 pi^2`` (the size of the f = 1 integral) so data whose
    extension vanishes at t still terminates.
    """
    fs = _as_functions(fs)
    t = _check_point(t)
    if not r_max > 0:
        raise DomainError(f"r_max must be positive, got {r_max}")
    kernel = kernel or _backend.weight_grid
    nodes = quad.NODES15

    def rule(lo, hi):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        r, th, ph, ps = (mid[j] + half[j] * nodes for j in range(4))
        anchor = NORTH if hi[1] <= 0.5 * math.pi else SOUTH
        w = kernel(r, th, ph, ps, t, anchor, JACOBIAN_STEP)
        omega = direction(th[:, None], ph[None, :])
        data = np.stack([f(omega) for f in fs])  # (m, theta, phi)
        vals, errs = quad.contract_tensor_rule(w[None] * data[:, None, :, :, None], half)
        return vals, errs, nodes.size**4

    box = [(0.0, r_max), (0.0, math.pi), (0.0, 2 * math.pi), (0.0, 2 * math.pi)]
    splits = [[c for c in R_SPLITS if c < r_max], [0.5 * math.pi], [], []]
    res = quad.cubature_adaptive(rule, box, quad.Tolerance(tol * RAW_SCALE, tol),
                                 initial_splits=splits, max_boxes=max_boxes)
    return SuperpositionResult(
        names=tuple(f.name for f in fs),
        t=tuple(float(c) for c in t),
        raw=tuple(complex(v) for v in res.values),
        raw_abs_errors=tuple(float(e) for e in res.abs_errors),
        kappa=None,
        n_boxes=res.n_boxes,
        n_evals=res.n_evals,
        converged=res.converged,
    )


@dataclass(frozen=True)
class Calibration:
    kappa: float
    ratio_to_printed: float  # kappa / (1 / (2 (2 pi)^2))
    stability_values: tuple  # f = 1 at STABILITY_POINTS after scaling by kappa
    max_deviation: float


def measure_calibration(tol: float = DEFAULT_TOL, r_max: float = DEFAULT_R_MAX) -> Calibration:
    """kappa from f = 1 at the origin and the f = 1 values it gives at STABILITY_POINTS."""
    one = LIBRARY["one"]
    base = raw_superposition([one], (0.0, 0.0, 0.0), tol, r_max)
    if not base.converged:
        raise ConvergenceError("calibration integral at t = 0 did not converge")
    kappa = 1.0 / base.raw[0].real
    values = []
    for p in STABILITY_POINTS:
        res = raw_superposition([one], p, tol, r_max)
        if not res.converged:
            raise ConvergenceError(f"calibration check at t = {p} did not converge")
        values.append(kappa * res.raw[0].real)
    dev = max(abs(v - 1.0) for v in values)
    return Calibration(kappa, kappa / PRINTED_CONSTANT, tuple(values), dev)


def calibration_report(tol: float = DEFAULT_TOL, r_max: float = DEFAULT_R_MAX) -> Calibration:
    """Stability-checked calibration, cached per (tol, r_max).

    Raises CalibrationError if any stability value misses 1 by more than
    1e-3: that signals a wrong measure, not a constant to tune.
    """
    return _cached_calibration(float(tol), float(r_max))


@functools.lru_cache(maxsize=8)
def _cached_calibration(tol: float, r_max: float) -> Calibration:
    cal = measure_calibration(tol, r_max)
    if not cal.kappa > 0 or cal.max_deviation > STABILITY_TOL:
        devs = [abs(v - 1.0) for v in cal.stability_values]
        worst = STABILITY_POINTS[int(np.argmax(devs))]
        raise CalibrationError(
            f"normalization unstable: kappa = {cal.kappa!r} gives f = 1 -> {cal.stability_values} "
            f"(worst at t = {worst}, deviation {cal.max_deviation:.3g} > {STABILITY_TOL}); "
            "check the cone measure"
        )
    return cal


def calibrate_normalization(tol: float = DEFAULT_TOL, r_max: float = DEFAULT_R_MAX) -> float:
    """kappa making the f = 1 superposition equal 1 (stability-checked)."""
    return calibration_report(tol, r_max).kappa


def superposition_many(fs, t, tol: float = DEFAULT_TOL, r_max: float = DEFAULT_R_MAX,
                       kappa: float | None = None, kernel=None) -> SuperpositionResult:
    """Calibrated superposition values for several boundary functions at t."""
    if kappa is None:
        kappa = calibrate_normalization(tol, r_max)
    res = raw_superposition(fs, t, tol, r_max, kernel)
    return SuperpositionResult(res.names, res.t, res.raw, res.raw_abs_errors, kappa,
                               res.n_boxes, res.n_evals, res.converged)


def harmonic_superposition(f, t, tol: float = DEFAULT_TOL, r_max: float = DEFAULT_R_MAX,
                           kappa: float | None = None) -> float:
    """u(t) for boundary data f from the null-cone superposition.

    Raises ConvergenceError if the cubature stops short of ``tol`` or the
    imaginary part, which cancels in exact arithmetic, exceeds
    ``tol * max(|Re|, 8 pi^2)``.
    """
    res = superposition_many([f], t, tol, r_max, kappa)
    if not res.converged:
        raise ConvergenceError(
            f"superposition cubature did not converge at t = {res.t} "
            f"(error estimate {res.raw_abs_errors[0]:.3g} after {res.n_boxes} boxes)"
        )
    raw = res.raw[0]
    if abs(raw.imag) > tol * max(abs(raw.real), RAW_SCALE):
        raise ConvergenceError(
            f"imaginary part {raw.imag:.3g} did not cancel (real part {raw.real:.3g})"
        )
    return res.values[0]


def poisson_oracle(f, t, tol=None) -> quad.QuadResult:
    """Poisson integral (1 - |t|^2)/(4 pi) int_{S^2} f(xi) / |t - xi|^3 dxi.

    The sphere is parametrized with its polar axis along t, so the kernel
    depends on the polar angle only.
    """
    (f,) = _as_functions([f])
    t = _check_point(t)
    tol = quad.as_tolerance(tol if tol is not None else quad.Tolerance(1e-10, 1e-10))
    norm = float(np.linalg.norm(t))
    g = align_rotation(t) if norm > 0 else np.eye(3)
    pref = (1.0 - norm * norm) / (4 * math.pi)

    def integrand(theta, phi):
        eta = sphere_from_angles(np.stack(np.broadcast_arrays(theta, phi), axis=-1), check=False)
        xi = eta @ g.T
        dist2 = 1.0 - 2.0 * norm * np.cos(theta) + norm * norm
        return pref * f(xi) * np.sin(theta) / dist2**1.5

    res = quad.integrate_tensor(integrand, [(0.0, math.pi), (0.0, 2 * math.pi)], tol)
    return res


def poisson_value(f, t, tol=None) -> float:
    res = poisson_oracle(f, t, tol)
    if not res.converged:
        raise ConvergenceError(f"Poisson integral did not converge at t = {tuple(t)}")
    return res.value.real


__all__: Sequence[str] = (
    "DEFAULT_R_MAX",
    "DEFAULT_TOL",
    "Calibration",
    "SuperpositionResult",
    "calibrate_normalization",
    "calibration_report",
    "measure_calibration",
    "harmonic_superposition",
    "poisson_oracle",
    "poisson_value",
    "raw_superposition",
    "superposition_many",
)
