"""Trigonometric integrals over [0, pi] and their closed forms.

Four integrand families share the Wallis normalization:

    real_b       sin^n x / (a + b cos x)^(n+1),          a > b > 0
    imaginary_p  sin^n x / (a + i p cos x)^(n+1),        a > 0, p real
    sqrt_form    sin^n x / (sqrt a + sqrt b cos x)^(n+1), a > b > 0
    real_b, mu   sin^(mu-1) x / (a + b cos x)^mu,        Re mu > 0

Besides the closed forms, this module holds finite-difference probes of
the structure behind them: the sqrt-form integral depends on a - b only,
it is homogeneous of degree -(n+1)/2 under (a, b) -> (la, lb), and the
real-b family satisfies (b d/db + n) I_n = (1/n) d^2/da^2 I_{n-2}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np

from . import quadrature as quad
from .errors import DomainError
from .special_fn import beta_fn, wallis

REAL_B = "real_b"
IMAGINARY_P = "imaginary_p"
SQRT_FORM = "sqrt_form"
B_KINDS = (REAL_B, IMAGINARY_P, SQRT_FORM)

# Imaginary-parameter integrands cancel heavily once p >> a (the integral
# can sit 1e9 below the integrand's L1 norm), so they run in mpmath.
IMAGINARY_P_DPS = 30
IMAGINARY_P_TOL = quad.Tolerance(0.0, 1e-13)
# Probes difference nearby quadratures, so they ask for more than the default.
PROBE_TOL = quad.Tolerance(0.0, 1e-14)


def _is_int_order(order) -> bool:
    return isinstance(order, Integral) and not isinstance(order, bool)


@dataclass(frozen=True)
class TrigSpec:
    """One instance of the integral family.

    ``order`` is a non-negative integer n, or a complex mu (only with
    ``b_kind='real_b'``).  ``b`` is b for real_b/sqrt_form and p for
    imaginary_p.
    """

    order: int | complex
    a: float
    b: float
    b_kind: str = REAL_B

    def __post_init__(self):
        if self.b_kind not in B_KINDS:
            raise DomainError(f"b_kind must be one of {B_KINDS}, got {self.b_kind!r}")
        if not self.a > 0:
            raise DomainError(f"a must be positive, got {self.a}")
        if _is_int_order(self.order):
            if self.order < 0:
                raise DomainError(f"order n must be >= 0, got {self.order}")
        else:
            if self.b_kind != REAL_B:
                raise DomainError("a non-integer order mu is only defined for b_kind='real_b'")
            if not complex(self.order).real > 0:
                raise DomainError(f"order mu needs Re mu > 0, got {self.order}")
        if self.b_kind in (REAL_B, SQRT_FORM) and not self.a > self.b > 0:
            raise DomainError(f"{self.b_kind} needs a > b > 0, got a={self.a}, b={self.b}")

    @property
    def is_integer_order(self) -> bool:
        return _is_int_order(self.order)

    def p(self) -> float:
        """a - b, the variable the sqrt-form integral actually depends on."""
        if self.b_kind == IMAGINARY_P:
            raise DomainError("p = a - b is not defined for imaginary_p specs")
        return self.a - self.b

    def q(self) -> float:
        if self.b_kind == IMAGINARY_P:
            raise DomainError("q = a + b is not defined for imaginary_p specs")
        return self.a + self.b


def _check_real_pair(a, b, name):
    if not a > b > 0:
        raise DomainError(f"{name} needs a > b > 0, got a={a}, b={b}")


def _check_order(n):
    if not _is_int_order(n) or n < 0:
        raise DomainError(f"order n must be an integer >= 0, got {n!r}")


def trig_closed_real(n: int, a: float, b: float) -> float:
    """gamma_n / (a^2 - b^2)^((n+1)/2) for a > b > 0."""
    _check_order(n)
    _check_real_pair(a, b, "trig_closed_real")
    return wallis(n).value / (a * a - b * b) ** ((n + 1) / 2)


def trig_closed_complex(n: int, a: float, p: float) -> complex:
    """gamma_n / (a^2 + p^2)^((n+1)/2) for a > 0 and any real p.

    This is the real-b formula continued to b = i p, so the result is
    real; it is returned as a complex number with zero imaginary part.
    """
    _check_order(n)
    if not a > 0:
        raise DomainError(f"trig_closed_complex needs a > 0, got a={a}")
    return complex(wallis(n).value / (a * a + p * p) ** ((n + 1) / 2), 0.0)


def trig_closed_sqrt(n: int, a: float, b: float) -> float:
    """gamma_n / (a - b)^((n+1)/2): the sqrt-form integral, a > b > 0."""
    _check_order(n)
    _check_real_pair(a, b, "trig_closed_sqrt")
    return wallis(n).value / (a - b) ** ((n + 1) / 2)


def trig_closed_general(mu, a: float, b: float) -> complex:
    """2^(mu-1) B(mu/2, mu/2) / (a^2 - b^2)^(mu/2) for Re mu > 0, a > b > 0.

    a^2 - b^2 is positive, so its power is taken through the real logarithm.
    """
    mu = complex(mu)
    if not mu.real > 0:
        raise DomainError(f"trig_closed_general needs Re mu > 0, got {mu}")
    _check_real_pair(a, b, "trig_closed_general")
    log_base = math.log(a * a - b * b)
    return 2 ** (mu - 1) * complex(beta_fn(mu / 2, mu / 2)) * cmath.exp(-mu / 2 * log_base)


def closed_form(spec: TrigSpec) -> complex:
    """Closed form matching :func:`trig_quadrature` for the same spec."""
    if not spec.is_integer_order:
        return trig_closed_general(spec.order, spec.a, spec.b)
    if spec.b_kind == REAL_B:
        return complex(trig_closed_real(spec.order, spec.a, spec.b))
    if spec.b_kind == SQRT_FORM:
        return complex(trig_closed_sqrt(spec.order, spec.a, spec.b))
    return trig_closed_complex(spec.order, spec.a, spec.b)


# ---------------------------------------------------------------------------
# quadrature oracle


def _integer_integrand(spec: TrigSpec):
    n, a, b = spec.order, spec.a, spec.b
    if spec.b_kind == SQRT_FORM:
        a, b = math.sqrt(a), math.sqrt(b)

    def f(x):
        return np.sin(x) ** n / (a + b * np.cos(x)) ** (n + 1)

    return f


def _imaginary_integrand_mp(spec: TrigSpec):
    import mpmath

    n, a, p = spec.order, spec.a, spec.b

    def f(xs):
        return [mpmath.sin(x) ** n / mpmath.mpc(a, p * mpmath.cos(x)) ** (n + 1) for x in xs]

    return f


def _imaginary_integrand(spec: TrigSpec):
    n, a, p = spec.order, spec.a, spec.b

    def f(x):
        return np.sin(x) ** n / (a + 1j * p * np.cos(x)) ** (n + 1)

    return f


def _mu_halves(spec: TrigSpec):
    """The mu integrand on [0, pi/2] in a variable s with y = s^m.

    Returns (left, right, s_max): x = y on the left half and x = pi - y on
    the right half, so both endpoint singularities of sin^(mu-1) sit at
    s = 0, where sin y is computed without cancellation.  m = ceil(1/Re mu)
    turns y^(mu-1) dy into a bounded s^(m mu - 1) ds factor.
    """
    mu = complex(spec.order)
    a, b = spec.a, spec.b
    m = max(1, math.ceil(1.0 / mu.real - 1e-12))

    def make(sign):
        def f(s):
            y = s**m
            jac = m * s ** (m - 1)
            return np.sin(y) ** (mu - 1) / (a + sign * b * np.cos(y)) ** mu * jac

        return f

    return make(1.0), make(-1.0), (math.pi / 2) ** (1.0 / m)


def trig_quadrature(spec: TrigSpec, tol=None, dps: int | None = None) -> quad.QuadResult:
    """Direct adaptive quadrature of the integral described by ``spec``.

    Integer orders integrate over [0, pi] as written.  imaginary_p specs
    default to mpmath arithmetic (``IMAGINARY_P_DPS`` digits, relative
    tolerance only); pass ``dps=0`` to force double precision.  Complex or
    fractional orders are split at pi/2 and reflected so the endpoint
    singularities are integrated with a power substitution.
    """
    if spec.is_integer_order:
        if spec.b_kind == IMAGINARY_P:
            use_dps = IMAGINARY_P_DPS if dps is None else dps
            if use_dps:
                return quad.integrate_interval(
                    _imaginary_integrand_mp(spec), 0.0, math.pi,
                    IMAGINARY_P_TOL if tol is None else tol, dps=use_dps,
                )
            return quad.integrate_interval(_imaginary_integrand(spec), 0.0, math.pi, tol)
        return quad.integrate_interval(_integer_integrand(spec), 0.0, math.pi, tol)

    left, right, s_max = _mu_halves(spec)
    tol = quad.as_tolerance(tol)
    half_tol = quad.Tolerance(tol.abs_tol / 2, tol.rel_tol)
    r1 = quad.integrate_interval(left, 0.0, s_max, half_tol)
    r2 = quad.integrate_interval(right, 0.0, s_max, half_tol)
    value = r1.value + r2.value
    err = r1.abs_error_estimate + r2.abs_error_estimate
    return quad.QuadResult(
        value=value,
        abs_error_estimate=err,
        n_evals=r1.n_evals + r2.n_evals,
        converged=r1.converged and r2.converged and err <= tol.bound(value),
        n_intervals=r1.n_intervals + r2.n_intervals,
    )


def _F_sqrt(n, a, b, tol=PROBE_TOL) -> float:
    return trig_quadrature(TrigSpec(n, a, b, SQRT_FORM), tol).value.real


def _F_real(n, a, b, tol=PROBE_TOL) -> float:
    return trig_quadrature(TrigSpec(n, a, b, REAL_B), tol).value.real


def default_step(a: float, b: float) -> float:
    return 1e-3 * min(a - b, b)


# ---------------------------------------------------------------------------
# hidden symmetry: the sqrt-form integral depends on p = a - b alone


def _check_stencil(a, b, reach):
    if not (b - reach > 0 and a - reach > b + reach):
        raise DomainError(f"stencil of half-width {reach} leaves a > b > 0 at a={a}, b={b}")


def hidden_symmetry_residual(n: int, a: float, b: float, h: float | None = None) -> float:
    """Central difference of the sqrt-form integral along q = a + b, p fixed.

    [F(a + h/2, b + h/2) - F(a - h/2, b - h/2)] / h.  The exact value is 0.
    """
    _check_order(n)
    _check_real_pair(a, b, "hidden_symmetry_residual")
    h = default_step(a, b) if h is None else float(h)
    _check_stencil(a, b, h / 2)
    return (_F_sqrt(n, a + h / 2, b + h / 2) - _F_sqrt(n, a - h / 2, b - h / 2)) / h


def p_direction_derivative(n: int, a: float, b: float, h: float | None = None) -> float:
    """Central difference of the sqrt-form integral along p = a - b, q fixed.

    Serves as the contrast probe: this derivative is -(n+1)/2 F / p, far
    from zero, so a vanishing q-residual is not an artefact of the stencil.
    """
    _check_order(n)
    _check_real_pair(a, b, "p_direction_derivative")
    h = default_step(a, b) if h is None else float(h)
    _check_stencil(a, b, h / 2)
    # moving p by h at fixed q shifts a by h/2 and b by -h/2
    return (_F_sqrt(n, a + h / 4, b - h / 4) - _F_sqrt(n, a - h / 4, b + h / 4)) / h


@dataclass(frozen=True)
class SymmetryProbe:
    """Hidden-symmetry residuals under step halving plus the p-direction contrast."""

    n: int
    a: float
    b: float
    value: float
    steps: tuple
    q_residuals: tuple
    p_derivatives: tuple
    noise_floor: float

    @property
    def p_rate(self) -> float:
        """Ratio of successive p-derivative differences; ~4 for O(h^2)."""
        d = self.p_derivatives
        return abs(d[0] - d[1]) / abs(d[1] - d[2])

    @property
    def richardson_q(self) -> float:
        r = self.q_residuals
        return (4 * r[1] - r[0]) / 3


def symmetry_probe(n: int, a: float, b: float, h: float | None = None) -> SymmetryProbe:
    """Evaluate both directional differences at h, h/2 and h/4.

    ``noise_floor`` bounds what the q-residual can show once truncation is
    gone: two quadratures with relative error PROBE_TOL divided by the
    smallest step.
    """
    h = default_step(a, b) if h is None else float(h)
    steps = (h, h / 2, h / 4)
    value = _F_sqrt(n, a, b)
    q_res = tuple(hidden_symmetry_residual(n, a, b, s) for s in steps)
    p_der = tuple(p_direction_derivative(n, a, b, s) for s in steps)
    floor = 2 * PROBE_TOL.rel_tol * abs(value) / steps[-1]
    return SymmetryProbe(n, a, b, value, steps, q_res, p_der, floor)


# ---------------------------------------------------------------------------
# recurrence (b d/db + n) I_n = (1/n) d^2/da^2 I_{n-2}


@dataclass(frozen=True)
class RecurrenceSides:
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def euler_recurrence_sides(n: int, a: float, b: float, h: float | None = None) -> RecurrenceSides:
    """Both sides of the recurrence from quadrature and central differences."""
    if not _is_int_order(n) or n < 2:
        raise DomainError(f"the recurrence needs an integer n >= 2, got {n!r}")
    _check_real_pair(a, b, "euler_recurrence_residual")
    h = default_step(a, b) if h is None else float(h)
    _check_stencil(a, b, h)
    i_n = _F_real(n, a, b)
    d_b = (_F_real(n, a, b + h) - _F_real(n, a, b - h)) / (2 * h)
    lhs = b * d_b + n * i_n
    d2_a = (_F_real(n - 2, a + h, b) - 2 * _F_real(n - 2, a, b) + _F_real(n - 2, a - h, b)) / h**2
    rhs = d2_a / n
    return RecurrenceSides(lhs, rhs)


def euler_recurrence_residual(n: int, a: float, b: float, h: float | None = None) -> float:
    """|LHS - RHS| of the recurrence, derivatives by central differences."""
    return euler_recurrence_sides(n, a, b, h).residual


def euler_recurrence_closed(n: int, a: float, b: float) -> RecurrenceSides:
    """Both sides with I_k = gamma_k (a^2 - b^2)^(-(k+1)/2) differentiated by hand.

    b dI_n/db = (n+1) b^2 gamma_n D^(-(n+3)/2) with D = a^2 - b^2, and
    d^2/da^2 of gamma_{n-2} D^(-(n-1)/2) is (n-1) gamma_{n-2} (n a^2 + b^2) D^(-(n+3)/2).
    """
    if not _is_int_order(n) or n < 2:
        raise DomainError(f"the recurrence needs an integer n >= 2, got {n!r}")
    _check_real_pair(a, b, "euler_recurrence_closed")
    D = a * a - b * b
    g_n = wallis(n).value
    g_m = wallis(n - 2).value
    lhs = (n + 1) * b * b * g_n * D ** (-(n + 3) / 2) + n * g_n * D ** (-(n + 1) / 2)
    rhs = (n - 1) * g_m * (n * a * a + b * b) * D ** (-(n + 3) / 2) / n
    return RecurrenceSides(lhs, rhs)


# ---------------------------------------------------------------------------
# homogeneity and the large-a limit

HOMOGENEITY_SCALES = (0.5, 1.0, 2.0, 4.0)


def homogeneity_exponent(n: int, a: float, b: float) -> float:
    """Least-squares slope of log F(la, lb) against log l (sqrt form).

    The integral is positively homogeneous, so the slope is its degree.
    """
    _check_order(n)
    _check_real_pair(a, b, "homogeneity_exponent")
    log_l = np.log(HOMOGENEITY_SCALES)
    log_f = np.log([_F_sqrt(n, lam * a, lam * b) for lam in HOMOGENEITY_SCALES])
    slope, _ = np.polyfit(log_l, log_f, 1)
    return float(slope)


def limit_defect(n: int, a: float, b: float = 1.0) -> float:
    """|a^((n+1)/2) F(a, b) - gamma_n| with F the sqrt-form quadrature."""
    _check_order(n)
    _check_real_pair(a, b, "limit_defect")
    return abs(a ** ((n + 1) / 2) * _F_sqrt(n, a, b) - wallis(n).value)
