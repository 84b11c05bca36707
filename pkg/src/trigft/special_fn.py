"""Double factorial, Gamma, Beta and the Wallis integrals.

The Wallis integral of order n is the integral of sin(theta)**n over
[0, pi].  It has the parity closed forms

    2 (n-1)!! / n!!     (n odd)
    pi (n-1)!! / n!!    (n even)

with (-1)!! = 0!! = 1, and the Beta form 2**n B((n+1)/2, (n+1)/2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy import special as _sp

from .errors import DomainError

# Orders above this use the floating recurrence instead of exact integers.
WALLIS_EXACT_MAX = 400
# Largest order for which the Beta cross-check is evaluated without underflow.
_BETA_CHECK_MAX = 1000
_WALLIS_CHECK_RTOL = 1e-13


@dataclass(frozen=True)
class WallisValue:
    """Value of the Wallis integral of order ``n``."""

    n: int
    value: float

    def __float__(self):
        return self.value


def double_factorial(k: int) -> int:
    """Return k!! as an exact integer, with (-1)!! = 0!! = 1."""
    if isinstance(k, bool) or int(k) != k:
        raise DomainError(f"double factorial needs an integer, got {k!r}")
    k = int(k)
    if k < -1:
        raise DomainError(f"double factorial undefined for k={k} < -1")
    result = 1
    for j in range(k, 1, -2):
        result *= j
    return result


def _is_half_integer(x: float) -> bool:
    return x > 0 and (2 * x) == int(2 * x)


def _gamma_half_integer(x: float) -> float:
    # Gamma(m/2): integer m even -> (m/2 - 1)!, m odd -> sqrt(pi) (m-2)!! / 2**((m-1)/2)
    m = int(2 * x)
    if m % 2 == 0:
        return float(math.factorial(m // 2 - 1))
    return math.sqrt(math.pi) * double_factorial(m - 2) / 2 ** ((m - 1) // 2)


def gamma_fn(x):
    """Gamma function for real x > 0 or complex x with Re x > 0.

    Integer and half-integer arguments go through exact factorials so the
    values the package relies on (Gamma((n+1)/2)) are as accurate as a
    single rounding allows.
    """
    if isinstance(x, complex) and x.imag == 0:
        x = x.real
    if isinstance(x, complex):
        if x.real <= 0:
            raise DomainError(f"gamma_fn needs Re x > 0, got {x}")
        return cmath.exp(complex(_sp.loggamma(x)))
    x = float(x)
    if not x > 0:
        raise DomainError(f"gamma_fn needs x > 0, got {x}")
    if _is_half_integer(x) and x < 170:
        return _gamma_half_integer(x)
    return math.gamma(x)


def beta_fn(x, y):
    """Euler Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).

    Real arguments use the direct Gamma ratio while x + y stays below the
    overflow point of Gamma and log-Gammas beyond it.  Complex arguments use
    the direct ratio.
    """
    if isinstance(x, complex) or isinstance(y, complex):
        x, y = complex(x), complex(y)
        if x.real <= 0 or y.real <= 0:
            raise DomainError(f"beta_fn needs Re x, Re y > 0, got {x}, {y}")
        if x.imag == 0 and y.imag == 0:
            return complex(beta_fn(x.real, y.real))
        return gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y)
    x, y = float(x), float(y)
    if not (x > 0 and y > 0):
        raise DomainError(f"beta_fn needs x, y > 0, got {x}, {y}")
    if x + y < 170:
        return gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y)
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def wallis_beta_form(n: int) -> float:
    """2**n B((n+1)/2, (n+1)/2), evaluated in log space past overflow."""
    h = (n + 1) / 2
    if n + 1 < 170:
        return 2.0**n * beta_fn(h, h)
    return math.exp(n * math.log(2.0) + 2 * math.lgamma(h) - math.lgamma(2 * h))


def _beta_form_rtol(n: int) -> float:
    if n + 1 < 170:
        return _WALLIS_CHECK_RTOL
    # exp() of a sum of large logs inherits their absolute rounding error
    h = (n + 1) / 2
    scale = n * math.log(2.0) + 2 * math.lgamma(h) + math.lgamma(2 * h)
    return max(_WALLIS_CHECK_RTOL, 8 * 2.0**-52 * scale)


def _wallis_parity(n: int) -> float:
    if n <= WALLIS_EXACT_MAX:
        ratio = float(Fraction(double_factorial(n - 1), double_factorial(n)))
    else:
        # same recurrence as the exact ratio: prod (k-1)/k over k = n, n-2, ...
        ratio = 1.0
        for k in range(n, 1, -2):
            ratio *= (k - 1) / k
    return (2.0 if n % 2 else math.pi) * ratio


def wallis(n: int) -> WallisValue:
    """Wallis integral of order n via the parity closed form.

    The Beta form is evaluated alongside as an internal consistency check.
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"wallis needs an integer n >= 0, got {n!r}")
    n = int(n)
    value = _wallis_parity(n)
    if n <= _BETA_CHECK_MAX:
        beta_value = wallis_beta_form(n)
        if abs(value - beta_value) > _beta_form_rtol(n) * value:
            raise ArithmeticError(
                f"Wallis parity form {value!r} and Beta form {beta_value!r} disagree at n={n}"
            )
    return WallisValue(n, value)
