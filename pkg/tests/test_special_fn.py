import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from trigft.errors import DomainError
from trigft.quadrature import integrate_interval
from trigft.special_fn import (
    WALLIS_EXACT_MAX,
    beta_fn,
    double_factorial,
    gamma_fn,
    wallis,
    wallis_beta_form,
)

import numpy as np


@pytest.mark.parametrize("k, want", [(-1, 1), (0, 1), (1, 1), (7, 105), (8, 384), (10, 3840)])
def test_double_factorial_values(k, want):
    assert double_factorial(k) == want


def test_double_factorial_is_exact_for_large_arguments():
    # far beyond 64-bit range, still an exact integer
    v = double_factorial(301)
    assert isinstance(v, int)
    assert v == math.prod(range(301, 0, -2))


@pytest.mark.parametrize("k", [-2, -5, 2.5, "3"])
def test_double_factorial_rejects_bad_input(k):
    with pytest.raises(DomainError):
        double_factorial(k)


@given(st.integers(min_value=1, max_value=300))
def test_double_factorial_recurrence(k):
    assert double_factorial(k) == k * double_factorial(k - 2)


def test_gamma_known_values():
    assert gamma_fn(1) == 1.0
    assert gamma_fn(2) == 1.0
    # integral of t^-1/2 e^-t over (0, inf), evaluated with mpmath to 30 digits
    assert gamma_fn(0.5) == pytest.approx(1.77245385090551601317, rel=1e-15)


@pytest.mark.parametrize("k", range(0, 40))
def test_gamma_half_integers_within_4_ulp(k):
    x = k + 0.5
    # Gamma(k + 1/2) = (2k-1)!! sqrt(pi) / 2^k
    want = double_factorial(2 * k - 1) * math.sqrt(math.pi) / 2**k
    assert abs(gamma_fn(x) - want) <= 4 * math.ulp(want)


@given(st.floats(min_value=0.5, max_value=30.0))
def test_gamma_functional_equation(x):
    assert gamma_fn(x + 1) == pytest.approx(x * gamma_fn(x), rel=1e-13)


def test_gamma_complex_argument():
    z = 1.5 + 0.5j
    g = gamma_fn(z)
    assert isinstance(g, complex)
    assert gamma_fn(z + 1) == pytest.approx(z * g, rel=1e-13)
    assert abs(gamma_fn(z.conjugate()) - g.conjugate()) <= 1e-14 * abs(g)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, 0.0 + 1j, -2 + 3j])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma_fn(x)


@pytest.mark.parametrize(
    "x, y, want",
    [(1, 1, 1.0), (1.5, 1.5, math.pi / 8), (0.5, 0.5, math.pi)],
)
def test_beta_values(x, y, want):
    assert beta_fn(x, y) == pytest.approx(want, rel=1e-15)


def test_beta_large_arguments_go_through_logs():
    # B(200, 200) underflows nothing but the direct Gamma ratio would overflow
    v = beta_fn(200.0, 200.0)
    ref = math.exp(2 * math.lgamma(200.0) - math.lgamma(400.0))
    assert v == pytest.approx(ref, rel=1e-12)


@given(st.floats(0.1, 40), st.floats(0.1, 40))
def test_beta_symmetry_and_recurrence(x, y):
    assert beta_fn(x, y) == pytest.approx(beta_fn(y, x), rel=1e-14)
    # B(x+1, y) = B(x, y) x / (x + y)
    assert beta_fn(x + 1, y) == pytest.approx(beta_fn(x, y) * x / (x + y), rel=1e-12)


def test_beta_domain():
    with pytest.raises(DomainError):
        beta_fn(-1.0, 2.0)


@pytest.mark.parametrize("n, want", [(0, math.pi), (1, 2.0), (2, math.pi / 2), (4, 3 * math.pi / 8)])
def test_wallis_values(n, want):
    w = wallis(n)
    assert w.n == n
    assert w.value == pytest.approx(want, rel=1e-15)


def test_wallis_4_against_quadrature():
    # mpmath quad of sin^4 over [0, pi]
    assert wallis(4).value == pytest.approx(1.17809724509617246442, rel=1e-15)


@pytest.mark.parametrize("n", range(0, 61))
def test_wallis_matches_beta_form(n):
    w = wallis(n).value
    assert abs(w - 2.0**n * beta_fn((n + 1) / 2, (n + 1) / 2)) <= 1e-12 * w
    assert abs(w - wallis_beta_form(n)) <= 4 * math.ulp(w)


@pytest.mark.parametrize("n", range(0, 21))
def test_wallis_matches_quadrature(n):
    res = integrate_interval(lambda x: np.sin(x) ** n, 0.0, math.pi)
    assert res.converged
    assert abs(res.value.real - wallis(n).value) <= 1e-11 * wallis(n).value


@pytest.mark.parametrize("n", range(2, 61))
def test_wallis_recurrence(n):
    assert wallis(n).value == pytest.approx((n - 1) / n * wallis(n - 2).value, rel=1e-13)


def test_wallis_exact_ratio():
    # the parity form is an exact rational multiple of pi or 2
    n = 10
    ratio = Fraction(double_factorial(n - 1), double_factorial(n))
    assert wallis(n).value == pytest.approx(math.pi * float(ratio), rel=1e-16)


@given(st.integers(min_value=1, max_value=2000))
def test_wallis_positive_and_decreasing(n):
    assert 0 < wallis(n).value < wallis(n - 1).value


def test_wallis_continuous_across_exact_threshold():
    n = WALLIS_EXACT_MAX
    for k in (n - 1, n, n + 1, n + 2):
        assert wallis(k).value == pytest.approx((k - 1) / k * wallis(k - 2).value, rel=1e-13)


@pytest.mark.parametrize("n", [-1, 2.5])
def test_wallis_domain(n):
    with pytest.raises(DomainError):
        wallis(n)
