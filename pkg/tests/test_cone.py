import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trigft.errors import ChartSingularityError, DomainError
from trigft.harmonic import cone
from trigft.harmonic.cone import NORTH, SOUTH, ConeChart

radii = st.floats(0.05, 30)
psis = st.floats(0, 2 * math.pi)
phis = st.floats(0, 2 * math.pi)


@st.composite
def charts(draw):
    theta = draw(st.floats(0, math.pi))
    return ConeChart.for_direction(draw(radii), theta, draw(phis), draw(psis))


@st.composite
def interior_charts(draw):
    # keep clear of the poles, where the spherical angles themselves degenerate
    theta = draw(st.floats(0.05, math.pi - 0.05))
    return ConeChart.for_direction(draw(radii), theta, draw(phis), draw(psis))


class TestParametrization:
    def test_examples(self):
        p = cone.null_cone_param(ConeChart(1.0, 0.0, 0.0, 0.0))
        np.testing.assert_allclose(p.y, [0, 0, 1], atol=1e-15)
        np.testing.assert_allclose(p.x, [1, 0, 0], atol=1e-15)
        p = cone.null_cone_param(ConeChart(2.0, 0.0, 0.0, math.pi / 2))
        np.testing.assert_allclose(p.x, [0, 2, 0], atol=1e-15)
        np.testing.assert_allclose(p.y, [0, 0, 2], atol=1e-15)

    @given(charts())
    def test_points_lie_on_cone(self, chart):
        p = cone.null_cone_param(chart)
        nx, ny = np.linalg.norm(p.x), np.linalg.norm(p.y)
        assert abs(nx - ny) <= 1e-12 * ny
        assert abs(p.x @ p.y) <= 1e-12 * nx * ny
        assert abs(p.square()) <= 1e-12 * chart.r**2
        assert ny == pytest.approx(chart.r, rel=1e-14)

    @given(st.floats(0, math.pi), phis, st.sampled_from([NORTH, SOUTH]))
    def test_frame_is_right_handed_orthonormal(self, theta, phi, anchor):
        if anchor == NORTH and theta > math.pi - 0.1 or anchor == SOUTH and theta < 0.1:
            return
        w = cone.direction(theta, phi)
        e1, e2 = cone.frame(w, anchor)
        m = np.stack([e1, e2, w], axis=1)
        np.testing.assert_allclose(m.T @ m, np.eye(3), atol=1e-13)
        assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-13)

    def test_anchors_share_the_equator(self):
        # both frames are valid at the equator; the two charts differ only by a psi shift
        w = cone.direction(math.pi / 2, 0.7)
        n1, n2 = cone.frame(w, NORTH)
        s1, s2 = cone.frame(w, SOUTH)
        for e in (s1, s2):
            assert abs(np.linalg.norm([e @ n1, e @ n2]) - 1) <= 1e-14

    def test_invalid_charts(self):
        with pytest.raises(DomainError):
            ConeChart(0.0, 1.0, 0.0, 0.0)
        with pytest.raises(DomainError):
            ConeChart(-1.0, 1.0, 0.0, 0.0)
        with pytest.raises(DomainError):
            ConeChart(1.0, 4.0, 0.0, 0.0)
        with pytest.raises(DomainError):
            ConeChart(1.0, 1.0, 0.0, 0.0, anchor=0)

    def test_for_direction_picks_hemisphere(self):
        assert ConeChart.for_direction(1.0, 0.3, 0, 0).anchor == NORTH
        assert ConeChart.for_direction(1.0, 2.9, 0, 0).anchor == SOUTH


class TestDensity:
    @given(interior_charts())
    def test_positive(self, chart):
        assert cone.cone_density(chart) > 0

    @given(interior_charts())
    def test_matches_closed_form(self, chart):
        # differentiating the chart symbolically gives Pf = -2 r^3 sin(theta)
        assert cone.cone_density(chart) == pytest.approx(2 * chart.r * math.sin(chart.theta), rel=1e-8)

    @given(interior_charts(), st.floats(0.2, 5))
    def test_scaling_exponent_is_constant(self, chart, lam):
        scaled = ConeChart(lam * chart.r, chart.theta, chart.phi, chart.psi, chart.anchor)
        ratio = cone.cone_density(scaled) / cone.cone_density(chart)
        if abs(lam - 1) > 0.05:
            assert math.log(ratio) / math.log(lam) == pytest.approx(1.0, abs=1e-7)

    @given(interior_charts(), psis)
    def test_psi_invariant(self, chart, psi):
        other = ConeChart(chart.r, chart.theta, chart.phi, psi, chart.anchor)
        assert cone.cone_density(other) == pytest.approx(cone.cone_density(chart), rel=1e-10)

    def test_same_density_from_both_anchors(self):
        for theta in (0.9, math.pi / 2, 2.1):
            n = cone.cone_density(ConeChart(1.5, theta, 0.4, 1.0, NORTH))
            s = cone.cone_density(ConeChart(1.5, theta, 0.4, 1.0, SOUTH))
            assert n == pytest.approx(s, rel=1e-9)

    def test_wedge_factorial_doubles(self):
        c = ConeChart(2.0, 1.0, 0.5, 0.3)
        assert cone.cone_density(c, wedge_factorial=True) == 2 * cone.cone_density(c)

    @pytest.mark.parametrize("chart", [ConeChart(1.0, math.pi, 0.0, 0.0, NORTH),
                                       ConeChart(1.0, math.pi - 0.05, 1.0, 0.0, NORTH),
                                       ConeChart(1.0, 0.0, 0.0, 0.0, SOUTH)])
    def test_singular_chart_raises(self, chart):
        with pytest.raises(ChartSingularityError, match="rotate the chart"):
            cone.cone_density(chart)

    def test_symplectic_matrix_antisymmetric(self):
        m = cone.symplectic_matrix(np.array([1.0, 2.0]), np.array([0.5, 1.0]), 0.3, 2.0)
        np.testing.assert_allclose(m, -np.swapaxes(m, -1, -2), atol=0)
        assert m.shape == (2, 4, 4)

    def test_pfaffian_squares_to_determinant(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((5, 4, 4))
        a = a - np.swapaxes(a, -1, -2)
        np.testing.assert_allclose(cone.pfaffian4(a) ** 2, np.linalg.det(a), rtol=1e-12)
