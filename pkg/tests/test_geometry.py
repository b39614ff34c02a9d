import math

import numpy as np
import pytest
from scipy.integrate import cumulative_simpson, simpson

from axicurv import (
    NotAdmissibleError,
    Profile,
    area,
    principal_curvatures,
    sphere_profile,
    summarize,
    total_abs_mean_curvature,
    total_gauss_curvature,
    total_mean_curvature,
)
from axicurv.families import double_sphere_area, double_sphere_mean_curvature, double_sphere_profile
from axicurv.geometry import area_methods, mean_curvature_methods

from conftest import polygon_profile


def dense_oracle(prof, n=20001):
    """Area, int H and int |H| by Simpson on each segment, x accumulated by cumulative Simpson."""
    x0, a, h, ha = 0.0, 0.0, 0.0, 0.0
    for i in range(prof.n_segments):
        s = np.linspace(prof.s[i], prof.s[i + 1], n)
        th = prof.theta_at(s)
        x = x0 + cumulative_simpson(np.cos(th), x=s, initial=0.0)
        g = np.sin(th) + prof.slopes[i] * x
        a += simpson(x, x=s)
        h += simpson(g, x=s)
        ha += simpson(np.abs(g), x=s)
        x0 = x[-1]
    return 2 * math.pi * a, math.pi * h, math.pi * ha


class TestSphere:
    @pytest.mark.parametrize("R", [0.5, 1.0, 3.0])
    def test_closed_forms(self, R):
        s = summarize(sphere_profile(R))
        assert s.area == pytest.approx(4 * math.pi * R * R, rel=1e-12)
        assert s.total_mean_curvature == pytest.approx(4 * math.pi * R, rel=1e-12)
        assert s.total_abs_mean_curvature == pytest.approx(4 * math.pi * R, rel=1e-12)
        assert s.total_gauss_curvature == pytest.approx(4 * math.pi, rel=1e-12)
        assert s.generating_length == pytest.approx(math.pi * R)
        assert s.apex_height == pytest.approx(2 * R)

    def test_parts_forms(self):
        p = sphere_profile(1.0)
        pair = area_methods(p)
        assert pair.alternate == pytest.approx(4 * math.pi, rel=1e-13)
        # pi int (sin s - s cos s) ds with antiderivative -2 cos s - s sin s
        f_form = math.pi * ((-2 * math.cos(math.pi) - math.pi * math.sin(math.pi)) - (-2.0))
        assert mean_curvature_methods(p).alternate == pytest.approx(f_form, rel=1e-13)
        assert f_form == pytest.approx(4 * math.pi)


class TestDoubleSphere:
    @pytest.mark.parametrize("r,delta,R", [(0.1, 0.2, 1.0), (0.05, 0.3, 2.0), (0.2, 0.25, 0.9)])
    def test_closed_forms(self, r, delta, R):
        p = double_sphere_profile(r, delta, R)
        assert area(p) == pytest.approx(double_sphere_area(r, delta, R), rel=1e-13)
        assert total_mean_curvature(p) == pytest.approx(double_sphere_mean_curvature(r, delta), rel=1e-12)
        assert total_gauss_curvature(p) == pytest.approx(4 * math.pi, rel=1e-13)

    def test_abs_mean_curvature_simpson_oracle(self):
        r, delta, R = 0.1, 0.2, 1.0
        p = double_sphere_profile(r, delta, R)
        # x from the closed-form piece table, g integrated piece by piece
        total = 0.0
        for i in range(p.n_segments):
            s = np.linspace(p.s[i], p.s[i + 1], 10**6 + 1)
            th = p.theta_at(s)
            x = [s, delta + R * np.sin(th), delta + r * np.sin(th), delta - (R - 2 * r) * np.sin(th), p.length - s][i]
            total += simpson(np.abs(np.sin(th) + p.slopes[i] * x), x=s)
        oracle = math.pi * total
        assert total_abs_mean_curvature(p) == pytest.approx(oracle, rel=1e-9)
        assert oracle == pytest.approx(27.284592685, rel=1e-9)  # frozen oracle value


class TestRandomProfiles:
    def test_dense_oracle(self, suites):
        for kind in suites:
            for prof in suites[kind][:5]:
                a, h, ha = dense_oracle(prof)
                s = summarize(prof)
                assert s.area == pytest.approx(a, rel=1e-9)
                assert abs(s.total_mean_curvature - h) <= 1e-8 * max(1.0, abs(h))
                assert s.total_abs_mean_curvature == pytest.approx(ha, rel=1e-7)

    def test_method_pairs(self, all_profiles):
        for prof in all_profiles:
            a, h = area_methods(prof), mean_curvature_methods(prof)
            assert a.residual <= 1e-9 * max(1.0, abs(a.direct))
            assert h.residual <= 1e-9 * max(1.0, abs(h.direct))

    def test_gauss_bonnet(self, all_profiles):
        for prof in all_profiles:
            assert abs(total_gauss_curvature(prof) - 4 * math.pi) <= 1e-10

    def test_abs_dominates(self, all_profiles):
        for prof in all_profiles:
            s = summarize(prof)
            assert s.total_abs_mean_curvature >= abs(s.total_mean_curvature) - 1e-12 * s.total_abs_mean_curvature
            assert s.total_abs_mean_curvature >= math.sqrt(4 * math.pi * s.area) - 1e-9

    def test_polygon(self):
        a, h, ha = dense_oracle(polygon_profile())
        s = summarize(polygon_profile())
        assert s.area == pytest.approx(a, rel=1e-9)
        assert s.total_mean_curvature == pytest.approx(h, rel=1e-9)
        assert s.total_abs_mean_curvature == pytest.approx(ha, rel=1e-9)


class TestPrincipalCurvatures:
    def test_sphere(self):
        p = sphere_profile(2.0)
        for s in (0.0, 0.7, math.pi, 5.0, 2 * math.pi):
            k1, k2 = principal_curvatures(p, s)
            assert k1 == pytest.approx(0.5, rel=1e-12) and k2 == pytest.approx(0.5, rel=1e-15)

    def test_vertical_segment(self):
        # theta = pi/2 on the middle piece of a stadium-like profile
        p = Profile([0, 1, 3, 4], [0, math.pi / 2, math.pi / 2, math.pi])
        x0 = p.curve.x(1.0)
        k1, k2 = principal_curvatures(p, 2.0)
        assert k1 == pytest.approx(1 / x0, rel=1e-14) and k2 == 0.0

    def test_double_sphere_inner_piece(self):
        r, delta, R = 0.1, 0.2, 1.0
        p = double_sphere_profile(r, delta, R)
        mid = 0.5 * (p.s[3] + p.s[4])
        assert principal_curvatures(p, mid)[1] == pytest.approx(-1 / (R - 2 * r), rel=1e-13)

    def test_one_sided_at_breakpoint(self):
        p = double_sphere_profile(0.1, 0.2, 1.0)
        sb = p.s[1]
        assert principal_curvatures(p, sb, side="left")[1] == 0.0
        assert principal_curvatures(p, sb, side="right")[1] == pytest.approx(1.0)

    def test_outside(self):
        with pytest.raises(ValueError):
            principal_curvatures(sphere_profile(), -0.1)


class TestErrors:
    def test_rejects_non_admissible(self):
        p = Profile([0, math.pi / 2], [0, math.pi / 2])
        for fn in (area, total_mean_curvature, total_abs_mean_curvature, total_gauss_curvature, summarize):
            with pytest.raises(NotAdmissibleError):
                fn(p)

    def test_gauss_diagnostic(self):
        p = Profile([0, math.pi / 2], [0, math.pi / 2])
        assert total_gauss_curvature(p, check=False) == pytest.approx(2 * math.pi, rel=1e-14)

    def test_summary_json_fields(self):
        d = summarize(sphere_profile()).to_dict()
        assert set(d) == {
            "area",
            "total_mean_curvature",
            "total_abs_mean_curvature",
            "total_gauss_curvature",
            "generating_length",
            "apex_height",
        }
