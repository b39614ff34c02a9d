import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from axicurv import Profile, check_rearrangement_properties, fold, monotone_rearrange, sphere_profile, summarize
from axicurv.families import build_double_sphere
from axicurv.geometry import total_abs_mean_curvature, total_mean_curvature
from axicurv.inequalities import detect_sphere
from axicurv.rearrange import superlevel_measure, weighted_one_minus_cos


def example_profile():
    L = math.pi
    return Profile([0, L / 3, 2 * L / 3, L], [0, math.pi, math.pi / 2, math.pi])


def brute_measure(prof, c, n=200001):
    s = np.linspace(0, prof.length, n)
    return np.mean(prof.theta_at(s) >= c) * prof.length


class TestMonotone:
    def test_sphere_unchanged(self):
        p = sphere_profile(1.5)
        r = monotone_rearrange(p).result
        assert np.array_equal(r.s, p.s) and np.array_equal(r.theta, p.theta)
        rep = check_rearrangement_properties(p, r)
        assert rep.ok and rep.hardy_littlewood[0] == rep.hardy_littlewood[1]

    def test_sorting_oracle(self):
        p = example_profile()
        r = monotone_rearrange(p).result
        s = np.linspace(0, p.length, 4097)
        oracle = np.sort(p.theta_at(s))
        # sorted samples approximate theta* to within Lip * L / 4096
        assert np.max(np.abs(r.theta_at(s) - oracle)) <= p.lipschitz_modulus * p.length / 4096 + 1e-12
        assert np.all(np.diff(r.theta) >= 0)
        assert r.length == p.length

    def test_decreasing_relation(self):
        # theta*(s) = theta#(L - s), theta# the non-increasing rearrangement
        p = example_profile()
        r = monotone_rearrange(p).result
        s = np.linspace(0, p.length, 4097)
        sharp = np.sort(p.theta_at(s))[::-1]
        assert np.max(np.abs(r.theta_at(p.length - s) - sharp)) <= p.lipschitz_modulus * p.length / 4096 + 1e-12

    def test_example_properties(self):
        p = example_profile()
        r = monotone_rearrange(p).result
        rep = check_rearrangement_properties(p, r)
        assert rep.ok, rep.violations
        # Hardy-Littlewood instance holds strictly; both sides by quadrature
        lhs = sum(
            quad(lambda t: t * (1 - math.cos(p.theta_at(t))), a, b, epsabs=1e-13)[0] for a, b in zip(p.s[:-1], p.s[1:])
        )
        rhs = sum(
            quad(lambda t: t * (1 - math.cos(r.theta_at(t))), a, b, epsabs=1e-13)[0] for a, b in zip(r.s[:-1], r.s[1:])
        )
        assert rep.hardy_littlewood[0] == pytest.approx(lhs, rel=1e-10)
        assert rep.hardy_littlewood[1] == pytest.approx(rhs, rel=1e-10)
        assert rhs > lhs + 0.1

    def test_sample_method(self):
        p = example_profile()
        exact = monotone_rearrange(p).result
        sampled = monotone_rearrange(p, n_grid=4096, method="sample")
        assert sampled.grid_resolution == 4096
        s = np.linspace(0, p.length, 1001)
        assert np.max(np.abs(sampled.result.theta_at(s) - exact.theta_at(s))) <= 2 * p.lipschitz_modulus * p.length / 4096

    def test_errors(self):
        with pytest.raises(ValueError, match="fold"):
            monotone_rearrange(build_double_sphere(0.1, 8 * math.pi).profile)
        with pytest.raises(ValueError):
            monotone_rearrange(sphere_profile(), n_grid=100, method="sample")
        with pytest.raises(ValueError):
            monotone_rearrange(sphere_profile(), method="bogus")

    def test_superlevel_measure_oracle(self):
        p = example_profile()
        for c in (0.1, 1.0, math.pi / 2, 2.5, math.pi):
            assert superlevel_measure(p, c)[0] == pytest.approx(brute_measure(p, c), abs=2e-5)

    def test_flat_pieces(self):
        # plateaus produce jumps in the distribution function
        p = Profile([0, 1, 2, 3, 4], [0, 1, 1, 0.5, math.pi])
        r = monotone_rearrange(p).result
        assert np.all(np.diff(r.theta) >= 0)
        levels = np.linspace(0.01, 3.1, 50)
        assert np.allclose(superlevel_measure(p, levels), superlevel_measure(r, levels), atol=1e-13)
        assert np.allclose(superlevel_measure(p, levels, strict=True), superlevel_measure(r, levels, strict=True), atol=1e-13)

    def test_axiconvex_suite(self, suites):
        for p in suites["axiconvex"]:
            rp = monotone_rearrange(p)
            assert rp.report.is_inner_convex
            rep = check_rearrangement_properties(p, rp.result)
            assert rep.ok, rep.violations
            assert rep.lipschitz_result <= rep.lipschitz_source * (1 + 1e-6)

    def test_modulus_may_drop(self):
        # a steep bump between two gentle ramps: Lip drops after rearrangement
        p = Profile([0, 1, 1.1, 1.2, 1.2 + math.pi - 1], [0, 1, 2, 1, math.pi])
        rep = check_rearrangement_properties(p, monotone_rearrange(p).result)
        assert rep.ok
        assert rep.lipschitz_result < rep.lipschitz_source


class TestFold:
    def test_identity_on_range(self):
        p = sphere_profile()
        r = fold(p).result
        assert np.array_equal(r.s, p.s) and np.array_equal(r.theta, p.theta)

    def test_value(self):
        p = Profile([0, 1], [0, 3 * math.pi / 2])
        r = fold(p).result
        assert r.theta[-1] == pytest.approx(math.pi / 2)
        assert np.allclose(r.s, [0, 2 / 3, 1])
        assert np.allclose(r.theta, [0, math.pi, math.pi / 2])

    def test_double_sphere(self):
        src = build_double_sphere(0.1, 8 * math.pi).profile
        out = fold(src).result
        s = np.union1d(np.linspace(0, src.length, 4096), src.s)
        th_src, th_out = src.theta_at(s), out.theta_at(s)
        assert np.all((th_out >= 0) & (th_out <= math.pi))
        assert np.allclose(np.cos(th_out), np.cos(th_src), atol=1e-14)
        assert np.all(np.sin(th_out) >= -1e-15)
        L = src.length
        assert np.max(np.abs(out.curve.x(src.s) - src.curve.x_nodes)) <= 1e-13 * L
        assert np.max(np.abs(out.curve.x(s) - src.curve.x(s))) <= 1e-13 * L
        assert np.all(out.curve.z(s) >= src.curve.z(s) - 1e-12 * L)
        assert out.lipschitz_modulus == pytest.approx(src.lipschitz_modulus, rel=1e-12)
        assert out.admissibility.is_axiconvex
        assert total_mean_curvature(out) <= total_abs_mean_curvature(src) + 1e-8
        assert summarize(out).area == pytest.approx(summarize(src).area, rel=1e-12)

    def test_admissible_suite(self, suites):
        for p in suites["admissible"]:
            out = fold(p).result
            L = p.length
            s = np.linspace(0, L, 2049)
            assert np.max(np.abs(out.curve.x(p.s) - p.curve.x_nodes)) <= 1e-12 * L
            assert np.all(out.curve.z(s) >= p.curve.z(s) - 1e-12 * L)
            assert out.admissibility.is_axiconvex
            assert total_mean_curvature(out) <= total_abs_mean_curvature(p) + 1e-8

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(-20, 20), min_size=2, max_size=12))
    def test_fold_pointwise(self, values):
        s = np.arange(len(values), dtype=float)
        p = Profile(s, values)
        out = fold(p).result
        q = np.linspace(0, s[-1], 301)
        th, tf = p.theta_at(q), out.theta_at(q)
        assert np.all((tf >= 0) & (tf <= math.pi))
        assert np.allclose(np.cos(tf), np.cos(th), atol=1e-12)
        assert out.lipschitz_modulus <= p.lipschitz_modulus * (1 + 1e-12) + 1e-12

    def test_sphere_equality_chain(self):
        p = sphere_profile(2.0)
        final = monotone_rearrange(fold(p).result).result
        assert detect_sphere(final, 1e-12)


def test_weighted_one_minus_cos_oracle(suites):
    p = suites["axiconvex"][3]
    oracle = sum(
        quad(lambda t: t * (1 - math.cos(p.theta_at(t))), a, b, epsabs=1e-13)[0] for a, b in zip(p.s[:-1], p.s[1:])
    )
    assert weighted_one_minus_cos(p) == pytest.approx(oracle, rel=1e-11)
