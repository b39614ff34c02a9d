"""Minkowski-type inequalities, the Bonnesen quadratic and equality detection."""

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels as K
from . import geometry
from .profile import N_SAMPLES, require_admissible

GAP_TOL = 1e-9
SPHERE_TOL = 1e-6
N_CRITICAL = 16


@dataclass(frozen=True)
class InequalityReport:
    minkowski_gap: float
    abs_minkowski_gap: float
    bonnesen_value: float
    bonnesen_discriminant: float
    identity_residuals: tuple
    critical_residual: float
    is_sphere: bool
    sphere_tol: float

    def to_dict(self):
        d = asdict(self)
        d["identity_residuals"] = list(self.identity_residuals)
        return d


def minkowski_check(profile, tol=GAP_TOL):
    """``int H dA - sqrt(4 pi A)`` and whether it is ``>= -tol``."""
    s = geometry.summarize(profile)
    gap = s.total_mean_curvature - math.sqrt(4 * math.pi * s.area)
    return gap, gap >= -tol


def abs_minkowski_check(profile, tol=GAP_TOL):
    s = geometry.summarize(profile)
    gap = s.total_abs_mean_curvature - math.sqrt(4 * math.pi * s.area)
    return gap, gap >= -tol


def _segment_quadrature(profile, integrand, order=24):
    """Sum over segments of Gauss-Legendre integrals of ``integrand(idx, u, theta, x)``."""
    c = profile.curve
    nseg = profile.n_segments
    nodes, weights = K.gauss_legendre(np.zeros(nseg), c.h, order=order)
    idx = np.broadcast_to(np.arange(nseg)[:, None], nodes.shape)
    theta = profile.theta[idx] + c.slope[idx] * nodes
    x = c.local(idx, nodes).real
    return float(np.sum(integrand(idx, profile.s[idx] + nodes, theta, x) * weights))


def bonnesen_value(profile, lam=None):
    """``4 pi lam^2 - 2 lam int H dA + A``; ``lam`` defaults to ``L / pi``."""
    lam = profile.length / math.pi if lam is None else lam
    s = geometry.summarize(profile)
    return 4 * math.pi * lam**2 - 2 * lam * s.total_mean_curvature + s.area


def bonnesen_check(profile, lam=None):
    """Bonnesen quadratic and the residuals of its two integral representations.

    Both right-hand sides are integrated by per-segment Gauss-Legendre
    quadrature, independently of the closed forms behind the left side:

        2 pi int (lam sin(theta) - x)(lam theta' - 1) ds
        2 pi [ (lam pi - L)^2 / 2 - 1/2 int (lam theta - s)^2 theta' sin(theta) ds ]
    """
    require_admissible(profile)
    L = profile.length
    lam = L / math.pi if lam is None else lam
    value = bonnesen_value(profile, lam)
    slope = profile.curve.slope

    first = 2 * math.pi * _segment_quadrature(
        profile, lambda i, s, th, x: (lam * np.sin(th) - x) * (lam * slope[i] - 1.0)
    )
    tail = _segment_quadrature(profile, lambda i, s, th, x: (lam * th - s) ** 2 * slope[i] * np.sin(th))
    second = 2 * math.pi * (0.5 * (lam * math.pi - L) ** 2 - 0.5 * tail)
    return value, (value - first, value - second)


def bonnesen_kernel_form(profile):
    """``-pi int (lam theta - s)^2 K x ds`` at ``lam = L / pi``."""
    lam = profile.length / math.pi
    slope = profile.curve.slope
    return -math.pi * _segment_quadrature(profile, lambda i, s, th, x: (lam * th - s) ** 2 * slope[i] * np.sin(th))


def detect_sphere(profile, tol=SPHERE_TOL):
    """True iff theta is within ``tol`` of the linear ramp ``pi s / L`` everywhere."""
    L = profile.length
    s = np.union1d(np.linspace(0.0, L, N_SAMPLES), profile.s)
    return bool(np.max(np.abs(profile.theta_at(s) - math.pi * s / L)) <= tol)


def critical_point_residual(profile, n_mid=N_CRITICAL):
    """max |K - 2 lam H| with ``lam = sqrt(pi / A)``.

    Sampled at the midpoints of ``n_mid`` equal cells of every segment, so
    that ``theta'`` is always well defined.
    """
    lam = math.sqrt(math.pi / geometry.area(profile))
    c = profile.curve
    nseg = profile.n_segments
    frac = (np.arange(n_mid) + 0.5) / n_mid
    idx = np.repeat(np.arange(nseg), n_mid)
    u = (c.h[:, None] * frac[None, :]).ravel()
    theta = profile.theta[idx] + c.slope[idx] * u
    x = c.local(idx, u).real
    k1 = np.sin(theta) / x
    k2 = c.slope[idx]
    return float(np.max(np.abs(k1 * k2 - lam * (k1 + k2))))


def inequality_report(profile, sphere_tol=SPHERE_TOL):
    s = geometry.summarize(profile)
    root = math.sqrt(4 * math.pi * s.area)
    value, residuals = bonnesen_check(profile)
    return InequalityReport(
        minkowski_gap=s.total_mean_curvature - root,
        abs_minkowski_gap=s.total_abs_mean_curvature - root,
        bonnesen_value=value,
        bonnesen_discriminant=s.total_mean_curvature**2 - 4 * math.pi * s.area,
        identity_residuals=tuple(float(r) for r in residuals),
        critical_residual=critical_point_residual(profile),
        is_sphere=detect_sphere(profile, sphere_tol),
        sphere_tol=sphere_tol,
    )
