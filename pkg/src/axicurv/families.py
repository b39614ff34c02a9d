"""The two counterexample families: dimpled spheres and double spheres.

A dimpled sphere replaces a cap around the north pole of a sphere of radius
``R`` by an inward half-sphere of radius ``eps``, glued by a linear ramp of
the angle.  Gluing continuity reduces to ``f(phi_R) + f(phi_eps) = 0`` with
``f(u) = ((R + eps) cos u - R) / sin u`` and ``phi_eps = pi/2 - eps``.

A double sphere is an outer sphere of radius ``R`` and a concentric inner one
of radius ``R - 2r``, joined by a small torus of radius ``r`` at distance
``delta`` from the axis and capped by two flat disks.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import geometry
from .profile import Profile


class InfeasibleParametersError(ValueError):
    pass


@dataclass(frozen=True)
class DimpleSolution:
    R: float
    eps: float
    phi_eps: float
    phi_R: float
    s0: float
    profile: Profile
    summary: geometry.GeometricSummary
    junction_residuals: tuple

    def to_dict(self):
        return {
            "R": self.R,
            "eps": self.eps,
            "phi_eps": self.phi_eps,
            "phi_R": self.phi_R,
            "s0": self.s0,
            "junction_residuals": list(self.junction_residuals),
            "summary": self.summary.to_dict(),
        }


@dataclass(frozen=True)
class DoubleSphereSolution:
    r: float
    delta: float
    A0: float
    R: float
    profile: Profile
    summary: geometry.GeometricSummary

    def to_dict(self):
        return {"r": self.r, "delta": self.delta, "A0": self.A0, "R": self.R, "summary": self.summary.to_dict()}


def _bisect(fn, lo, hi, rtol=1e-14):
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise InfeasibleParametersError(f"no sign change of the gluing equation on [{lo}, {hi}]")
    while hi - lo > rtol * abs(hi):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gluing_function(R, eps):
    return lambda u: ((R + eps) * math.cos(u) - R) / math.sin(u)


def build_dimple(R, eps):
    """Sphere of radius ``R`` with an inward dimple of radius ``eps`` at the top."""
    if not (R > 0 and 0 < eps < R / 2):
        raise InfeasibleParametersError(f"need 0 < eps < R/2, got R={R}, eps={eps}")
    phi_eps = math.pi / 2 - eps
    f = gluing_function(R, eps)
    target = f(phi_eps)
    phi_R = _bisect(lambda u: f(u) + target, 1e-12, math.pi / 2 - 1e-12)
    s0 = (phi_R + phi_eps) * (R * math.sin(phi_R) - eps * math.sin(phi_eps)) / (math.sin(phi_R) + math.sin(phi_eps))
    if not s0 > 0:
        raise InfeasibleParametersError(f"gluing length s0={s0} is not positive")

    s1 = R * (math.pi - phi_R)
    s2 = s1 + s0
    L = s2 + eps * phi_eps
    prof = Profile([0.0, s1, s2, L], [0.0, math.pi - phi_R, math.pi + phi_eps, math.pi])

    c = prof.curve
    expected = [
        (R * math.sin(phi_R), R * (1 + math.cos(phi_R))),
        (eps * math.sin(phi_eps), 2 * R - eps * math.cos(phi_eps)),
        (0.0, 2 * R - eps),
    ]
    residuals = tuple(
        float(max(abs(c.x_nodes[k] - ex), abs(c.z_nodes[k] - ez))) for k, (ex, ez) in zip((1, 2, 3), expected)
    )
    if max(residuals) > 1e-10 * R:
        raise InfeasibleParametersError(f"junction continuity residuals {residuals} exceed 1e-10 R")
    summary = geometry.summarize(prof)
    return DimpleSolution(R, eps, phi_eps, phi_R, s0, prof, summary, residuals)


def packing_layers(R, eps):
    """Number of latitude slices on each side of the equator, ``K_eps``."""
    return max(math.floor(math.pi * R / (8 * eps) - 0.5), 0)


def dimple_packing_count(R, eps):
    """Number of disjoint dimple sites ``N_eps`` on a sphere of radius ``R``."""
    if not eps < math.pi * R / 8:
        raise ValueError("need eps < pi R / 8")
    k_eps = packing_layers(R, eps)
    ks = np.arange(-k_eps, k_eps)
    per_slice = np.floor(math.pi * R / (2 * eps) * np.cos(4 * ks * eps / R))
    return int(per_slice.sum())


@dataclass(frozen=True)
class MultiDimpleAggregate:
    R: float
    eps: float
    A0: float
    n_dimples: int
    total_mean_curvature: float
    area: float
    t_eps: float
    rescaled_mean_curvature: float

    @property
    def rescaled_area(self):
        return self.t_eps**2 * self.area

    @property
    def degenerate(self):
        return self.n_dimples == 0

    def to_dict(self):
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["rescaled_area"] = self.rescaled_area
        d["degenerate"] = self.degenerate
        return d


def multi_dimple_aggregate(R, eps, A0=None, n_dimples=None):
    """First-order totals for ``N_eps`` dimples on a sphere, rescaled to area A0.

    Each dimple adds ``-pi (2 - pi/2) eps`` to the total mean curvature and
    ``pi eps^2`` to the area.  ``n_dimples`` overrides the packing count.
    """
    if A0 is None:
        A0 = 4 * math.pi * R**2
    n = dimple_packing_count(R, eps) if n_dimples is None else int(n_dimples)
    total_h = 4 * math.pi * R - math.pi * (2 - math.pi / 2) * n * eps
    total_a = 4 * math.pi * R**2 + math.pi * n * eps**2
    t = math.sqrt(A0 / total_a)
    return MultiDimpleAggregate(R, eps, A0, n, total_h, total_a, t, t * total_h)


def double_sphere_profile(r, delta, R):
    b = [0.0, delta, delta + math.pi * R, delta + math.pi * (R + r), delta + math.pi * (2 * R - r)]
    b.append(2 * delta + math.pi * (2 * R - r))
    return Profile(b, [0.0, 0.0, math.pi, 2 * math.pi, math.pi, math.pi])


def double_sphere_area(r, delta, R):
    return 2 * math.pi * delta**2 + 2 * math.pi**2 * delta * (2 * R - r) + 4 * math.pi * (R**2 - r**2 + (R - 2 * r) ** 2)


def double_sphere_mean_curvature(r, delta):
    return 4 * math.pi * r + math.pi**2 * delta


def double_sphere_radius(r, A0, delta=None):
    """Positive root ``R`` of the area polynomial ``a R^2 + b R + c = 0``."""
    delta = 2 * r if delta is None else delta
    a = 8 * math.pi
    b = 4 * math.pi**2 * delta - 16 * math.pi * r
    c = 2 * math.pi * delta**2 - 2 * math.pi**2 * delta * r + 12 * math.pi * r**2 - A0
    disc = b * b - 4 * a * c
    if disc < 0:
        raise InfeasibleParametersError(f"area polynomial has no real root (r={r}, A0={A0})")
    root = (-b + math.sqrt(disc)) / (2 * a)
    if not root - 2 * r > 0:
        raise InfeasibleParametersError(f"root R={root} violates R > 2r for r={r}")
    return root


def build_double_sphere(r, A0, delta=None):
    delta = 2 * r if delta is None else delta
    if not delta > r > 0:
        raise InfeasibleParametersError(f"need delta > r > 0, got r={r}, delta={delta}")
    R = double_sphere_radius(r, A0, delta)
    prof = double_sphere_profile(r, delta, R)
    summary = geometry.summarize(prof)
    if abs(summary.area - A0) > 1e-9 * A0:
        raise InfeasibleParametersError(f"assembled area {summary.area} misses target {A0}")
    return DoubleSphereSolution(r, delta, A0, R, prof, summary)


@dataclass(frozen=True)
class AsymptoticFit:
    """Least-squares fit of ``c0 + c1 p^a + c2 p^(a+1) + ...`` over a ladder.

    ``richardson`` lists the two-point slopes in ``p^a`` of consecutive ladder
    pairs, coarse to fine, then one Richardson extrapolation of the two finest;
    ``residual`` is the RMS misfit of the least-squares model.
    """

    exponent: float
    coefficients: tuple
    residual: float
    richardson: tuple

    @property
    def c0(self):
        return self.coefficients[0]

    @property
    def c1(self):
        return self.coefficients[1]

    def to_dict(self):
        return {
            "exponent": self.exponent,
            "coefficients": list(self.coefficients),
            "residual": self.residual,
            "richardson": list(self.richardson),
        }


def fit_asymptotics(values, exponent=1, order=2):
    """Fit ``value ~ c0 + c1 p^exponent + ...`` with ``order`` terms beyond c0.

    ``values`` is a sequence of ``(param, value)`` pairs from a geometric ladder.
    """
    pts = sorted(values)
    p = np.array([a for a, _ in pts], dtype=float)
    y = np.array([b for _, b in pts], dtype=float)
    if p.size < 4:
        warnings.warn("fewer than 4 ladder points; fit is ill-conditioned", RuntimeWarning, stacklevel=2)
    ratios = p[1:] / p[:-1]
    if ratios.size and np.ptp(ratios) > 1e-6 * ratios.mean():
        warnings.warn("ladder is not geometric; Richardson estimates are unreliable", RuntimeWarning, stacklevel=2)
    order = min(order, max(p.size - 1, 1))
    design = np.column_stack([np.ones_like(p)] + [p ** (exponent + j) for j in range(order)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.sqrt(np.mean((design @ coef - y) ** 2)))

    pa = p**exponent
    slopes = (y[1:] - y[:-1]) / (pa[1:] - pa[:-1])
    rich = []
    if slopes.size:
        q = ratios.mean()
        rich = list(slopes[::-1])
        if slopes.size >= 2:
            # leading error of the two-point slope scales like p, so eliminate it
            fine, coarse = slopes[0], slopes[1]
            rich.append((q * fine - coarse) / (q - 1) if q != 1 else fine)
    return AsymptoticFit(float(exponent), tuple(float(v) for v in coef), resid, tuple(float(v) for v in rich))

