"""Finite-difference checks of the first variations of area and total mean curvature.

Moving the surface with normal speed ``phi`` changes

    area        at rate  int 2 H phi dA
    int H dA    at rate  int K phi dA

The generating curve is offset along its outward normal ``(sin theta, -cos theta)``,
then turned back into an angle profile from the chords of the offset polyline.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels as K
from .geometry import area, total_mean_curvature
from .profile import Profile, dense_grid, validate

N_GRID = 8192
RECONSTRUCTION_TOL = 1e-6
PRESETS = ("one", "zero", "sin2theta", "cos2theta")


class StepTooLargeError(ValueError):
    pass


class KinkedProfileError(ValueError):
    pass


@dataclass(frozen=True)
class PerturbationField:
    """Normal speed along the generating curve, piecewise linear in arclength."""

    s: np.ndarray
    values: np.ndarray

    def __call__(self, s):
        return np.interp(s, self.s, self.values)

    @classmethod
    def from_function(cls, profile, fn, n_grid=N_GRID):
        """Sample ``fn(s, theta)`` on the profile's refined grid."""
        s = dense_grid(profile, n_grid)
        return cls(s, np.asarray(fn(s, profile.theta_at(s)), dtype=float) * np.ones_like(s))

    @classmethod
    def preset(cls, profile, name, n_grid=N_GRID):
        fns = {
            "one": lambda s, th: 1.0,
            "zero": lambda s, th: 0.0,
            "sin2theta": lambda s, th: np.sin(2 * th),
            "cos2theta": lambda s, th: np.cos(2 * th),
        }
        if name not in fns:
            raise ValueError(f"unknown perturbation preset {name!r}; choose from {PRESETS}")
        return cls.from_function(profile, fns[name], n_grid)

    @classmethod
    def load(cls, path):
        data = np.loadtxt(path, delimiter=None, ndmin=2)
        if data.shape[1] != 2:
            raise ValueError(f"{path}: expected two columns (s, phi)")
        return cls(data[:, 0], data[:, 1])


def _offset_profile(profile, phi, t, n_grid):
    s = dense_grid(profile, n_grid)
    theta = profile.theta_at(s)
    pts = profile.curve.position(s) + t * phi(s) * (-1j * np.exp(1j * theta))
    pts[0] = 1j * pts[0].imag
    pts[-1] = 1j * pts[-1].imag
    chords = np.diff(pts)
    lengths = np.abs(chords)
    ref = 0.5 * (theta[:-1] + theta[1:])
    alpha = ref + np.angle(chords * np.exp(-1j * ref))
    ends = np.cumsum(lengths)
    mids = ends - 0.5 * lengths
    return Profile(np.concatenate([[0.0], mids, [ends[-1]]]), np.concatenate([[0.0], alpha, [math.pi]]))


def perturb_profile(profile, phi, t, n_grid=N_GRID, tol=RECONSTRUCTION_TOL):
    """Profile of the surface moved by ``t * phi`` along its outward normal.

    Angles are rebuilt from the chords of the offset curve sampled at spacing
    ``<= L / n_grid``; the result is validated with tolerance ``tol``.
    """
    if t == 0 or not np.any(phi.values):
        return profile
    new = _offset_profile(profile, phi, t, n_grid)
    report = validate(new, tol)
    if not report.admissible:
        raise StepTooLargeError(f"offset by t={t} breaks admissibility: {report.diagnostics}")
    return new


def analytic_variations(profile, phi, order=8):
    """``(int 2 H phi dA, int K phi dA)`` by Gauss-Legendre on the merged grid."""
    grid = np.union1d(profile.s, phi.s[(phi.s > 0) & (phi.s < profile.length)])
    nodes, weights = K.gauss_legendre(grid[:-1], grid[1:], order=order)
    c = profile.curve
    idx = c.segment_index(0.5 * (grid[:-1] + grid[1:]))[:, None]
    u = nodes - profile.s[idx]
    theta = profile.theta[idx] + c.slope[idx] * u
    x = c.local(idx, u).real
    ph = phi(nodes)
    d_area = 2 * math.pi * np.sum((np.sin(theta) + c.slope[idx] * x) * ph * weights)
    d_mean = 2 * math.pi * np.sum(c.slope[idx] * np.sin(theta) * ph * weights)
    return float(d_area), float(d_mean)


def kinks_in_support(profile, phi, tol=1e-12):
    """Interior breakpoints where theta' jumps and phi does not vanish."""
    m = profile.slopes
    jump = np.abs(np.diff(m)) > tol * (1 + np.abs(m[1:]))
    sb = profile.s[1:-1][jump]
    return sb[np.abs(phi(sb)) > 0]


@dataclass(frozen=True)
class VariationReport:
    analytic_dA: float
    fd_dA: float
    analytic_dH: float
    fd_dH: float
    step: float
    relative_errors: tuple

    def to_dict(self):
        d = asdict(self)
        d["relative_errors"] = list(self.relative_errors)
        return d


def _rel(fd, exact):
    err = abs(fd - exact)
    return err / abs(exact) if abs(exact) > 1e-12 else err


def first_variation_check(profile, phi, steps, n_grid=N_GRID, scheme="forward", tol=RECONSTRUCTION_TOL):
    """Compare analytic first variations with finite differences, one report per step.

    ``scheme="forward"`` gives first-order differences ``(F(t) - F(0)) / t`` with
    ``F(0)`` taken on the unperturbed reconstruction, so the sampling bias
    cancels; ``"central"`` uses ``(F(t) - F(-t)) / 2t``.  When the absolute
    analytic value is below 1e-12 the absolute error is reported instead.
    """
    bad = kinks_in_support(profile, phi)
    if bad.size:
        raise KinkedProfileError(f"phi does not vanish at slope discontinuities s={bad.tolist()}")
    if scheme not in ("forward", "central"):
        raise ValueError(f"unknown scheme {scheme!r}")
    d_area, d_mean = analytic_variations(profile, phi)

    def functionals(t):
        new = _offset_profile(profile, phi, t, n_grid)
        if t != 0:
            report = validate(new, tol)
            if not report.admissible:
                raise StepTooLargeError(f"offset by t={t} breaks admissibility: {report.diagnostics}")
        return area(new, check=False), total_mean_curvature(new, check=False)

    base = functionals(0.0) if scheme == "forward" else None
    reports = []
    for t in steps:
        a_p, h_p = functionals(t)
        if scheme == "forward":
            fd_a, fd_h = (a_p - base[0]) / t, (h_p - base[1]) / t
        else:
            a_m, h_m = functionals(-t)
            fd_a, fd_h = (a_p - a_m) / (2 * t), (h_p - h_m) / (2 * t)
        reports.append(VariationReport(d_area, fd_a, d_mean, fd_h, float(t), (_rel(fd_a, d_area), _rel(fd_h, d_mean))))
    return reports
