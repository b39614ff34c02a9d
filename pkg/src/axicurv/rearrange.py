"""Monotone rearrangement and folding of angle profiles.

``monotone_rearrange`` builds the non-decreasing function equimeasurable with
theta.  For a piecewise-linear theta the distribution function
``mu(c) = |{theta >= c}|`` is itself piecewise linear in ``c`` with knots at the
breakpoint values, so its inverse is computed exactly.  The sample-and-sort
construction is kept as ``method="sample"``; it converges at rate O(1/n_grid).

``fold`` reflects every excursion of theta outside ``[0, pi]`` back inside,
keeping ``cos(theta)`` and making ``sin(theta)`` non-negative.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import _int_theta_cos, area
from .profile import Profile

N_GRID = 4096


@dataclass(frozen=True)
class RearrangedProfile:
    source: Profile
    result: Profile
    mode: str
    grid_resolution: int = 0

    @property
    def report(self):
        return self.result.admissibility


def superlevel_measure(profile, levels, strict=False):
    """Exact ``|{s : theta(s) >= c}|`` (or ``> c``) for each level ``c``."""
    levels = np.atleast_1d(np.asarray(levels, dtype=float))
    ta, tb = profile.theta[:-1], profile.theta[1:]
    h = np.diff(profile.s)
    lo, hi = np.minimum(ta, tb), np.maximum(ta, tb)
    c = levels[:, None]
    span = hi - lo
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.clip((hi - c) / span, 0.0, 1.0)
    flat = span == 0
    above = (lo > c) if strict else (lo >= c)
    frac = np.where(flat, above.astype(float), frac)
    return np.sum(frac * h, axis=1)


def _exact_monotone(profile):
    L = profile.length
    levels = np.unique(profile.theta)
    mu_ge = superlevel_measure(profile, levels)
    mu_gt = superlevel_measure(profile, levels, strict=True)
    s_pts, th_pts = [], []
    for c, a, b in zip(levels, mu_ge, mu_gt):
        s_pts.append(L - a)
        th_pts.append(c)
        if a - b > 0:
            s_pts.append(L - b)
            th_pts.append(c)
    s_pts = np.array(s_pts)
    th_pts = np.array(th_pts)
    s_pts[0] = 0.0
    s_pts[-1] = L
    keep = np.concatenate([[True], np.diff(s_pts) > 0])
    return Profile(s_pts[keep], th_pts[keep])


def _sample_monotone(profile, n_grid):
    s = np.linspace(0.0, profile.length, n_grid + 1)
    return Profile(s, np.sort(profile.theta_at(s)))


def monotone_rearrange(profile, n_grid=N_GRID, method="exact", range_tol=1e-12):
    """Non-decreasing rearrangement of an angle profile valued in ``[0, pi]``."""
    th = profile.theta
    if th.min() < -range_tol or th.max() > math.pi + range_tol:
        raise ValueError("theta leaves [0, pi]; fold() the profile before rearranging it")
    if method == "exact":
        result = _exact_monotone(profile)
    elif method == "sample":
        if n_grid < 1024:
            raise ValueError("n_grid must be at least 1024")
        result = _sample_monotone(profile, n_grid)
    else:
        raise ValueError(f"unknown method {method!r}")
    return RearrangedProfile(profile, result, "monotone", n_grid if method == "sample" else 0)


def _fold_value(theta):
    r = np.mod(theta, 2 * math.pi)
    return np.where(r <= math.pi, r, 2 * math.pi - r)


def fold(profile):
    """Reflect theta into ``[0, pi]``; exact because crossings of k*pi become breakpoints."""
    s, th = profile.s, profile.theta
    new_s, new_th = [s[0]], [th[0]]
    for i in range(profile.n_segments):
        a, b = th[i], th[i + 1]
        lo, hi = min(a, b), max(a, b)
        ks = np.arange(math.floor(lo / math.pi) + 1, math.ceil(hi / math.pi))
        if a > b:
            ks = ks[::-1]
        for k in ks:
            level = k * math.pi
            sk = s[i] + (level - a) / (b - a) * (s[i + 1] - s[i])
            if new_s[-1] < sk < s[i + 1]:
                new_s.append(sk)
                new_th.append(level)
        new_s.append(s[i + 1])
        new_th.append(b)
    folded = _fold_value(np.array(new_th))
    # exact multiples of pi: even -> 0, odd -> pi
    mult = np.array(new_th) / math.pi
    on_level = np.isclose(mult, np.round(mult), rtol=0.0, atol=1e-12)
    folded[on_level] = np.where(np.round(mult[on_level]) % 2 == 0, 0.0, math.pi)
    return RearrangedProfile(profile, Profile(np.array(new_s), folded), "fold")


@dataclass
class RearrangementReport:
    monotone: bool
    lipschitz_source: float
    lipschitz_result: float
    functionals: dict
    hardy_littlewood: tuple
    equimeasure_error: float
    area_source: float
    area_result: float
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            "monotone": self.monotone,
            "lipschitz_source": self.lipschitz_source,
            "lipschitz_result": self.lipschitz_result,
            "functionals": {k: list(v) for k, v in self.functionals.items()},
            "hardy_littlewood": list(self.hardy_littlewood),
            "equimeasure_error": self.equimeasure_error,
            "area_source": self.area_source,
            "area_result": self.area_result,
            "violations": [list(v) for v in self.violations],
            "ok": self.ok,
        }


def _functionals(profile):
    c = profile.curve
    sin_i = float(np.sum(c.int_sin))
    cos_i = float(np.sum(c.int_cos))
    f_i = float(np.sum(c.int_sin - _int_theta_cos(c)))
    return {"sin": sin_i, "cos": cos_i, "F": f_i}


def weighted_one_minus_cos(profile):
    """int s (1 - cos theta) ds = L^2/2 - int s cos theta ds."""
    return 0.5 * profile.length**2 - float(np.sum(profile.curve.int_s_cos))


def check_rearrangement_properties(source, result, n_levels=64, f_tol=1e-8, lip_rtol=1e-6, area_tol=1e-9, level_tol=None):
    """Numerically confirm the rearrangement properties of ``result`` w.r.t. ``source``.

    Checks: monotonicity; the Lipschitz bound ``Lip(result) <= Lip(source)``;
    preservation of the integrals of sin, cos and ``F(u) = sin u - u cos u``; the Hardy-Littlewood instance
    ``int s (1 - cos theta) <= int s (1 - cos theta*)``; equimeasurability on
    ``n_levels`` levels; and the resulting area growth.
    """
    L = source.length
    level_tol = L / N_GRID if level_tol is None else level_tol
    violations = []

    steps = np.diff(result.theta)
    monotone = bool(np.all(steps >= 0))
    if not monotone:
        violations.append(("monotone", float(-steps.min())))

    lip_s, lip_r = source.lipschitz_modulus, result.lipschitz_modulus
    if lip_r > lip_s * (1 + lip_rtol):
        violations.append(("lipschitz", lip_r - lip_s))

    fs, fr = _functionals(source), _functionals(result)
    funcs = {k: (fs[k], fr[k]) for k in fs}
    for k, (a, b) in funcs.items():
        if abs(a - b) > f_tol * max(1.0, L):
            violations.append((f"integral_{k}", abs(a - b)))

    hl = (weighted_one_minus_cos(source), weighted_one_minus_cos(result))
    if hl[0] > hl[1] + f_tol * max(1.0, L**2):
        violations.append(("hardy_littlewood", hl[0] - hl[1]))

    levels = math.pi * (np.arange(n_levels) + 0.5) / n_levels
    eq_err = float(np.max(np.abs(superlevel_measure(source, levels) - superlevel_measure(result, levels))))
    if eq_err > level_tol:
        violations.append(("equimeasurability", eq_err))

    a_s, a_r = area(source, check=False), area(result, check=False)
    if a_r < a_s - area_tol * max(1.0, a_s):
        violations.append(("area_growth", a_s - a_r))

    return RearrangementReport(monotone, lip_s, lip_r, funcs, hl, eq_err, a_s, a_r, violations)

