"""Integral functionals of an axisymmetric surface given by its angle profile.

With ``dA = 2 pi x ds``, ``kappa1 = sin(theta)/x`` and ``kappa2 = theta'``:

    A        = 2 pi int x ds                 = -2 pi int s cos(theta) ds
    int H dA = pi int (sin theta + theta' x) = pi int F(theta),  F(u) = sin u - u cos u
    int K dA = 2 pi int theta' sin(theta) ds

The second form of each is an integration by parts that relies on the poles
sitting on the axis; both are evaluated in closed form so that their
difference is a round-off level self-check.
"""

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels as K
from .profile import require_admissible

N_SIGN_GRID = 256


class MethodPair(NamedTuple):
    direct: float
    alternate: float

    @property
    def residual(self):
        return abs(self.direct - self.alternate)


@dataclass(frozen=True)
class GeometricSummary:
    area: float
    total_mean_curvature: float
    total_abs_mean_curvature: float
    total_gauss_curvature: float
    generating_length: float
    apex_height: float

    def to_dict(self):
        return asdict(self)


def _check(profile, check):
    if check:
        require_admissible(profile)
    return profile.curve


def area_methods(profile, check=True):
    c = _check(profile, check)
    direct = 2 * math.pi * float(np.sum(c.int_x))
    parts = -2 * math.pi * float(np.sum(c.int_s_cos))
    return MethodPair(direct, parts)


def area(profile, check=True):
    return area_methods(profile, check).direct


def _int_theta_cos(c):
    """Per-segment int theta cos(theta) ds, theta linear."""
    th = c.profile.theta
    e0 = K.seg_exp_integral(th[:-1], c.turn, c.h)
    ramp = K.seg_ramp_integral(th[:-1], c.turn, c.h)
    # theta = theta_a + m u and int u e^{i theta} = h e0 - ramp
    return th[:-1] * e0.real + c.slope * (c.h * e0 - ramp).real


def mean_curvature_methods(profile, check=True):
    c = _check(profile, check)
    direct = math.pi * float(np.sum(c.int_sin + c.slope * c.int_x))
    f_form = math.pi * float(np.sum(c.int_sin - _int_theta_cos(c)))
    return MethodPair(direct, f_form)


def total_mean_curvature(profile, check=True):
    return mean_curvature_methods(profile, check).direct


def total_gauss_curvature(profile, check=True):
    """2 pi int theta' sin(theta) ds, integrated segment by segment.

    With ``check=False`` non-admissible profiles are accepted (diagnostic use).
    """
    c = _check(profile, check)
    return 2 * math.pi * float(np.sum(c.slope * c.int_sin))


def _mean_integrand(c, idx, u):
    """g = sin(theta) + theta' x at offset ``u`` in segment ``idx``."""
    th = c.profile.theta[idx] + c.slope[idx] * u
    return np.sin(th) + c.slope[idx] * c.local(idx, u).real


def total_abs_mean_curvature(profile, n_sub=N_SIGN_GRID, check=True):
    """pi int |sin(theta) + theta' x| ds.

    Sign changes of the integrand are bracketed on ``n_sub`` cells per
    segment and bisected to ``1e-12 L``; each sign-constant piece is then
    integrated with 16-point Gauss-Legendre.
    """
    c = _check(profile, check)
    nseg = profile.n_segments
    frac = np.linspace(0.0, 1.0, n_sub + 1)
    idx = np.repeat(np.arange(nseg), n_sub + 1).reshape(nseg, n_sub + 1)
    u = c.h[:, None] * frac[None, :]
    g = _mean_integrand(c, idx, u)

    seg_b, cell_b = np.nonzero(g[:, :-1] * g[:, 1:] < 0)
    lo = u[seg_b, cell_b]
    hi = u[seg_b, cell_b + 1]
    g_lo = g[seg_b, cell_b]
    tol = 1e-12 * profile.length
    while lo.size and np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        g_mid = _mean_integrand(c, seg_b, mid)
        same = np.sign(g_mid) == np.sign(g_lo)
        lo = np.where(same, mid, lo)
        g_lo = np.where(same, g_mid, g_lo)
        hi = np.where(same, hi, mid)
    roots = 0.5 * (lo + hi)

    piece_seg, piece_a, piece_b = [], [], []
    for k in range(nseg):
        cuts = np.concatenate([[0.0], np.sort(roots[seg_b == k]), [c.h[k]]])
        piece_seg.append(np.full(cuts.size - 1, k))
        piece_a.append(cuts[:-1])
        piece_b.append(cuts[1:])
    piece_seg = np.concatenate(piece_seg)
    nodes, weights = K.gauss_legendre(np.concatenate(piece_a), np.concatenate(piece_b))
    vals = np.abs(_mean_integrand(c, np.broadcast_to(piece_seg[:, None], nodes.shape), nodes))
    return math.pi * float(np.sum(vals * weights))


def principal_curvatures(profile, s, side="right"):
    """``(kappa1, kappa2)`` at arclength ``s``.

    ``kappa2`` is the slope of theta, taken on ``side`` of a breakpoint (right
    continuous by default).  At the poles ``kappa1`` is replaced by its limit
    ``theta'(0+)`` resp. ``theta'(L-)``.
    """
    L = profile.length
    if not 0.0 <= s <= L:
        raise ValueError(f"s={s} outside [0, {L}]")
    c = profile.curve
    k2 = float(c.theta_dot(s, side=side))
    pole_tol = 1e-12 * L
    if s <= pole_tol:
        return float(c.slope[0]), k2
    if s >= L - pole_tol:
        return float(c.slope[-1]), k2
    if s <= 0.5 * L:
        x = float(c.x(s))
    else:
        # integrate back from the upper pole to avoid cancellation near it
        idx = int(c.segment_index(s))
        th_s = float(profile.theta_at(s))
        tail = float(K.seg_exp_integral(th_s, profile.theta[idx + 1] - th_s, profile.s[idx + 1] - s).real)
        x = -(tail + float(np.sum(c.int_cos[idx + 1 :])))
    return math.sin(float(profile.theta_at(s))) / x, k2


def summarize(profile, check=True):
    _check(profile, check)
    c = profile.curve
    return GeometricSummary(
        area=area(profile, check=False),
        total_mean_curvature=total_mean_curvature(profile, check=False),
        total_abs_mean_curvature=total_abs_mean_curvature(profile, check=False),
        total_gauss_curvature=total_gauss_curvature(profile, check=False),
        generating_length=profile.length,
        apex_height=float(c.z_nodes[-1]),
    )
