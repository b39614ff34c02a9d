"""Generating-angle representation of axisymmetric surfaces.

A surface of revolution is described by the angle ``theta(s)`` between the
x-axis and the unit tangent of its generating curve, parametrised by arclength
on ``[0, L]``.  Here ``theta`` is continuous and piecewise linear, so the curve
``x(s) = int cos theta``, ``z(s) = int sin theta`` is integrated segment by
segment in closed form.
"""

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
import shapely

from . import _kernels as K

VALIDATE_TOL = 1e-9
N_SAMPLES = 4096


class ProfileError(ValueError):
    """Structurally invalid profile data (bad breakpoints, malformed file)."""


class NotAdmissibleError(ValueError):
    """Raised when an operation needs an admissible profile and did not get one."""

    def __init__(self, report):
        failed = [name for name, ok in report.conditions().items() if not ok]
        super().__init__("profile is not admissible: failed " + ", ".join(failed))
        self.report = report


def segment_integrals(theta_a, theta_b, ds):
    """Exact ``(int cos theta, int sin theta)`` over one linear segment."""
    vals = (theta_a, theta_b, ds)
    if not all(math.isfinite(v) for v in vals):
        raise ValueError(f"non-finite segment data {vals!r}")
    if ds <= 0:
        raise ValueError(f"segment length must be positive, got {ds}")
    w = complex(K.seg_exp_integral(theta_a, theta_b - theta_a, ds))
    return w.real, w.imag


@dataclass(frozen=True, eq=False)
class Profile:
    """Continuous piecewise-linear angle function on ``[0, L]``.

    ``s`` holds the breakpoint abscissae (``s[0] == 0``, strictly increasing)
    and ``theta`` the angle in radians at each of them.  Instances are
    immutable; derived data (curve, admissibility) is cached on first use.
    """

    s: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        s = np.array(self.s, dtype=float)
        theta = np.array(self.theta, dtype=float)
        if s.ndim != 1 or s.shape != theta.shape:
            raise ProfileError("breakpoint arrays must be 1-d and of equal length")
        if s.size < 2:
            raise ProfileError("a profile needs at least two breakpoints")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(theta))):
            raise ProfileError("breakpoints must be finite")
        if s[0] != 0.0:
            raise ProfileError(f"first breakpoint must sit at s=0, got {s[0]}")
        if np.any(np.diff(s) <= 0):
            raise ProfileError("breakpoint abscissae must be strictly increasing")
        s.flags.writeable = False
        theta.flags.writeable = False
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_breakpoints(cls, pairs):
        arr = np.asarray(pairs, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ProfileError("breakpoints must be a list of [s, theta] pairs")
        return cls(arr[:, 0], arr[:, 1])

    @property
    def length(self):
        return float(self.s[-1])

    @property
    def breakpoints(self):
        return [(float(a), float(b)) for a, b in zip(self.s, self.theta)]

    @property
    def n_segments(self):
        return self.s.size - 1

    @cached_property
    def slopes(self):
        return np.diff(self.theta) / np.diff(self.s)

    @property
    def lipschitz_modulus(self):
        return float(np.max(np.abs(self.slopes)))

    def theta_at(self, s):
        return np.interp(s, self.s, self.theta)

    @cached_property
    def curve(self):
        return CurveEval(self)

    @cached_property
    def admissibility(self):
        return validate(self)

    def scaled(self, t):
        """Homothety of ratio ``t``: same angles, arclengths multiplied by ``t``."""
        if not t > 0:
            raise ValueError("scale factor must be positive")
        return Profile(self.s * t, self.theta)

    def reversed(self):
        """The profile ``s -> pi - theta(L - s)``: the surface reflected in z."""
        L = self.length
        s = L - self.s[::-1]
        s[0] = 0.0
        return Profile(s, math.pi - self.theta[::-1])

    def to_dict(self):
        return {"length": self.length, "breakpoints": [list(p) for p in self.breakpoints]}

    @classmethod
    def from_dict(cls, data):
        try:
            length = float(data["length"])
            pairs = data["breakpoints"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ProfileError(f"profile JSON needs 'length' and 'breakpoints': {exc}") from None
        prof = cls.from_breakpoints(pairs)
        if not math.isclose(prof.length, length, rel_tol=1e-12, abs_tol=0.0):
            raise ProfileError(f"'length' {length} disagrees with last breakpoint {prof.length}")
        return prof

    def __repr__(self):
        return f"Profile(L={self.length:.6g}, n_breakpoints={self.s.size})"


def sphere_profile(R=1.0):
    """Round sphere of radius ``R``: ``theta(s) = s / R`` on ``[0, pi R]``."""
    return Profile([0.0, math.pi * R], [0.0, math.pi])


def load_profile(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProfileError(f"{path}: invalid JSON ({exc})") from None
    return Profile.from_dict(data)


def dump_profile(profile, path):
    Path(path).write_text(json.dumps(profile.to_dict(), indent=1) + "\n", encoding="utf-8")


class CurveEval:
    """Generating curve of a profile with cached per-segment antiderivatives.

    Node values ``x_nodes``/``z_nodes`` are the curve coordinates at the
    breakpoints; ``int_x``, ``int_z``, ``int_cos``, ``int_sin`` and
    ``int_s_cos`` are the exact integrals of ``x``, ``z``, ``cos theta``,
    ``sin theta`` and ``s cos theta`` over each segment.
    """

    def __init__(self, profile):
        self.profile = profile
        s, th = profile.s, profile.theta
        self.h = np.diff(s)
        self.turn = np.diff(th)
        self.slope = self.turn / self.h
        e0 = K.seg_exp_integral(th[:-1], self.turn, self.h)
        ramp = K.seg_ramp_integral(th[:-1], self.turn, self.h)
        self.int_cos = e0.real
        self.int_sin = e0.imag
        self.x_nodes = np.concatenate([[0.0], np.cumsum(self.int_cos)])
        self.z_nodes = np.concatenate([[0.0], np.cumsum(self.int_sin)])
        self.int_x = self.x_nodes[:-1] * self.h + ramp.real
        self.int_z = self.z_nodes[:-1] * self.h + ramp.imag
        # int u e^{i theta} du = h * int e^{i theta} - int (h - u) e^{i theta}
        self.int_s_cos = (s[:-1] * e0 + self.h * e0 - ramp).real

    def segment_index(self, s, side="right"):
        s = np.asarray(s, dtype=float)
        idx = np.searchsorted(self.profile.s, s, side=side) - 1
        return np.clip(idx, 0, self.profile.n_segments - 1)

    def local(self, idx, u):
        """Complex position ``x + i z`` at offset ``u`` inside segment ``idx``."""
        th_a = self.profile.theta[idx]
        w = K.seg_exp_integral(th_a, self.slope[idx] * u, u)
        return self.x_nodes[idx] + w.real + 1j * (self.z_nodes[idx] + w.imag)

    def position(self, s):
        s = np.asarray(s, dtype=float)
        idx = self.segment_index(s)
        return self.local(idx, s - self.profile.s[idx])

    def x(self, s):
        return self.position(s).real

    def z(self, s):
        return self.position(s).imag

    def theta(self, s):
        return self.profile.theta_at(s)

    def theta_dot(self, s, side="right"):
        """Slope of theta; at a breakpoint ``side`` picks the one-sided value."""
        return self.slope[self.segment_index(s, side="right" if side == "right" else "left")]

    def x_at_breakpoints(self):
        return self.x_nodes

    def z_at_breakpoints(self):
        return self.z_nodes


def evaluate_curve(profile):
    return profile.curve


@dataclass
class AdmissibilityReport:
    cond_boundary_angles: bool
    cond_endpoints: bool
    cond_positive_simple: bool
    is_axiconvex: bool
    is_inner_convex: bool
    diagnostics: list = field(default_factory=list)

    @property
    def admissible(self):
        return self.cond_boundary_angles and self.cond_endpoints and self.cond_positive_simple

    def conditions(self):
        return {
            "boundary_angles": self.cond_boundary_angles,
            "endpoints": self.cond_endpoints,
            "positive_simple": self.cond_positive_simple,
        }

    def to_dict(self):
        return {
            "cond_boundary_angles": self.cond_boundary_angles,
            "cond_endpoints": self.cond_endpoints,
            "cond_positive_simple": self.cond_positive_simple,
            "is_axiconvex": self.is_axiconvex,
            "is_inner_convex": self.is_inner_convex,
            "admissible": self.admissible,
            "diagnostics": [list(d) for d in self.diagnostics],
        }


def dense_grid(profile, n=N_SAMPLES):
    """Uniform grid with spacing <= L/n merged with every breakpoint."""
    return np.union1d(np.linspace(0.0, profile.length, n + 1), profile.s)


def _is_simple(profile):
    pts = profile.curve.position(dense_grid(profile))
    line = shapely.LineString(np.column_stack([pts.real, pts.imag]))
    return bool(line.is_simple)


def validate(profile, tol=VALIDATE_TOL):
    """Check the three admissibility conditions and classify the profile.

    Failures are reported, never raised.  Injectivity of the generating curve
    is automatic when theta stays in ``[0, pi]``; otherwise the curve is
    polygonised at spacing ``<= L/4096`` and tested for self-intersection.
    """
    L = profile.length
    th = profile.theta
    c = profile.curve
    diag = []

    boundary = bool(abs(th[0]) <= tol and abs(th[-1] - math.pi) <= tol)
    if abs(th[0]) > tol:
        diag.append(("boundary_angles", 0.0, float(th[0])))
    if abs(th[-1] - math.pi) > tol:
        diag.append(("boundary_angles", L, float(th[-1])))

    xL, zL = float(c.x_nodes[-1]), float(c.z_nodes[-1])
    endpoints = abs(xL) <= tol * L and zL > tol * L
    if abs(xL) > tol * L:
        diag.append(("endpoints", L, xL))
    if not zL > tol * L:
        diag.append(("endpoints", L, zL))

    inner = np.union1d(np.linspace(0.0, L, N_SAMPLES + 2)[1:-1], profile.s[1:-1])
    xs = c.x(inner)
    bad = np.flatnonzero(~(xs > 0))
    positive = bad.size == 0
    if not positive:
        k = bad[np.argmin(xs[bad])]
        diag.append(("positive_simple", float(inner[k]), float(xs[k])))

    in_range = bool(np.all(th >= -tol) and np.all(th <= math.pi + tol))
    simple = True
    if positive and not in_range:
        simple = _is_simple(profile)
        if not simple:
            diag.append(("positive_simple", math.nan, 0.0))

    ok = boundary and endpoints and positive and simple
    axiconvex = ok and in_range
    inner_convex = axiconvex and bool(np.all(np.diff(th) >= -tol))
    return AdmissibilityReport(boundary, endpoints, positive and simple, axiconvex, inner_convex, diag)


def require_admissible(profile):
    report = profile.admissibility
    if not report.admissible:
        raise NotAdmissibleError(report)
    return report
