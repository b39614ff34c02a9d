"""Seeded random generators of admissible angle profiles.

Angle values are drawn at random knots; the knot spacing is then warped by
``h_i -> h_i exp(-tau a_i)`` where ``a_i`` is the mean of ``cos theta`` over
segment ``i``.  Since the average cosine of a linear segment does not depend
on its length, ``x(L) = sum h_i a_i exp(-tau a_i)`` is strictly decreasing in
``tau`` and its root closes the curve on the axis.
"""

import math

import numpy as np
from scipy.optimize import brentq

from . import _kernels as K
from .profile import Profile

KINDS = ("inner-convex", "axiconvex", "admissible")
MAX_TRIES = 200


def _close_on_axis(h, theta):
    turn = np.diff(theta)
    a = np.cos(theta[:-1] + 0.5 * turn) * K.sinc_half(turn)

    def x_end(tau):
        return float(np.sum(h * a * np.exp(-tau * a)))

    lo, hi = -1.0, 1.0
    while x_end(lo) <= 0:
        lo *= 2
        if lo < -200:
            return None
    while x_end(hi) >= 0:
        hi *= 2
        if hi > 200:
            return None
    tau = brentq(x_end, lo, hi, xtol=1e-15, rtol=1e-15)
    return h * np.exp(-tau * a)


def _assemble(rng, theta):
    h = rng.uniform(0.3, 1.7, size=theta.size - 1)
    h = _close_on_axis(h, theta)
    if h is None:
        return None
    length = rng.uniform(0.5, 4.0)
    s = np.concatenate([[0.0], np.cumsum(h)])
    s *= length / s[-1]
    return Profile(s, theta)


def _inner_convex_angles(rng, n):
    w = rng.exponential(size=n)
    w[rng.random(n) < 0.15] = 0.0
    if w.sum() == 0:
        w[0] = 1.0
    theta = np.concatenate([[0.0], math.pi * np.cumsum(w) / w.sum()])
    theta[-1] = math.pi
    return theta


def _wavy_angles(rng, n, amplitude):
    t = np.linspace(0.0, 1.0, n + 1)
    noise = np.zeros(n + 1)
    for k in range(1, 5):
        noise += rng.normal() / k * np.sin(k * math.pi * t)
    noise += 0.3 * rng.normal(size=n + 1) * np.sin(math.pi * t)
    theta = math.pi * t + amplitude * noise / max(np.max(np.abs(noise)), 1e-12)
    theta[0], theta[-1] = 0.0, math.pi
    return theta


def random_profile(rng, kind="admissible"):
    """Draw one admissible profile of the requested class.

    ``kind`` is ``"inner-convex"`` (theta non-decreasing), ``"axiconvex"``
    (theta in ``[0, pi]``) or ``"admissible"`` (theta unrestricted).
    """
    for _ in range(MAX_TRIES):
        n = int(rng.integers(4, 25))
        if kind == "inner-convex":
            theta = _inner_convex_angles(rng, n)
        elif kind == "axiconvex":
            theta = np.clip(_wavy_angles(rng, n, rng.uniform(0.3, 1.5)), 0.0, math.pi)
        elif kind == "admissible":
            theta = _wavy_angles(rng, n, rng.uniform(0.8, 2.5))
        else:
            raise ValueError(f"unknown profile class {kind!r}; choose from {KINDS}")
        prof = _assemble(rng, theta)
        if prof is None:
            continue
        rep = prof.admissibility
        if not rep.admissible:
            continue
        if kind == "inner-convex" and not rep.is_inner_convex:
            continue
        if kind == "axiconvex" and not rep.is_axiconvex:
            continue
        return prof
    raise RuntimeError(f"could not draw an admissible {kind} profile in {MAX_TRIES} tries")


def random_suite(kind, count, seed):
    rng = np.random.default_rng(seed)
    return [random_profile(rng, kind) for _ in range(count)]
