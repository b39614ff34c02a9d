"""Closed-form integration kernels for a linearly varying angle.

On a segment of length ``h`` where the angle grows linearly from ``a`` by a
total turn ``d``, every integral we need reduces to

    int_0^h (h - u)^(k-1) / (k-1)! * exp(i (a + d u / h)) du = exp(i a) h^k phi_k(i d)

with the entire functions ``phi_k(z) = sum_n z^n / (n + k)!``.  Evaluating
``phi_k`` by its series near zero and by the closed form elsewhere keeps the
kernels accurate for any turn, including the constant-angle limit.
"""

from math import factorial

import numpy as np

# |turn| below this switches the half-angle sinc to its Taylor expansion.
SLOPE_TOL = 1e-8

_SERIES_RADIUS = 1.0
_SERIES_TERMS = 30

_GL16 = np.polynomial.legendre.leggauss(16)
_GL24 = np.polynomial.legendre.leggauss(24)


def sinc_half(d):
    """Return sin(d/2) / (d/2), switching to a Taylor branch for tiny ``d``."""
    d = np.asarray(d, dtype=float)
    out = np.empty_like(d)
    small = np.abs(d) < SLOPE_TOL
    ds = d[small]
    out[small] = 1.0 - ds * ds / 24.0
    dl = d[~small]
    out[~small] = np.sin(0.5 * dl) / (0.5 * dl)
    return out


def phi(k, z):
    """Vectorised ``phi_k`` for complex arguments (k = 1, 2, 3)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    near = np.abs(z) < _SERIES_RADIUS
    if near.any():
        zn = z[near]
        acc = np.zeros_like(zn)
        for n in range(_SERIES_TERMS - 1, -1, -1):
            acc = acc * zn + 1.0 / factorial(n + k)
        out[near] = acc
    if (~near).any():
        zf = z[~near]
        num = np.exp(zf)
        for n in range(k):
            num = num - zf**n / factorial(n)
        out[~near] = num / zf**k
    return out


def seg_exp_integral(theta_a, turn, h):
    """int_0^h exp(i theta(u)) du for an angle rising linearly by ``turn``."""
    theta_a = np.asarray(theta_a, dtype=float)
    turn = np.asarray(turn, dtype=float)
    h = np.asarray(h, dtype=float)
    return h * np.exp(1j * (theta_a + 0.5 * turn)) * sinc_half(turn)


def seg_ramp_integral(theta_a, turn, h):
    """int_0^h (h - u) exp(i theta(u)) du."""
    theta_a = np.asarray(theta_a, dtype=float)
    return np.exp(1j * theta_a) * np.asarray(h, dtype=float) ** 2 * phi(2, 1j * np.asarray(turn, dtype=float))


def gauss_legendre(a, b, order=16):
    """Nodes (n_pieces, order) and weights for Gauss-Legendre on each [a, b]."""
    x, w = _GL16 if order == 16 else (_GL24 if order == 24 else np.polynomial.legendre.leggauss(order))
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w
