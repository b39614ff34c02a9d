"""Triangle mesh of the surface of revolution, for visualisation only.

The text format is Wavefront-like: one ``v x y z`` line per vertex, then one
``f i j k`` line per triangle with 1-based vertex indices, triangles oriented
by the outer normal.  Vertex 1 is the lower pole, the last vertex the upper
pole, and rings of ``n_t`` vertices sit in between.
"""

import math
from dataclasses import dataclass

import numpy as np

from .profile import require_admissible


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray
    faces: np.ndarray

    def triangle_areas(self):
        a, b, c = (self.vertices[self.faces[:, k]] for k in range(3))
        return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)

    def surface_area(self):
        return float(self.triangle_areas().sum())

    def signed_volume(self):
        a, b, c = (self.vertices[self.faces[:, k]] for k in range(3))
        return float(np.einsum("ij,ij->i", a, np.cross(b, c)).sum() / 6.0)

    def to_obj(self):
        lines = [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in self.vertices]
        lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in self.faces]
        return "\n".join(lines) + "\n"


def export_mesh(profile, n_s, n_t):
    """Sample ``X(s, t) = (x cos t, x sin t, z)`` on a uniform ``n_s x n_t`` grid."""
    if n_s < 2 or n_t < 3:
        raise ValueError("need n_s >= 2 and n_t >= 3")
    require_admissible(profile)
    s = np.linspace(0.0, profile.length, n_s)
    pos = profile.curve.position(s)
    x, z = pos.real, pos.imag
    t = 2 * math.pi * np.arange(n_t) / n_t
    rings = np.stack(
        [np.outer(x[1:-1], np.cos(t)), np.outer(x[1:-1], np.sin(t)), np.repeat(z[1:-1, None], n_t, axis=1)],
        axis=-1,
    ).reshape(-1, 3)
    verts = np.vstack([[0.0, 0.0, z[0]], rings, [0.0, 0.0, z[-1]]])

    n_rings = n_s - 2
    top = verts.shape[0] - 1
    faces = []
    if n_rings:
        j = np.arange(n_t)
        jn = (j + 1) % n_t
        faces.append(np.column_stack([np.zeros(n_t, int), 1 + jn, 1 + j]))
        for r in range(n_rings - 1):
            a, b = 1 + r * n_t, 1 + (r + 1) * n_t
            faces.append(np.column_stack([a + j, a + jn, b + jn]))
            faces.append(np.column_stack([a + j, b + jn, b + j]))
        last = 1 + (n_rings - 1) * n_t
        faces.append(np.column_stack([last + j, last + jn, np.full(n_t, top)]))
    faces = np.vstack(faces) if faces else np.zeros((0, 3), int)
    return Mesh(verts, faces)
