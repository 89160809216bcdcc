import numpy as np


def unit_vectors(rng: np.random.Generator, dim: int, count: int) -> np.ndarray:
    """Uniform random unit vectors, rows of shape (count, dim)."""
    v = rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def reuleaux_boundary_oracle(k: int, phase: float, n_per_arc: int) -> np.ndarray:
    """Dense boundary sample of a regular Reuleaux polygon of width one.

    Built directly from the arc geometry: vertex j carries the arc of radius
    one joining the two vertices opposite it.  Kept independent of the
    package's support-function evaluation on purpose.
    """
    circumradius = 1.0 / (2.0 * np.cos(np.pi / (2 * k)))
    ang = phase + 2.0 * np.pi * np.arange(k) / k
    verts = circumradius * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    m = (k - 1) // 2
    pts = []
    for j in range(k):
        a = verts[(j + m) % k] - verts[j]
        b = verts[(j + m + 1) % k] - verts[j]
        phi0 = np.arctan2(a[1], a[0])
        sweep = (np.arctan2(b[1], b[0]) - phi0) % (2.0 * np.pi)
        phis = phi0 + sweep * np.linspace(0.0, 1.0, n_per_arc)
        pts.append(verts[j] + np.stack([np.cos(phis), np.sin(phis)], axis=1))
    return np.concatenate(pts, axis=0)
