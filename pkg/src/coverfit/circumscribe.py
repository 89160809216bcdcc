"""Fitting a constant-width body into a rotated strip polytope.

For a rotation tau, the frame strips pin down a unique translation x: a
width-one body sits inside a width-one strip only when the strip is exactly
centered on the body's own slab, which turns containment into the linear
equations x . v_i = h(v_i) - 1/2 over the frame normals v_i = tau u_i.  The
remaining strips each contribute one signed mismatch h(v_j) - 1/2 - x . v_j
between the body's slab midplane and the strip midplane; the vector of
mismatches is the residual, and a residual of zero certifies containment in
the full polytope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bodies import ConvexBody
from .errors import DegeneracyError, InputError
from .polytopes import ReferenceFrame, SymmetricPolytope, FACET_OFFSET
from .rotations import Rotation

_DET_FLOOR = 1e-6


@dataclass(frozen=True, eq=False)
class FitResult:
    """Translation, residual vector, and containment margin at one rotation."""

    x: np.ndarray
    residual: np.ndarray
    margin: float
    frame: ReferenceFrame

    @property
    def gnorm(self) -> float:
        return float(np.linalg.norm(self.residual))

    def to_dict(self) -> dict:
        return {
            "x": [float(c) for c in self.x],
            "residual": [float(c) for c in self.residual],
            "margin": float(self.margin),
            "frame": list(self.frame.indices),
        }


def fit_translation(body: ConvexBody, frame_normals: np.ndarray) -> np.ndarray:
    """The unique translation centering the body in every frame strip.

    Solves x . v_i = h(v_i) - 1/2.  Centering is forced: the two containment
    inequalities for one strip sum to width(v_i) <= 1, which holds with
    equality for a width-one body, so both must be tight.
    """
    V = np.asarray(frame_normals, dtype=float)
    n = body.dim
    if V.shape != (n, n):
        raise InputError(f"frame must be ({n}, {n}), got {V.shape}")
    if abs(float(np.linalg.det(V))) <= _DET_FLOOR:
        raise DegeneracyError("frame normals are numerically dependent")
    b = body.support_many(V) - FACET_OFFSET
    return np.linalg.solve(V, b)


def strip_residual(body: ConvexBody, v: np.ndarray, x: np.ndarray) -> float:
    """Signed distance from the strip midplane through x to the body's slab
    midplane, for the oriented unit normal v."""
    v = np.asarray(v, dtype=float)
    x = np.asarray(x, dtype=float)
    return body.support(v) - FACET_OFFSET - float(x @ v)


def containment_margin(
    body: ConvexBody, P: SymmetricPolytope, tau: Rotation, x: np.ndarray
) -> float:
    """Worst slack over all 2k facets of x + tau(P) against the body.

    Nonnegative (to tolerance) means containment.  For width-one bodies the
    value never exceeds zero by more than roundoff: the two facets of any
    strip have slacks summing to zero, so containment is always tangential.
    """
    _check_dims(body, P, tau)
    x = np.asarray(x, dtype=float)
    W = tau.apply_many(P.strip_normals)
    h_plus = body.support_many(W)
    h_minus = body.support_many(-W)
    proj = W @ x
    slack = np.concatenate([FACET_OFFSET - h_plus + proj, FACET_OFFSET - h_minus - proj])
    return float(np.min(slack))


def residual_map(body: ConvexBody, P: SymmetricPolytope, tau: Rotation) -> FitResult:
    """Translation, residual over the non-frame strips, and margin at tau.

    The residual components are ordered by ascending original strip index,
    so vectors are comparable across calls.
    """
    _check_dims(body, P, tau)
    x, residual = _translation_and_residual(body, P, tau)
    margin = containment_margin(body, P, tau, x)
    return FitResult(x=x, residual=residual, margin=margin, frame=P.frame)


def _translation_and_residual(
    body: ConvexBody, P: SymmetricPolytope, tau: Rotation
) -> tuple[np.ndarray, np.ndarray]:
    """Shared fast path: frame solve plus non-frame mismatches, no margin."""
    V = tau.apply_many(P.strip_normals)
    h = body.support_many(V)
    frame_idx = list(P.frame.indices)
    Vf = V[frame_idx]
    if abs(float(np.linalg.det(Vf))) <= _DET_FLOOR:
        raise DegeneracyError("rotated frame normals are numerically dependent")
    x = np.linalg.solve(Vf, h[frame_idx] - FACET_OFFSET)
    rest = [j for j in range(P.n_strips) if j not in P.frame.indices]
    residual = h[rest] - FACET_OFFSET - V[rest] @ x
    return x, residual


def _check_dims(body: ConvexBody, P: SymmetricPolytope, tau: Rotation) -> None:
    if not (body.dim == P.dim == tau.dim):
        raise InputError(
            f"dimension mismatch: body {body.dim}, polytope {P.dim}, rotation {tau.dim}"
        )
