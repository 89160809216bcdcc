"""Zero search for the residual map over the rotation group.

The strategy is multistart local minimization of ||residual|| in the
exponential chart around a Haar-random rotation.  Nelder-Mead is used
because Reuleaux support functions have kinks at arc junctions; the chart
is re-centered at the incumbent every hundred iterations and the simplex is
rebuilt at the scale of the current residual, which keeps the final
contraction fast.  A failed search reports "no zero found", never
nonexistence: beyond the covering bound a zero may genuinely be absent, and
inside it a miss only signals numerical difficulty.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _nelder_mead

from .bodies import ConvexBody
from .circumscribe import FitResult, residual_map, _translation_and_residual
from .errors import DegeneracyError, InputError
from .polytopes import SymmetricPolytope
from .rotations import Rotation, chart_dim, exp_chart, random_rotation

_RECENTER_EVERY = 100
_INITIAL_SIMPLEX_SCALE = 0.5
_SIMPLEX_GAIN = 2.0
_MIN_SIMPLEX = 1e-9
_MAX_SIMPLEX = 0.25
_PENALTY = 1e6


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 200
    tol: float = 1e-10
    max_iters: int = 5000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise InputError("restarts must be at least 1")
        if not self.tol > 0.0:
            raise InputError("tol must be positive")
        if self.max_iters < 1:
            raise InputError("max_iters must be at least 1")
        if self.seed < 0:
            raise InputError("seed must be nonnegative")


@dataclass(frozen=True, eq=False)
class SearchOutcome:
    rotation: Rotation
    fit: FitResult
    gnorm: float
    starts: int
    converged: bool
    seed: int

    def to_dict(self) -> dict:
        d = {
            "dim": self.rotation.dim,
            "matrix": [[float(c) for c in row] for row in self.rotation.matrix],
            "x": [float(c) for c in self.fit.x],
            "residual": [float(c) for c in self.fit.residual],
            "gnorm": float(self.gnorm),
            "margin": float(self.fit.margin),
            "frame": list(self.fit.frame.indices),
            "starts": self.starts,
            "converged": self.converged,
            "seed": self.seed,
        }
        if self.rotation.dim == 4:
            p, q = self.rotation.quaternion_pair
            d["quaternion_pair"] = [[float(c) for c in p], [float(c) for c in q]]
        return d


def _gnorm_at(body: ConvexBody, P: SymmetricPolytope, tau: Rotation) -> float:
    _, residual = _translation_and_residual(body, P, tau)
    return float(np.linalg.norm(residual))


def _run_single_start(
    body: ConvexBody, P: SymmetricPolytope, cfg: SearchConfig, start_index: int
) -> tuple[float, np.ndarray, int]:
    """One restart: Haar start, then re-centered Nelder-Mead rounds.

    Returns (gnorm, rotation matrix, iterations used).  Deterministic for a
    fixed (cfg.seed, start_index).
    """
    rng = np.random.default_rng([cfg.seed, start_index])
    tau = random_rotation(body.dim, rng)
    gn = _gnorm_at(body, P, tau)
    if gn <= cfg.tol:
        return gn, tau.matrix, 0

    m = chart_dim(body.dim)
    iters = 0
    delta = _INITIAL_SIMPLEX_SCALE
    while iters < cfg.max_iters:
        center = tau

        def objective(a: np.ndarray) -> float:
            try:
                _, residual = _translation_and_residual(body, P, exp_chart(center, a))
            except DegeneracyError:
                return _PENALTY
            return float(np.linalg.norm(residual))

        simplex = np.zeros((m + 1, m))
        simplex[1:] = np.eye(m) * delta
        res = _nelder_mead(
            objective,
            np.zeros(m),
            method="Nelder-Mead",
            options={
                "maxiter": min(_RECENTER_EVERY, cfg.max_iters - iters),
                "xatol": 0.0,
                "fatol": 0.0,
                "initial_simplex": simplex,
            },
        )
        iters += max(int(res.nit), 1)
        tau = exp_chart(center, res.x)
        gn = float(res.fun)
        if gn <= cfg.tol:
            break
        delta = min(max(_SIMPLEX_GAIN * gn, _MIN_SIMPLEX), _MAX_SIMPLEX)
    return gn, tau.matrix, iters


def _start_task(payload: tuple) -> tuple[float, np.ndarray, int]:
    body, P, cfg, start_index = payload
    return _run_single_start(body, P, cfg, start_index)


def minimize(
    body: ConvexBody,
    P: SymmetricPolytope,
    cfg: SearchConfig | None = None,
    n_workers: int = 1,
) -> SearchOutcome:
    """Multistart search for a rotation with vanishing residual.

    Starts are independent; with n_workers > 1 they run in waves of worker
    processes.  The merged result is scheduling independent: the winner is
    the lowest start index reaching cfg.tol, otherwise the lowest gnorm seen
    (ties to the lower index), so reruns with the same config reproduce the
    outcome bit for bit.
    """
    if cfg is None:
        cfg = SearchConfig()
    if not (body.dim == P.dim):
        raise InputError(f"dimension mismatch: body {body.dim}, polytope {P.dim}")

    best_gn = np.inf
    best_matrix: np.ndarray | None = None
    converged_index: int | None = None

    def consider(index: int, gn: float, matrix: np.ndarray) -> bool:
        nonlocal best_gn, best_matrix, converged_index
        if gn < best_gn:
            best_gn = gn
            best_matrix = matrix
        if gn <= cfg.tol:
            converged_index = index
            return True
        return False

    if n_workers <= 1:
        for i in range(cfg.restarts):
            gn, matrix, _ = _run_single_start(body, P, cfg, i)
            if consider(i, gn, matrix):
                break
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            done = False
            for wave in range(0, cfg.restarts, n_workers):
                idxs = list(range(wave, min(wave + n_workers, cfg.restarts)))
                payloads = [(body, P, cfg, i) for i in idxs]
                for i, (gn, matrix, _) in zip(idxs, pool.map(_start_task, payloads)):
                    if consider(i, gn, matrix):
                        done = True
                        break
                if done:
                    break

    tau = Rotation(dim=body.dim, matrix=best_matrix)
    fit = residual_map(body, P, tau)
    gnorm = fit.gnorm
    converged = gnorm <= cfg.tol
    starts = (converged_index + 1) if converged_index is not None else cfg.restarts
    return SearchOutcome(
        rotation=tau, fit=fit, gnorm=gnorm, starts=starts, converged=converged, seed=cfg.seed
    )


# ---------------------------------------------------------------------------
# 2D brute-force scan, the independent oracle for the planar case.

_ZERO_EPS = 1e-15
_BISECTION_STEPS = 60


@dataclass(frozen=True)
class ScanBracket:
    theta_lo: float
    theta_hi: float
    root: float
    kind: str  # "sign_change" or "degenerate_zero"
    residual_at_root: float

    def to_dict(self) -> dict:
        return {
            "theta_lo": self.theta_lo,
            "theta_hi": self.theta_hi,
            "root": self.root,
            "kind": self.kind,
            "residual_at_root": self.residual_at_root,
        }


def scan_residual_2d(
    body: ConvexBody, P: SymmetricPolytope, samples: int
) -> tuple[np.ndarray, np.ndarray]:
    """The scalar residual sampled at `samples` uniform angles spanning [0, pi].

    Oddness of the residual under a half turn makes [pi, 2 pi) redundant.
    Returns (angles, residual values) with samples + 1 points including both
    endpoints.
    """
    _check_scan_inputs(body, P, samples)
    thetas = np.linspace(0.0, np.pi, samples + 1)
    values = np.array([_scalar_residual(body, P, t) for t in thetas])
    return thetas, values


def scan_2d(body: ConvexBody, P: SymmetricPolytope, samples: int) -> list[ScanBracket]:
    """All sign-change brackets of the scalar residual on [0, pi].

    Each sign change is refined by 60 bisection steps.  Intervals where the
    residual is numerically zero at both ends (the ball, for instance) are
    reported as degenerate zeros instead of being bisected.
    """
    thetas, values = scan_residual_2d(body, P, samples)
    brackets: list[ScanBracket] = []
    for i in range(samples):
        lo, hi = float(thetas[i]), float(thetas[i + 1])
        flo, fhi = float(values[i]), float(values[i + 1])
        lo_zero = abs(flo) <= _ZERO_EPS
        hi_zero = abs(fhi) <= _ZERO_EPS
        if lo_zero or hi_zero:
            root = lo if lo_zero and not hi_zero else (hi if hi_zero and not lo_zero else 0.5 * (lo + hi))
            brackets.append(
                ScanBracket(
                    theta_lo=lo,
                    theta_hi=hi,
                    root=root,
                    kind="degenerate_zero",
                    residual_at_root=_scalar_residual(body, P, root),
                )
            )
            continue
        if flo * fhi < 0.0:
            blo, bhi = lo, hi
            vlo = flo
            for _ in range(_BISECTION_STEPS):
                mid = 0.5 * (blo + bhi)
                vmid = _scalar_residual(body, P, mid)
                if vmid == 0.0:
                    blo = bhi = mid
                    break
                if (vlo < 0.0) != (vmid < 0.0):
                    bhi = mid
                else:
                    blo, vlo = mid, vmid
            root = 0.5 * (blo + bhi)
            brackets.append(
                ScanBracket(
                    theta_lo=blo,
                    theta_hi=bhi,
                    root=root,
                    kind="sign_change",
                    residual_at_root=_scalar_residual(body, P, root),
                )
            )
    return brackets


def _scalar_residual(body: ConvexBody, P: SymmetricPolytope, theta: float) -> float:
    _, residual = _translation_and_residual(body, P, Rotation.from_angle(theta))
    return float(residual[0])


def _check_scan_inputs(body: ConvexBody, P: SymmetricPolytope, samples: int) -> None:
    if body.dim != 2 or P.dim != 2:
        raise InputError("the scan oracle is two dimensional")
    if P.n_strips != 3:
        raise InputError("the scan oracle needs exactly three strips (scalar residual)")
    if samples < 1:
        raise InputError("samples must be at least 1")
