import numpy as np
import pytest

from coverfit import (
    InputError,
    Rotation,
    SearchConfig,
    make_ball,
    make_perturbed_ball,
    make_reuleaux_polygon,
    minimize,
    preset,
    residual_map,
    scan_2d,
    scan_residual_2d,
)
from coverfit.search import _run_single_start


def test_config_defaults_and_validation():
    cfg = SearchConfig()
    assert (cfg.restarts, cfg.tol, cfg.max_iters) == (200, 1e-10, 5000)
    with pytest.raises(InputError):
        SearchConfig(restarts=0)
    with pytest.raises(InputError):
        SearchConfig(tol=0.0)
    with pytest.raises(InputError):
        SearchConfig(max_iters=0)
    with pytest.raises(InputError):
        SearchConfig(seed=-1)


def test_ball_converges_immediately():
    for name in ("hexagon2d", "rhombic12_3d", "axisdiag14_4d"):
        P = preset(name)
        out = minimize(make_ball(P.dim), P, SearchConfig(seed=0, restarts=3))
        assert out.converged
        assert out.starts == 1
        assert out.gnorm == 0.0


def test_ball_needs_zero_iterations():
    P = preset("axisdiag14_4d")
    gn, _, iters = _run_single_start(make_ball(4), P, SearchConfig(seed=0), 0)
    assert gn == 0.0
    assert iters == 0


def test_reuleaux_triangle_zero_matches_scan_bracket():
    body = make_reuleaux_polygon(3, phase=0.0)
    P = preset("hexagon2d")
    out = minimize(body, P, SearchConfig(seed=1, restarts=20))
    assert out.converged
    assert out.gnorm <= 1e-10
    assert out.fit.margin >= -1e-8
    brackets = [b for b in scan_2d(body, P, 10_000) if b.kind == "sign_change"]
    assert brackets
    theta = out.rotation.angle
    candidates = [theta % np.pi, (theta % np.pi) - np.pi, (theta % np.pi) + np.pi]
    hit = any(
        b.theta_lo - 1e-6 <= c <= b.theta_hi + 1e-6 for b in brackets for c in candidates
    )
    assert hit, f"solver angle {theta} not inside any refined bracket"


def test_perturbed_ball_4d_end_to_end():
    body = make_perturbed_ball(4, 3, 0.05, seed=7)
    P = preset("axisdiag14_4d")
    out = minimize(body, P, SearchConfig(seed=7))
    assert out.converged
    assert out.gnorm <= 1e-10
    assert out.fit.margin >= -1e-8


def test_minimize_deterministic_bitwise():
    body = make_perturbed_ball(4, 3, 0.05, seed=3)
    P = preset("axisdiag14_4d")
    cfg = SearchConfig(seed=12)
    a = minimize(body, P, cfg)
    b = minimize(body, P, cfg)
    assert a.gnorm == b.gnorm
    assert np.array_equal(a.rotation.matrix, b.rotation.matrix)
    assert np.array_equal(a.fit.x, b.fit.x)
    assert np.array_equal(a.fit.residual, b.fit.residual)
    assert a.fit.margin == b.fit.margin
    assert a.starts == b.starts


def test_parallel_waves_match_sequential():
    body = make_perturbed_ball(4, 3, 0.05, seed=4)
    P = preset("axisdiag14_4d")
    cfg = SearchConfig(seed=5, restarts=4)
    seq = minimize(body, P, cfg, n_workers=1)
    par = minimize(body, P, cfg, n_workers=2)
    assert seq.gnorm == par.gnorm
    assert np.array_equal(seq.rotation.matrix, par.rotation.matrix)
    assert seq.starts == par.starts
    assert seq.converged == par.converged


def test_reevaluation_reproduces_gnorm():
    body = make_perturbed_ball(4, 3, 0.05, seed=8)
    P = preset("axisdiag14_4d")
    out = minimize(body, P, SearchConfig(seed=8))
    fresh = residual_map(body, P, out.rotation)
    assert float(np.linalg.norm(fresh.residual)) == out.gnorm
    assert out.converged and fresh.gnorm <= 1e-10


def test_no_zero_found_outcome():
    # one start, starved iteration budget: must report not-converged
    # with the best rotation seen, not raise
    body = make_reuleaux_polygon(3, phase=0.4)
    P = preset("hexagon2d")
    out = minimize(body, P, SearchConfig(seed=2, restarts=1, max_iters=1, tol=1e-14))
    assert not out.converged
    assert out.starts == 1
    assert np.isfinite(out.gnorm)
    assert out.gnorm > 1e-14


def test_outcome_serialization_dim4():
    body = make_perturbed_ball(4, 3, 0.05, seed=9)
    P = preset("axisdiag14_4d")
    out = minimize(body, P, SearchConfig(seed=9))
    d = out.to_dict()
    for key in ("dim", "matrix", "x", "residual", "gnorm", "margin", "starts", "converged", "seed", "quaternion_pair"):
        assert key in d
    assert len(d["matrix"]) == 4
    p, q = d["quaternion_pair"]
    again = Rotation.from_quaternion_pair(np.array(p), np.array(q))
    assert np.max(np.abs(again.matrix - out.rotation.matrix)) <= 1e-12


def test_outcome_serialization_dim2_has_no_pair():
    body = make_reuleaux_polygon(3, 0.1)
    out = minimize(body, preset("hexagon2d"), SearchConfig(seed=3, restarts=10))
    assert "quaternion_pair" not in out.to_dict()


# --- scan oracle -----------------------------------------------------------


def test_scan_ball_reports_degenerate_zeros():
    brackets = scan_2d(make_ball(2), preset("hexagon2d"), 32)
    assert len(brackets) == 32
    assert all(b.kind == "degenerate_zero" for b in brackets)
    assert all(b.residual_at_root == 0.0 for b in brackets)


@pytest.mark.parametrize("k,phase", [(3, 0.0), (5, 0.31), (7, 1.9)])
def test_scan_finds_brackets_for_reuleaux(k, phase):
    body = make_reuleaux_polygon(k, phase)
    brackets = [b for b in scan_2d(body, preset("hexagon2d"), 2048) if b.kind == "sign_change"]
    assert len(brackets) >= 1
    for b in brackets:
        assert abs(b.residual_at_root) <= 1e-12
        # 60 bisections of a pi/2048 interval bottom out at float spacing
        assert b.theta_hi - b.theta_lo <= 4.0 * np.spacing(b.theta_hi)


def test_scan_roots_are_true_zeros():
    body = make_reuleaux_polygon(3, 0.0)
    P = preset("hexagon2d")
    for b in scan_2d(body, P, 512):
        if b.kind == "sign_change":
            fit = residual_map(body, P, Rotation.from_angle(b.root))
            assert abs(fit.residual[0]) <= 1e-12
            assert fit.margin >= -1e-10


def test_scan_residual_table_shape():
    thetas, values = scan_residual_2d(make_reuleaux_polygon(3, 0.2), preset("hexagon2d"), 100)
    assert thetas.shape == (101,)
    assert values.shape == (101,)
    # odd under a half turn: endpoint value is minus the start value
    assert values[-1] == pytest.approx(-values[0], abs=1e-12)


def test_scan_input_errors():
    with pytest.raises(InputError):
        scan_2d(make_ball(2), preset("hexagon2d"), 0)
    with pytest.raises(InputError):
        scan_2d(make_ball(4), preset("hexagon2d"), 16)
    # four strips give a two-component residual: not scannable
    four = np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0], [-0.5, 0.5]])
    from coverfit import make_polytope

    with pytest.raises(InputError):
        scan_2d(make_ball(2), make_polytope(2, four), 16)
