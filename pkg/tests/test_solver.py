import numpy as np
import pytest

from islr.exceptions import ConfigRejected
from islr.linalg import norm, sv_shrink
from islr.penalty import PenaltyParams, prox_matrix
from islr.solver import (
    ADMMState, SolverConfig, admm_step, objective, solve, solve_slr, validate_config,
)
from oracles import grid_minimize_1x1, objective_direct


def cfg(l0, l1, a0=0.0, a1=0.0, kind="rat", **kw):
    return SolverConfig.build(l0, l1, a0, a1, penalty=kind, **kw)


def test_validate_examples():
    assert validate_config(cfg(1, 1, 0.8, 0.19, mu=1.5)).accepted
    out = validate_config(cfg(1, 1, 0.8, 1.0))
    assert not out.accepted
    assert out.convexity_margin == pytest.approx(-0.8)
    assert "0.8" in out.violations[0]
    out = validate_config(cfg(1, 1, mu=1.0))
    assert not out.accepted and out.mu_margin == 0
    assert any("mu" in v for v in out.violations)


def test_objective_examples(rng):
    Y = rng.normal(size=(4, 3))
    c = cfg(0.7, 0.4, 0.5, 0.3, "atan")
    assert objective(np.zeros((4, 3)), np.zeros((4, 3)), c) == 0
    assert objective(np.zeros((4, 3)), Y, c) == pytest.approx(0.5 * np.sum(Y**2))
    X = rng.normal(size=(4, 3))
    c0 = cfg(0.7, 0.4)
    expected = (0.5 * norm(Y - X) ** 2 + 0.7 * norm(X, "nuclear") + 0.4 * norm(X, "entrywise_l1"))
    assert objective(X, Y, c0) == pytest.approx(expected, rel=1e-12)
    for kind in ("rational", "arctangent", "logarithmic"):
        c = cfg(0.7, 0.4, 0.5, 0.3, kind)
        assert objective(X, Y, c) == pytest.approx(
            objective_direct(X, Y, 0.7, 0.4, kind, 0.5, 0.3), rel=1e-12)
    with pytest.raises(ValueError):
        objective(np.zeros((2, 2)), np.zeros((3, 2)), c0)


def test_admm_step_fixed_point_at_origin():
    z = np.zeros((3, 3))
    s = admm_step(ADMMState(z, z, z), z, cfg(1, 1, 0.3, 0.3))
    assert not np.any(s.X) and not np.any(s.Z) and not np.any(s.D)


def test_admm_step_no_shrinkage(rng):
    Y, Z, D = rng.normal(size=(3, 4, 5))
    s = admm_step(ADMMState(None, Z, D), Y, cfg(0, 0, mu=1.5))
    np.testing.assert_allclose(s.X, (Y + 1.5 * (Z + D)) / 2.5, atol=1e-14)


def test_admm_step_hand_trace():
    # Y = diag(3, 1), lambda0 = lambda1 = 1, a = 0, mu = 1.5, from Z = D = 0.
    # step 1: target = Y/2.5 = diag(1.2, 0.4); soft(0.4) -> X = diag(0.8, 0)
    #         Z = svt(X, 2/3) = diag(2/15, 0); D = -(X - Z) = diag(-2/3, 0)
    # step 2: target = (Y + 1.5*(Z + D))/2.5 = diag(0.88, 0.4) -> X = diag(0.48, 0)
    #         X - D = diag(1.14667, 0) -> Z = diag(0.48, 0); D = diag(-2/3, 0)
    Y = np.diag([3.0, 1.0])
    c = cfg(1, 1, mu=1.5)
    z = np.zeros((2, 2))
    s = admm_step(ADMMState(z, z, z), Y, c)
    np.testing.assert_allclose(s.X, np.diag([0.8, 0]), atol=1e-14)
    np.testing.assert_allclose(s.Z, np.diag([2 / 15, 0]), atol=1e-14)
    np.testing.assert_allclose(s.D, np.diag([-2 / 3, 0]), atol=1e-14)
    s = admm_step(s, Y, c)
    np.testing.assert_allclose(s.X, np.diag([0.48, 0]), atol=1e-14)
    np.testing.assert_allclose(s.Z, np.diag([0.48, 0]), atol=1e-14)
    np.testing.assert_allclose(s.D, np.diag([-2 / 3, 0]), atol=1e-14)


@pytest.mark.parametrize("kind", ["rat", "atan", "log"])
def test_solve_lambda0_zero_is_entrywise_prox(rng, kind):
    Y = rng.normal(scale=2, size=(12, 9))
    c = cfg(0, 1, 0, 0.8, kind, eps=1e-10)
    res = solve(Y, c)
    assert res.converged
    expected = prox_matrix(Y, 1, PenaltyParams(kind, 0.8))
    assert np.linalg.norm(res.X - expected) <= 1e-6 * np.linalg.norm(expected)


def test_solve_lambda1_zero_is_svt(rng):
    Y = rng.normal(size=(10, 7))
    res = solve(Y, cfg(1.5, 0, eps=1e-10))
    expected = sv_shrink(Y, 1.5, PenaltyParams("rat", 0))
    assert np.linalg.norm(res.X - expected) <= 1e-6 * np.linalg.norm(expected)


def test_solve_1x1_matches_grid():
    c = cfg(0.5, 0.5, 0.9, 0.9, "rat", eps=1e-10)
    res = solve(np.array([[2.0]]), c)
    expected = grid_minimize_1x1(2.0, 0.5, 0.5, "rational", 0.9, 0.9)
    assert res.X[0, 0] == pytest.approx(expected, abs=1e-4)


def test_solve_result_invariants(rng):
    Y = rng.normal(size=(15, 10))
    c = cfg(1.0, 0.3, 0.5, 1.5, "atan")
    res = solve(Y, c)
    assert res.converged
    assert len(res.objective_history) == res.iterations
    assert np.all(np.isfinite(res.objective_history))
    f = res.objective_history
    assert abs(f[-1] - f[-2]) < c.eps * abs(f[-1])
    assert res.residual <= 1e-3 * max(1, np.linalg.norm(res.X))


def test_solve_trivial_cases(rng):
    Y = rng.normal(size=(3, 3))
    res = solve(Y, cfg(0, 0))
    assert res.iterations == 0 and np.array_equal(res.X, Y)
    res = solve(np.zeros((3, 3)), cfg(1, 1, 0.3, 0.3))
    assert res.converged and not np.any(res.X)


def test_solve_rejects_bad_config():
    with pytest.raises(ConfigRejected):
        solve(np.ones((2, 2)), cfg(1, 1, 0.8, 1.0))
    with pytest.raises(ConfigRejected):
        solve(np.ones((2, 2)), cfg(1, 1, mu=0.9))


def test_solve_slr_matches_solve_bitwise(rng):
    Y = rng.normal(size=(8, 6))
    a = solve_slr(Y, 0.8, 0.3)
    b = solve(Y, cfg(0.8, 0.3, 0, 0, "atan"))
    assert np.array_equal(a.X, b.X)
    assert a.objective_history == b.objective_history


def test_solve_slr_lambda1_zero_is_svt(rng):
    Y = rng.normal(size=(6, 9))
    res = solve_slr(Y, 1.2, 0, eps=1e-10)
    expected = sv_shrink(Y, 1.2, PenaltyParams("rat", 0))
    assert np.linalg.norm(res.X - expected) <= 1e-6 * np.linalg.norm(expected)


def test_solve_slr_optimality_probe(rng):
    Y = rng.normal(size=(8, 6))
    c = cfg(0.9, 0.25, eps=1e-12, max_iter=5000)
    res = solve(Y, c)
    F = objective(res.X, Y, c)
    for _ in range(1000):
        d = rng.normal(size=Y.shape)
        d *= 1e-3 / np.linalg.norm(d)
        assert F <= objective(res.X + d, Y, c) + 1e-12


def test_uniqueness_from_random_init(rng):
    Y = rng.normal(size=(12, 10))
    c = cfg(1.0, 0.4, 0.6, 0.9, "atan", eps=1e-8)
    a = solve(Y, c)
    b = solve(Y, c, init=(rng.normal(size=Y.shape), rng.normal(size=Y.shape)))
    assert np.linalg.norm(a.X - b.X) <= 1e-4 * np.linalg.norm(a.X)


def test_complex_solve(rng):
    Y = rng.normal(size=(6, 5)) + 1j * rng.normal(size=(6, 5))
    c = cfg(0, 1.0, 0, 0.5, "atan", eps=1e-10)
    res = solve(Y, c)
    np.testing.assert_allclose(res.X, prox_matrix(Y, 1.0, PenaltyParams("atan", 0.5)),
                               atol=1e-6)


def test_history_csv(tmp_path, rng):
    res = solve(rng.normal(size=(4, 4)), cfg(0.5, 0.2))
    path = tmp_path / "h.csv"
    res.write_history(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "iter,objective"
    assert len(lines) == res.iterations + 1
    k, f = lines[1].split(",")
    assert int(k) == 1 and float(f) == res.objective_history[0]
