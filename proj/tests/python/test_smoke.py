"""Smoke tests for the Python bindings."""

import math

import pytest

import trichokinetics as tk


def test_version():
    assert tk.__version__ == "0.1.0"


def test_growth_law():
    mu = tk.GrowthLaw.monod(0.096, 11.27)
    assert mu.rate(11.27) == pytest.approx(0.048, rel=1e-14)
    assert mu.supremum() == 0.096
    with pytest.raises(ValueError):
        mu.rate(-1.0)


def test_baseline_run():
    sc = tk.find_builtin_scenario("validation-1")
    assert sc is not None
    result = tk.run_scenario(sc)
    s = result.summary
    assert s.steady_state_reached
    assert s.s_star == pytest.approx(1.17449, rel=1e-4)
    assert s.p_star == pytest.approx(31.84, rel=1e-3)
    assert s.closure_ok and s.integrals_ok and s.bound_ok and s.membership_ok
    assert any("Y_Bs=1.19" in w for w in s.hypothesis_warnings)
    assert s.lambda_ == pytest.approx(11.27, rel=1e-12)


def test_trajectory_columns():
    sc = tk.find_builtin_scenario("validation-1")
    cfg = tk.SimulationConfig()
    cfg.initial = sc.initial
    cfg.t_end = 10.0
    cfg.record_stride = 100
    cfg.steady_tol = 0.0
    traj = tk.integrate(cfg, sc.params)
    assert len(traj.times) == len(traj.X) == len(traj.B) == len(traj.s) == len(traj.P)
    assert traj.times[0] == 0.0
    assert traj.X[0] == 45.0
    assert traj.times[-1] == pytest.approx(10.0, rel=1e-12)


def test_sweep_order_and_members():
    spec = tk.find_builtin_sweep("x0-sweep")
    results = tk.run_sweep(spec)
    assert [r.summary.name for r in results] == [
        "x0-sweep[X-45]",
        "x0-sweep[X-90]",
        "x0-sweep[X-180]",
        "x0-sweep[X-360]",
    ]
    assert all(r.summary.error is None for r in results)


def test_limits_and_transform():
    sc = tk.find_builtin_scenario("validation-1")
    lim = tk.predict_limits(sc.initial, 1.1745, sc.params)
    assert lim.p_star == pytest.approx(31.839982024710096, rel=1e-12)

    ctx = tk.build_transform(1.1745, 31.84, sc.params)
    assert ctx.gamma == pytest.approx(0.9100279316074903, rel=1e-12)
    u = tk.to_transformed(sc.initial, ctx)
    back = tk.from_transformed(u, ctx)
    assert back.s == pytest.approx(50.0, rel=1e-12)

    rep = tk.transformed_eigenvalues(ctx, sc.params)
    assert rep.transformed_eigenvalues[0] > 0.0
    assert max(rep.transformed_residuals) < 1e-10


def test_exceptions_map():
    sc = tk.find_builtin_scenario("validation-1")
    cfg = tk.SimulationConfig()
    cfg.initial = tk.State(0.0, 400.0, 20.0, 0.0)
    cfg.step = 5.0
    cfg.t_end = 50.0
    with pytest.raises(RuntimeError, match="admissible region"):
        tk.integrate(cfg, sc.params)
    with pytest.raises(ValueError):
        tk.GrowthLaw.monod(-1.0, 11.27)
    with pytest.raises(OSError):
        tk.load_scenario_file("/nonexistent/path.json")


def test_summary_json_roundtrip():
    import json

    sc = tk.find_builtin_scenario("validation-2")
    result = tk.run_scenario(sc)
    payload = json.loads(tk.summary_json([result]))
    assert payload["name"] == "validation-2"
    assert math.isclose(payload["s_star"], 2.9096, rel_tol=1e-3)
