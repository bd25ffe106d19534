import math

import pytest

import cheeger_lab as cl


def test_sample_shape_and_determinism():
    a = cl.sample("flat_torus_2", 200, seed=7)
    b = cl.sample("flat_torus_2", 200, seed=7)
    assert a.points.shape == (200, 4)
    assert (a.points == b.points).all()


def test_line_graph_cut():
    cloud = cl.cloud_from_points([[0.0], [0.3], [0.9]], intrinsic_dim=1)
    g = cl.build_graph(cloud, 0.35)
    assert g.edge_count == 1
    assert g.neighbors(0) == [1]
    cb = cl.cut_and_balance(g, [0])
    assert cb["cut"] == 1
    assert cb["gtv"] == pytest.approx(2.0 / (9 * 0.35**2))


def test_gtv_matches_cut_and_balance():
    cloud = cl.sample("circle", 60, seed=3)
    g = cl.build_graph(cloud, 0.2)
    subset = list(range(0, 60, 2))
    u = [1.0 if i in subset else 0.0 for i in range(60)]
    assert cl.gtv(g, u) == pytest.approx(cl.cut_and_balance(g, subset)["gtv"])


def test_exact_and_pipeline_agree_on_small_graph():
    cloud = cl.sample("circle", 14, seed=11)
    g = cl.build_graph(cloud, 0.3)
    exact = cl.solve(g, method="exact")
    pipe = cl.solve(g, method="pipeline", cloud=cloud)
    assert exact["certificate"] == "GlobalOptimum"
    assert pipe["objective_value"] >= exact["objective_value"] - 1e-12


def test_constants():
    assert cl.surface_tension(1) == pytest.approx(1.0)
    assert cl.surface_tension(2) == pytest.approx(4.0 / 3.0)
    assert cl.continuum_cheeger("circle") == pytest.approx(4.0)
    assert cl.continuum_cheeger("sphere_2") == pytest.approx(2.0 * math.sqrt(math.pi))


def test_nonlocal_tv_of_half_circle():
    assert cl.tv_nonlocal_reference("circle", 0.1, 2048) == pytest.approx(2.0, abs=1e-9)


def test_fit_rate_recovers_power_law():
    errors = {n: [3.0 * n**-0.5] * 5 for n in (100.0, 400.0, 1600.0)}
    r = cl.fit_rate(errors)
    assert r["slope"] == pytest.approx(-0.5, abs=1e-9)


def test_validate_config_reports_errors():
    bad = cl.validate_config({"manifold": "klein_bottle", "n_list": [100]})
    assert not bad["ok"]
    assert any("manifold" in e for e in bad["errors"])
    good = cl.validate_config({"manifold": "circle", "n_list": [100], "out_dir": "x"})
    assert good["ok"], good["errors"]


def test_run_experiment(tmp_path):
    config = {
        "manifold": "circle",
        "n_list": [100, 200],
        "epsilon_c": 2.0,
        "k_epsilon": 0.5,
        "trials": 2,
        "seed": 5,
        "grid": 512,
        "out_dir": str(tmp_path),
    }
    first = cl.run_experiment(config)
    again = cl.run_experiment(config, workers=2)
    assert len(first["records"]) == 4
    assert again["reused"] == 4
    assert again["digest"] == first["digest"]


def test_errors_raise():
    with pytest.raises(cl.CheegerError):
        cl.sample("klein_bottle", 10)
