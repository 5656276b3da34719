import math

import pytest

import sigman

R2 = {"kind": "euclidean", "dim": 2}


def test_straight_curve_energy_is_closed_form():
    path = {"manifold": R2, "samples": [[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]}
    report = sigman.curve_energy(path)
    assert report["e1"] == pytest.approx(3.0**2 / 2, rel=1e-12)
    assert report["e2"] == pytest.approx(3.0**3 / 3, rel=1e-12)
    assert report["satisfied"] == [True, True]


def test_rectangle_energies():
    report = sigman.rectangle_energy(0.05)
    assert report["e1"] == pytest.approx(1.0, rel=0.02)
    assert report["e2"] == pytest.approx(2.0 / 3.0, rel=0.02)


def test_fisher_metric_classical_values():
    t = sigman.fisher_metric(0.0, 2.0, 401)
    assert t["g11"] == pytest.approx(0.25, rel=1e-8)
    assert abs(t["g12"]) < 1e-10
    assert t["g22_numeric"] == pytest.approx(t["g22_classical"], rel=1e-8)


def test_sphere_distance_is_great_circle():
    sphere = {"kind": "unit_sphere"}
    assert sigman.distance(sphere, [1, 0, 0], [0, 1, 0]) == pytest.approx(math.pi / 2)


def test_shell_chord_through_core_is_rejected():
    shell = {"kind": "shell", "a": 1.0, "b": 4.0}
    with pytest.raises(sigman.SigmanError):
        sigman.distance(shell, [-1.5, 0, 0], [1.5, 0, 0])


def test_bad_document_names_field():
    with pytest.raises(sigman.SigmanError, match="samples"):
        sigman.curve_energy({"manifold": R2, "samples": [[0, 0], [1, "x"]]})


def test_ratio_variance_example():
    assert sigman.ratio_variance([1.0, 3.0]) == pytest.approx(0.5)


def test_triangle_embeds_exactly():
    k3 = {"n": 3, "edges": [[0, 1, 1.0], [1, 2, 1.0], [0, 2, 1.0]]}
    result = sigman.embed(k3, R2, seed=1, restarts=5)
    assert result["objective"] < 1e-8
    assert len(result["points"]) == 3


def test_gaussian_and_config_bounds():
    path = sigman.random_gaussian_path(2, 3, 10)
    assert sigman.gaussian_bound(path)["satisfied"]
    shell = {"kind": "shell", "a": 1.0, "b": 4.0}
    cp = sigman.random_config_path(shell, 3, 5, 6)
    assert sigman.config_bounds(cp)["all_ok"]


def test_small_verification_corpus():
    suites = sigman.verify_all(seed=1, samples=20)
    assert all(s["ok"] for s in suites.values())
