import json
import math

import pytest

sepcmc = pytest.importorskip("sepcmc")


def test_gallery_sphere():
    r = sepcmc.verify_gallery("sphere")
    assert r["pass"]
    assert r["expected_H"] == -1.0
    assert "nodoid" in sepcmc.gallery_names()


def test_classify_unduloid():
    r = sepcmc.classify(-1.0, 0.1875)
    assert r["class"] == "Unduloid"
    assert r["r_min"] == pytest.approx(0.25)
    assert r["r_max"] == pytest.approx(0.75)
    assert sepcmc.classify(-1.0, -0.1)["r_min"] is None


def test_profile_conserves_first_integral():
    p = sepcmc.integrate_profile(-1.0, 0.1875, -1.0, 1.0)
    assert len(p["z"]) == len(p["h"]) == len(p["hp"])
    assert p["first_integral_drift"] < 1e-8
    k = len(p["z"]) // 3
    assert sepcmc.first_integral(p["h"][k], p["hp"][k], -1.0) == pytest.approx(0.1875, abs=1e-9)


def test_sphere_spec_residual():
    spec = json.dumps({
        "f": {"name": "quadratic", "params": [1, 0, 0], "domain": [-1.2, 1.2]},
        "g": {"name": "quadratic", "params": [1, 0, 0], "domain": [-1.2, 1.2]},
        "h": {"name": "quadratic", "params": [1, 0, -1], "domain": [-1.2, 1.2]},
    })
    assert sepcmc.is_cmc(spec, -1.0) < 1e-10
    assert sepcmc.is_cmc(spec, 0.0) == pytest.approx(16.0)
    assert sepcmc.mean_curvature(spec, 0.6, 0.0, 0.8) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        sepcmc.mean_curvature(spec, 0.5, 0.5, 0.5)


def test_jets():
    j = sepcmc.catalog_jet("cosh_sq", [], 0.3)
    assert j.value == pytest.approx(math.cosh(0.3) ** 2)
    assert j.d1 == pytest.approx(math.sinh(0.6))
    x = sepcmc.Jet3(2.0, 1.0)
    y = x * x
    assert (y.value, y.d1, y.d2, y.d3) == (4.0, 4.0, 2.0, 0.0)


def test_identities_pass():
    reports = sepcmc.identities(seed=1, trials=50)
    assert reports and all(r["pass"] for r in reports)


def test_search_from_perturbed_sphere():
    r = sepcmc.search(-1.0, knots=12, grid=20, start="sphere", perturb=1e-3, seed=3)
    assert r["converged"]
    assert r["delaunay_distance"] < 1e-3


def test_mesh_and_cli():
    p = sepcmc.integrate_profile(-1.0, 0.1875, -0.5, 0.5, step=0.02)
    m = sepcmc.revolution_mesh(p["z"], p["h"], p["hp"], 32)
    assert m["manifold"]
    assert len(m["vertices"]) == 32 * len(p["z"])
    interior = [h for h in m["mean_curvature"] if not math.isnan(h)]
    assert interior and all(abs(h + 1.0) < 0.05 for h in interior)
    code, out, _ = sepcmc.run_cli(["classify", "--H", "-1", "--c", "0.1875"])
    assert code == 0 and out == "Unduloid r_min=0.25 r_max=0.75\n"
