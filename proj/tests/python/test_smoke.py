import math
import os
from pathlib import Path

import pytest

import closedgeo

FIXTURES = Path(os.environ.get("CLOSEDGEO_FIXTURE_DIR", Path(__file__).parents[1] / "fixtures"))
CONFIGS = Path(os.environ.get("CLOSEDGEO_CONFIG_DIR", Path(__file__).parents[2] / "configs"))


def test_sphere_distance_and_path():
    s = closedgeo.SphereSpace()
    assert s.epsilon == pytest.approx(math.pi / 2)
    assert s.distance([1, 0, 0], [0, 1, 0]) == pytest.approx(math.pi / 2, abs=1e-12)
    points, length = s.shortest_path([1, 0, 0], [0, 1, 0], 5)
    assert len(points) == 5
    assert length == pytest.approx(math.pi / 2, abs=1e-12)


def test_torus_wiggle_shortens_to_unit_loop():
    t = closedgeo.TorusSpace()
    m = 64
    pts = [[i / m, 0.3 + 0.05 * math.sin(2 * math.pi * i / m)] for i in range(m)]
    r = closedgeo.shorten(t, pts)
    assert r["status"] == "Converged"
    assert r["length"] == pytest.approx(1.0, abs=1e-6)
    assert all(b <= a + 1e-12 for a, b in zip(r["lengths"], r["lengths"][1:]))
    assert closedgeo.certify(t, r["curve"])["passed"]


def test_errors_name_their_origin():
    with pytest.raises(closedgeo.Error, match="InvalidPoint"):
        closedgeo.SphereSpace().distance([0, 0, 0], [0, 1, 0])
    with pytest.raises(closedgeo.Error, match="mode"):
        closedgeo.run({"mode": "sweepuot", "backend": {"name": "sphere"}})


def test_mesh_backend_loads_fixture():
    m = closedgeo.MeshSpace(str(FIXTURES / "cube.obj"))
    assert m.epsilon == pytest.approx(m.estimated_epsilon)
    a = m.project([0.5, 0.5, 1.2])
    b = m.project([0.5, 0.6, 1.2])
    assert m.distance(a, b) == pytest.approx(0.1, abs=1e-9)


def test_run_torus_systole_config(tmp_path):
    import json

    cfg = json.loads((CONFIGS / "torus_systole.json").read_text())
    cfg["output_dir"] = str(tmp_path)
    code, report = closedgeo.run(cfg, str(CONFIGS))
    assert code == 0
    assert report["result"]["length"] == pytest.approx(1.0, abs=1e-6)
    assert (tmp_path / "report.json").exists()
