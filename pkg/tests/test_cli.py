import json
import subprocess
import sys

import numpy as np
import pytest

from specconvex import probio

RUN = [sys.executable, "-m", "specconvex"]


def run_cli(*args):
    return subprocess.run(
        RUN + list(args), capture_output=True, text=True, timeout=300
    )


@pytest.fixture
def inputs(tmp_path):
    paths = {}

    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        paths[name] = str(p)

    write("P.json", {"d": 3, "orbits": [{"a": [1, 0, 0], "b": 1}]})
    write("A_in.json", {"d": 3, "upper": [0.2, 0.1, 0.0, 0.3, 0.05, 0.1]})
    write("A_out.json", {"d": 3, "upper": [2.0, 0.0, 0.0, 0.1, 0.0, 0.1]})
    write("hull.json", {"d": 3, "points": [[1, 0, -1]], "radius": 0})
    write("zono.json", {"d": 3, "generators": [[1, -1, 0]]})
    write("cone.json", {"d": 3, "orbits": [{"a": [1, 0, 0], "b": 0}]})
    write("ball.json", {"d": 2, "points": [], "radius": 1})
    return paths


def test_check_inside_and_outside(inputs):
    res = run_cli("check", "--poly", inputs["P.json"], "--matrix", inputs["A_in.json"])
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["inside"] and doc["status"] == "inside" and doc["margin"] > 0

    res = run_cli("check", "--poly", inputs["P.json"], "--matrix", inputs["A_out.json"])
    assert res.returncode == 1
    doc = json.loads(res.stdout)
    assert not doc["inside"] and doc["status"] == "outside"


def test_check_boundary_status(inputs, tmp_path):
    boundary = tmp_path / "A_boundary.json"
    boundary.write_text(json.dumps({"d": 3, "upper": [1, 0, 0, 1, 0, 1]}))
    res = run_cli("check", "--poly", inputs["P.json"], "--matrix", str(boundary))
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["status"] == "boundary" and doc["inside"]
    assert abs(doc["margin"]) <= 1e-9


def test_lmi_text_reports_both_sizes(inputs):
    res = run_cli("lmi", "--hull", inputs["hull.json"], "--format", "text")
    assert res.returncode == 0
    assert "size:" in res.stdout and "exported size:" in res.stdout


def test_check_bad_input_exit_2(inputs, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"d": 2, "points": [[0, 1]]}')
    res = run_cli("check", "--poly", str(bad), "--matrix", inputs["A_in.json"])
    assert res.returncode == 2
    res = run_cli("check", "--poly", str(tmp_path / "missing.json"),
                  "--matrix", inputs["A_in.json"])
    assert res.returncode == 2


def test_lmi_sdpa_block_of_order_9(inputs, tmp_path):
    out = tmp_path / "out.dat-s"
    res = run_cli(
        "lmi", "--poly", inputs["P.json"], "--format", "sdpa", "--out", str(out)
    )
    assert res.returncode == 0
    parsed = probio.parse_sdpa(out.read_text())
    assert parsed.block_sizes == [9]
    assert parsed.m == 6


def test_lmi_from_single_point_hull(inputs):
    res = run_cli("lmi", "--hull", inputs["hull.json"], "--format", "json")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["metadata"]["builder"] == "permutahedron_lmi"
    res = run_cli("lmi", "--poly", inputs["P.json"], "--hull", inputs["hull.json"])
    assert res.returncode == 2


def test_shadow_builders(inputs):
    res = run_cli("shadow", "--poly", inputs["P.json"], "--format", "json")
    assert res.returncode == 0
    assert json.loads(res.stdout)["metadata"]["size"] == 1 + 18 - 6 - 2

    res = run_cli("shadow", "--hull", inputs["hull.json"], "--format", "json")
    assert res.returncode == 0
    assert json.loads(res.stdout)["metadata"]["size"] == 1 + 18 - 6 - 2


def test_support_values(inputs):
    res = run_cli(
        "support", "--hull", inputs["hull.json"], "--matrix", inputs["A_in.json"]
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["kind"] == "hull"
    res = run_cli(
        "support", "--zono", inputs["zono.json"], "--matrix", inputs["A_in.json"]
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["kind"] == "zonotope"


def test_charpoly(inputs):
    res = run_cli("charpoly", "--matrix", inputs["A_in.json"])
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert len(doc["eta"]) == 3
    assert doc["eta"][0] == pytest.approx(0.2 + 0.3 + 0.1)


def test_hyperbolic(inputs):
    res = run_cli(
        "hyperbolic", "--poly", inputs["cone.json"], "--trials", "100", "--seed", "5"
    )
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["disagreements"] == 0 and doc["all_roots_real"]


def test_calibrate_strict_requires_seed():
    res = run_cli("calibrate", "--d", "2", "--samples", "20000", "--strict")
    assert res.returncode == 2
    res = run_cli("calibrate", "--d", "2", "--samples", "20000", "--strict",
                  "--seed", "1")
    assert res.returncode == 0
    assert json.loads(res.stdout)["c"] == pytest.approx(np.pi / np.sqrt(2), rel=0.05)


def test_steiner_deterministic(inputs):
    args = (
        "steiner", "--hull", inputs["ball.json"], "--t", "0", "--t", "1",
        "--samples", "20000", "--seed", "3",
    )
    res1 = run_cli(*args)
    res2 = run_cli(*args)
    assert res1.returncode == 0
    assert res1.stdout == res2.stdout
    doc = json.loads(res1.stdout)
    assert len(doc["rows"]) == 2


def test_verify_strict_byte_identical():
    args = ("verify", "--strict", "--seed", "7", "--trials", "40")
    res1 = run_cli(*args)
    res2 = run_cli(*args)
    assert res1.returncode == 0, res1.stdout + res1.stderr
    assert res1.stdout == res2.stdout
    doc = json.loads(res1.stdout)
    assert doc["all_passed"]


def test_verify_named_suite():
    res = run_cli("verify", "--suite", "btn", "--trials", "50", "--seed", "7")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["suites"][0]["name"] == "btn"
    assert doc["suites"][0]["failures"] == 0
    res = run_cli("verify", "--suite", "nonsense", "--trials", "5", "--seed", "1")
    assert res.returncode == 2
