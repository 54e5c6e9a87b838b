import io
import json
import math
import subprocess
import sys

import pytest

from torricelli.cli import dumps, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    assert code == 0, text
    return json.loads(text)


def test_torricelli_cube_json():
    data = run_json("torricelli", "--solid", "cube", "--grid", "4096", "--refine")
    assert data["rho"] == pytest.approx(1.7611679, abs=1e-7)
    assert data["grid"] == 4096 and len(data["dir_min"]) == 3


def test_turnup_balanced():
    code, text = run("turnup", "--profile", "29*y^2*(1-y)+33*y*(1-y)^4")
    assert code == 0 and "rho_ell = 1" in text
    data = run_json("turnup", "--profile", "29*y^2*(1-y)+33*y*(1-y)^4")
    assert data["rho_ell"] == 1.0 and data["moment_up"] == "302/105"


def test_time_vertex_down():
    data = run_json("time", "--solid", "tetrahedron", "--dir", "0,0,1", "--vertex-down")
    assert data["T"] == pytest.approx(3**0.25 / (5 * 2**0.75), abs=1e-12)
    surf = run_json("time", "--solid", "tetrahedron", "--dir", "0,0,1", "--vertex-down", "--method", "surface")
    assert surf["T"] == pytest.approx(data["T"], abs=1e-10)


def test_time_sources():
    assert run_json("time", "--analytic", "cube-face")["T"] == 2.0
    assert run_json("time", "--profile", "y^2", "--flip")["T"] == pytest.approx(16 * math.pi / 15)
    assert run_json("time", "--solid", "box:1x1x100", "--dir", "1,0,0")["T"] == pytest.approx(200.0)
    assert run_json("time", "--solid", "cube", "--edge", "2", "--K", "2")["T"] == pytest.approx(2 * 2**2.5 / 2)


def test_mesh_input(tmp_path):
    from torricelli.geometry import platonic, save_mesh_json

    path = tmp_path / "octa.json"
    save_mesh_json(platonic("octahedron"), path)
    assert run_json("time", "--mesh", str(path))["T"] == pytest.approx(8 / 15 * (8 * 2**0.25 - 5 * 2**0.75))
    code, _ = run("time", "--mesh", str(tmp_path / "missing.obj"))
    assert code == 1


def test_solids():
    rows = run_json("solids")
    assert [r["name"] for r in rows] == ["tetrahedron", "cube", "octahedron", "icosahedron"]
    code, text = run("solids")
    assert code == 0 and "icosahedron" in text


def test_balance():
    data = run_json("balance", "--terms", "2,1;1,4")
    assert data["C"] == "29/33" and data["profile"] == "29*y^2*(1-y)+33*y*(1-y)^4"
    assert run_json("balance", "--terms", "2,2;3,3")["symmetric"]
    assert run_json("balance", "--terms", "2,2;1,3")["C"] is None
    check = run_json("balance", "--profile", "13*y^2*(1-y)^6+9*y^3*(1-y)^2")
    assert check["balanced"] and not check["certificate"]["smooth_of_revolution"]
    assert len(run_json("balance", "--enumerate", "3", "--limit", "2")) == 2


def test_simulate_csv():
    code, text = run("simulate", "--analytic", "cube-face", "--samples", "3")
    assert code == 0
    assert text.splitlines() == ["t,h", "0,1", "1,0.25", "2,0"]
    data = run_json("simulate", "--solid", "cube", "--samples", "5", "--cross-check")
    assert data["T"] == pytest.approx(2.0) and data["rk_discrepancy"] < 1e-6


def test_section_csv():
    code, text = run("section", "--solid", "cube", "--dir", "1,1,1", "--samples", "4")
    rows = [tuple(map(float, line.split(","))) for line in text.splitlines()[1:]]
    assert code == 0 and text.startswith("h,A\n") and len(rows) == 4
    assert rows[1][1] == pytest.approx(1.5 * math.sqrt(3) * (math.sqrt(3) / 3) ** 2)
    assert run_json("section", "--solid", "cube")["volume"] == pytest.approx(1.0)


def test_verify_quick():
    data = run_json("verify", "--no-search")
    assert data["passed"] and all(r["passed"] for r in data["rows"])
    code, text = run("verify", "--no-search")
    assert code == 0 and "FAIL" not in text


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["time", "--solid", "cube", "--dir", "0,0"],
        ["time", "--solid", "cube", "--dir", "0,0,0"],
        ["time", "--solid", "cube", "--K", "-1"],
        ["time", "--solid", "cube", "--unknown-flag"],
        ["time"],
        ["torricelli", "--solid", "cube", "--grid", "10"],
        ["turnup", "--profile", "y^^2"],
        ["balance", "--terms", "1,2"],
        ["time", "--analytic", "cube-face", "--method", "surface"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2
    assert capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["time", "--solid", "dodecahedron"],
        ["turnup", "--profile", "y-2"],
        ["turnup", "--profile", "0*y"],
    ],
)
def test_computation_errors_exit_1(argv, capsys):
    assert run(*argv)[0] == 1
    assert capsys.readouterr().err.startswith("error:")


def test_output_is_deterministic():
    a = run("torricelli", "--solid", "tetrahedron", "--grid", "128", "--json")
    b = run("torricelli", "--solid", "tetrahedron", "--grid", "128", "--json")
    assert a == b


def test_float_format():
    assert dumps({"x": 0.1, "n": 3, "b": True, "v": [1.5, None]}) == '{"x": 0.10000000000000001, "n": 3, "b": true, "v": [1.5, null]}'
    assert json.loads(dumps({"x": 1 / 3}))["x"] == 1 / 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torricelli", "solids", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)
