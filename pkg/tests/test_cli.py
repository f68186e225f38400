"""End-to-end command tests: files in, JSON/CSV out, exit codes."""

import json
import math

import pytest

import ectkit.cli
from ectkit import (
    Direction,
    DirectionScheme,
    GeometricComplex,
    PersistenceDiagram,
    PersistencePoint,
    directional_filtration,
    ecc_from_filtration,
    ect_distance,
    persistence_diagram,
    save_complex_file,
    save_diagram,
    select_distance,
    step_function_csv,
)
from ectkit.cli import main

from conftest import make_field, make_instance


@pytest.fixture
def shape(tmp_path):
    complex_, first, second = make_instance(8)
    phi = make_field(complex_, 8)
    path = tmp_path / "shape.json"
    save_complex_file(path, complex_, {"f": first, "g": second}, {"density": phi})
    return {"path": str(path), "complex": complex_, "f": first, "g": second, "phi": phi}


def test_ecc_writes_step_csv(shape, capsys):
    code = main(["ecc", "--complex", shape["path"], "--embedding", "f", "--direction", "0,1"])
    assert code == 0
    expected = step_function_csv(
        ecc_from_filtration(
            directional_filtration(
                GeometricComplex(shape["complex"], shape["f"]), Direction((0.0, 1.0))
            )
        )
    )
    assert capsys.readouterr().out == expected


def test_ecc_out_file(shape, tmp_path, capsys):
    target = tmp_path / "curve.csv"
    code = main(["ecc", "--complex", shape["path"], "--embedding", "f",
                 "--direction", "1,0", "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert target.read_text().startswith("terminal_value,")


def test_persistence_matches_library(shape, capsys):
    code = main(["persistence", "--complex", shape["path"], "--embedding", "g",
                 "--direction", "3,4"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    diagram = persistence_diagram(
        directional_filtration(
            GeometricComplex(shape["complex"], shape["g"]), Direction((0.6, 0.8))
        )
    )
    rebuilt = {
        dim: [[p.birth, "inf" if p.is_infinite else p.death] for p in diagram.in_dim(dim)]
        for dim in diagram.dims
    }
    assert data["dims"] == {str(k): v for k, v in rebuilt.items()}


def test_ect_distance_value_and_determinism(shape, capsys):
    argv = ["ect-distance", "--complex", shape["path"], "--embedding", "f",
            "--embedding", "g", "--directions", "64"]
    assert main(argv) == 0
    first_run = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first_run
    data = json.loads(first_run)
    expected = ect_distance(
        GeometricComplex(shape["complex"], shape["f"]),
        GeometricComplex(shape["complex"], shape["g"]),
        DirectionScheme(2, 64, "uniform-circle"),
    )
    assert data["value"] == expected.value
    assert data["n_directions"] == 64
    assert data["window"] is None


def test_ect_distance_window_auto(shape, capsys):
    assert main(["ect-distance", "--complex", shape["path"], "--embedding", "f",
                 "--embedding", "g", "--directions", "32", "--window"]) == 0
    data = json.loads(capsys.readouterr().out)
    radius = max(shape["f"].max_norm(), shape["g"].max_norm()) + 1.0
    assert data["window"] == radius


def test_ect_distance_per_direction_csv(shape, tmp_path, capsys):
    per = tmp_path / "per.csv"
    assert main(["ect-distance", "--complex", shape["path"], "--embedding", "f",
                 "--embedding", "g", "--directions", "16", "--per-direction", str(per)]) == 0
    data = json.loads(capsys.readouterr().out)
    lines = per.read_text().splitlines()
    assert lines[0] == "x0,x1,integrand"
    assert len(lines) == 17
    weight = 2.0 * math.pi / 16
    total = weight * sum(float(line.split(",")[-1]) for line in lines[1:])
    assert total == pytest.approx(data["value"], rel=1e-12)


def test_ect_distance_custom_directions(shape, tmp_path, capsys):
    csv_path = tmp_path / "dirs.csv"
    csv_path.write_text("1.0,0.0\n0.0,1.0\n-1.0,0.0\n0.0,-1.0\n")
    assert main(["ect-distance", "--complex", shape["path"], "--embedding", "f",
                 "--embedding", "g", "--directions-csv", str(csv_path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["quadrature"] == "custom(dim=2, n=4)"
    assert data["n_directions"] == 4


def test_ect_distance_needs_two_embeddings(shape, capsys):
    assert main(["ect-distance", "--complex", shape["path"], "--embedding", "f"]) == 1
    assert "usage error" in capsys.readouterr().err


def test_unknown_embedding_is_an_input_error(shape, capsys):
    assert main(["ecc", "--complex", shape["path"], "--embedding", "nope",
                 "--direction", "1,0"]) == 1
    err = capsys.readouterr().err
    assert "embedding not found" in err and "'f'" in err


def test_missing_file_is_an_input_error(tmp_path, capsys):
    assert main(["ecc", "--complex", str(tmp_path / "absent.json"),
                 "--embedding", "f", "--direction", "1,0"]) == 1
    assert "error" in capsys.readouterr().err


def test_bad_subcommand_exits_one(capsys):
    assert main(["disintegrate"]) == 1
    assert "usage error" in capsys.readouterr().err


def test_select_distance_segments(shape, capsys):
    assert main(["select-distance", "--complex", shape["path"], "--phi", "density",
                 "--embedding", "f", "--embedding", "g", "--directions", "32"]) == 0
    data = json.loads(capsys.readouterr().out)
    expected = select_distance(
        shape["complex"], shape["phi"], shape["f"], shape["g"],
        DirectionScheme(2, 32, "uniform-circle"),
    )
    assert data["value"] == expected.value
    assert data["phi"] == "density"
    assert len(data["segments"]) == len(expected.per_segment)
    acc = 0.0
    for seg in data["segments"]:
        assert seg["contribution"] == (seg["t_hi"] - seg["t_lo"]) * seg["ect_distance"]
        acc += seg["contribution"]
    assert acc == pytest.approx(data["value"], rel=1e-12)


def test_select_distance_unknown_phi(shape, capsys):
    assert main(["select-distance", "--complex", shape["path"], "--phi", "mass",
                 "--embedding", "f", "--embedding", "g"]) == 1
    assert "phi table not found" in capsys.readouterr().err


def test_wasserstein_command(tmp_path, capsys):
    one = tmp_path / "one.json"
    two = tmp_path / "two.json"
    save_diagram(one, PersistenceDiagram((PersistencePoint(0.0, 1.0, 0),)))
    save_diagram(two, PersistenceDiagram(()))
    assert main(["wasserstein", "--diagram", str(one), "--diagram", str(two)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"p": 1.0, "q": "inf", "value": 0.5}
    assert main(["wasserstein", "--diagram", str(one), "--diagram", str(two),
                 "--p", "2", "--q", "2"]) == 0
    data2 = json.loads(capsys.readouterr().out)
    assert data2["value"] == pytest.approx(math.sqrt(2.0) / 2.0, rel=1e-12)
    assert main(["wasserstein", "--diagram", str(one)]) == 1


def test_verify_bound_stdout_and_repeatability(capsys):
    argv = ["verify-bound", "--which", "turner", "--trials", "5", "--seed", "2"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert data["n_reports"] == 5
    assert data["n_failed"] == 0
    assert all(r["holds"] for r in data["reports"])


def test_verify_bound_out_file_summary(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["verify-bound", "--which", "prop2", "--trials", "3", "--seed", "1",
                 "--out", str(target)]) == 0
    line = capsys.readouterr().out
    assert line == f"prop2: 3/3 hold -> {target}\n"
    data = json.loads(target.read_text())
    assert data["which"] == "prop2"


def test_verify_bound_failure_exits_two(monkeypatch, capsys):
    from ectkit.stability import BoundReport

    def rigged(which, trials, seed, directions=None, threads=None):
        return [BoundReport("demo", 2.0, 1.0, -1.0, False, 0.0, 0.0)]

    monkeypatch.setattr(ectkit.cli, "run_verification", rigged)
    assert main(["verify-bound", "--which", "ect", "--trials", "1", "--seed", "0"]) == 2
    data = json.loads(capsys.readouterr().out)
    assert data["n_failed"] == 1


def test_threads_flag_and_env(shape, capsys, monkeypatch):
    argv = ["ect-distance", "--complex", shape["path"], "--embedding", "f",
            "--embedding", "g", "--directions", "48"]
    assert main(argv + ["--threads", "2"]) == 0
    flagged = capsys.readouterr().out
    monkeypatch.setenv("ECTKIT_THREADS", "2")
    assert main(argv) == 0
    assert capsys.readouterr().out == flagged
    monkeypatch.setenv("ECTKIT_THREADS", "confetti")
    assert main(argv) == 1
    assert "ECTKIT_THREADS" in capsys.readouterr().err


def test_constants_command(shape, capsys):
    assert main(["constants", "--complex", shape["path"], "--phi", "density",
                 "--dim", "4"]) == 0
    data = json.loads(capsys.readouterr().out)
    complex_ = shape["complex"]
    assert data["n_simplices"] == complex_.n_simplices
    assert data["sphere_cosine_integral"]["2"] == 4.0
    assert data["sphere_cosine_integral"]["4"] == pytest.approx(8.0 * math.pi / 3.0)
    phi = shape["phi"]
    assert data["max_field_value"] == max(phi[v] for v in complex_.vertices)


def test_monte_carlo_scheme_flag(shape, capsys):
    argv = ["ect-distance", "--complex", shape["path"], "--embedding", "f",
            "--embedding", "g", "--scheme", "monte-carlo", "--directions", "32",
            "--scheme-seed", "5"]
    assert main(argv) == 0
    first = json.loads(capsys.readouterr().out)
    assert first["quadrature"] == "monte-carlo(dim=2, n=32, seed=5)"
    assert main(argv) == 0
    assert json.loads(capsys.readouterr().out) == first
