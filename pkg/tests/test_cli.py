# tests\test_cli.py

import json

import pytest

from hyperspline import config
from hyperspline.cli import EXIT_IO, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, RunConfig, build_parser, main
from hyperspline.report import dim_report


@pytest.fixture(scope="module")
def basis_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("basis") / "basis.json"
    assert main(["basis", "--degree", "1", "--smooth", "0", "--output", str(path)]) == EXIT_OK
    return path


def write_points(path, points):
    path.write_text(json.dumps(points), encoding="utf-8")
    return path


def test_tile_command(tmp_path, capsys):
    svg, js = tmp_path / "tiles.svg", tmp_path / "tiles.json"
    code = main(["tile", "--depth", "1", "--model", "poincare", "--output", str(svg), "--json", str(js)])
    assert code == EXIT_OK
    assert svg.exists()
    assert json.loads(js.read_text(encoding="utf-8"))["model"] == "poincare"
    assert "Octagons: 9" in capsys.readouterr().out


def test_tile_depth_out_of_range(capsys):
    assert main(["tile", "--depth", "9"]) == EXIT_VALIDATION
    assert "error" in capsys.readouterr().err


def test_dim_command_agrees(capsys):
    assert main(["dim", "--lines", "3", "--degree", "2", "--smooth", "0", "--trials", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Formula: 4" in out
    assert "Agreement: yes" in out


def test_dim_command_reports_disagreement(capsys):
    # a rank cutoff this coarse discards genuine singular values
    assert main(["dim", "--lines", "4", "--degree", "4", "--smooth", "1", "--tol", "0.9"]) == EXIT_NUMERICAL
    assert "Agreement: NO" in capsys.readouterr().out


def test_dim_rejects_single_line():
    assert main(["dim", "--lines", "1"]) == EXIT_VALIDATION


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("HYPERSPLINE_SEED", "17")
    cfg = RunConfig.from_namespace(build_parser().parse_args(["dim"]))
    assert cfg.seed == 17
    cfg = RunConfig.from_namespace(build_parser().parse_args(["dim", "--seed", "3"]))
    assert cfg.seed == 3


def test_basis_command_writes_json(basis_file):
    data = json.loads(basis_file.read_text(encoding="utf-8"))
    assert data["spec"]["degree"] == 1
    assert data["dimension"] >= 2
    assert data["max_residual"] < 1e-9


def test_basis_command_with_partition_file(tmp_path, star, capsys):
    part = tmp_path / "star.json"
    part.write_text(json.dumps(star.to_dict()), encoding="utf-8")
    assert main(["basis", "--partition", str(part), "--degree", "0", "--smooth", "0"]) == EXIT_OK
    assert "Dimension: 1" in capsys.readouterr().out


def test_verbose_basis_prints_partition_checks(monkeypatch, capsys):
    monkeypatch.setattr(config, "VERBOSE_OUTPUT", False)
    assert main(["basis", "--degree", "0"]) == EXIT_OK
    assert "PASSED" not in capsys.readouterr().out
    assert main(["-v", "basis", "--degree", "0"]) == EXIT_OK
    assert config.VERBOSE_OUTPUT is True
    out = capsys.readouterr().out
    assert "[area] PASSED" in out
    assert "Dimension: 1" in out


def test_basis_command_rejects_broken_partition(tmp_path, star):
    doc = star.to_dict()
    doc["boundary_pairs"].pop()
    part = write_points(tmp_path / "bad.json", doc)
    assert main(["basis", "--partition", str(part)]) == EXIT_VALIDATION


def test_eval_command_with_periodic_check(basis_file, tmp_path):
    points = write_points(tmp_path / "pts.json", [[0.1, 0.2], [-0.3, 0.05], [0.0, 0.0]])
    out = tmp_path / "values.json"
    code = main(["eval", "--basis", str(basis_file), "--points", str(points),
                 "--check-periodic", "2", "--output", str(out)])
    assert code == EXIT_OK
    result = json.loads(out.read_text(encoding="utf-8"))
    assert len(result["values"]) == 3
    assert result["periodic_check"]["max_deviation"] < 1e-9


def test_eval_command_prints_json_without_output(basis_file, tmp_path, capsys):
    points = write_points(tmp_path / "pts.json", {"points": [[0.2, 0.1]]})
    assert main(["eval", "--basis", str(basis_file), "--points", str(points), "--model", "poincare"]) == EXIT_OK
    captured = capsys.readouterr()
    assert len(json.loads(captured.out)["values"]) == 1
    assert "EVALUATION REPORT" in captured.err


def test_eval_rejects_points_outside_disk(basis_file, tmp_path):
    points = write_points(tmp_path / "pts.json", [[0.1, 0.1], [1.0, 0.0]])
    assert main(["eval", "--basis", str(basis_file), "--points", str(points)]) == EXIT_VALIDATION


def test_eval_missing_basis_file(tmp_path):
    points = write_points(tmp_path / "pts.json", [[0.1, 0.1]])
    code = main(["eval", "--basis", str(tmp_path / "missing.json"), "--points", str(points)])
    assert code == EXIT_IO


def test_dim_report_lists_trials():
    text = dim_report({"lines": 3, "degree": 2, "smoothness": 0, "formula": 4, "oracle": [4, 4],
                       "agree": True, "seed": 0, "tol": 1e-8})
    assert "Oracle trial 2: 4" in text
    assert text.splitlines()[0] == "CONFORMALITY DIMENSION REPORT"


@pytest.mark.parametrize("argv,formula", [
    (["--lines", "2", "--degree", "2", "--smooth", "0"], 1),
    (["--lines", "3", "--degree", "2", "--smooth", "1"], 0),
    (["--lines", "2", "--degree", "0", "--smooth", "0"], 0),
])
def test_dim_command_examples(argv, formula, capsys):
    assert main(["dim"] + argv) == EXIT_OK
    assert f"Formula: {formula}" in capsys.readouterr().out


def test_basis_output_is_byte_stable(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["basis", "--degree", "0", "--smooth", "0", "--output", str(first)]) == EXIT_OK
    assert main(["basis", "--degree", "0", "--smooth", "0", "--output", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
