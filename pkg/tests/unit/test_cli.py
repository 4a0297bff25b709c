"""Unit tests for the netflux command line."""

import json
from pathlib import Path

import pytest

import transport
from cli.main import main
from tools.errors import ConvergenceError


def _json_out(capsys: pytest.CaptureFixture[str]) -> dict:
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_generate_is_deterministic(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert main(["generate", "--model", "er", "--n", "100", "--kavg", "4", "--seed", "3", "--out", str(path)]) == 0
    assert a.read_text(encoding="utf-8") == b.read_text(encoding="utf-8")
    summary = _json_out(capsys)
    assert summary["num_nodes"] == 100


def test_generate_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["generate", "--model", "sf", "--nodes", "500", "--gamma", "2.5", "--seed", "9"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == "# nodes: 500"
    assert '"num_edges"' in captured.err


def test_generate_requires_model(capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--n", "100"])
    assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_generate_er_requires_mean_degree(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["generate", "--model", "er", "--n", "100"]) == 1
    assert "--kavg" in capsys.readouterr().err


def test_flow_on_path(path3_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["flow", "--graph", str(path3_file), "--n", "1"]) == 0
    result = _json_out(capsys)
    assert result["value"] == 1.0
    assert sum(result["per_length_flow"].values()) == 1


def test_flow_explicit_terminals(path3_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["flow", "--graph", str(path3_file), "--sources", "0", "--sinks", "2"]) == 0
    assert _json_out(capsys)["per_length_flow"] == {"2": 1}


def test_current_on_single_edge(fixtures_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["current", "--graph", str(fixtures_dir / "single_edge.txt")]) == 0
    assert _json_out(capsys)["value"] == pytest.approx(1.0)


def test_mcflow_on_path(path3_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["mcflow", "--graph", str(path3_file), "--sources", "0", "--sinks", "2", "--method", "lp"]) == 0
    assert _json_out(capsys)["value"] == pytest.approx(1.0)


def test_walk_on_single_edge(fixtures_dir: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["walk", "--graph", str(fixtures_dir / "single_edge.txt"), "--walkers", "50"]) == 0
    out = _json_out(capsys)
    assert out["value"] == 1.0
    assert out["walkers"] == 50


def test_theory_curve_csv(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["theory", "--kind", "flow_small_n", "--nodes", "1024", "--kavg", "8", "--n-values", "1,2"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("n,value,value_per_n")
    assert len(lines) == 3


def test_theory_n_star(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["theory", "--nodes", "128", "--kavg", "3", "--n-star"]) == 0
    bounds = _json_out(capsys)
    assert bounds["lower"] <= bounds["upper"]


def test_resolved_config_uses_env_seed(
    monkeypatch: pytest.MonkeyPatch, path3_file: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    monkeypatch.setenv("NETFLUX_SEED", "5")
    assert main(["flow", "--graph", str(path3_file)]) == 0
    resolved = [line for line in capsys.readouterr().err.splitlines() if line.startswith("# resolved: ")]
    assert len(resolved) == 1
    config = json.loads(resolved[0].removeprefix("# resolved: "))
    assert config["seed"] == 5
    assert config["command"] == "flow"


def test_missing_graph_is_io_error(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["flow", "--graph", str(tmp_path / "missing.txt")]) == 3
    assert "netflux: error" in capsys.readouterr().err


def test_too_many_terminals_is_usage_error(path3_file: Path) -> None:
    assert main(["flow", "--graph", str(path3_file), "--n", "5"]) == 1


def test_convergence_failure_is_numerical_error(monkeypatch: pytest.MonkeyPatch, path3_file: Path) -> None:
    def stalled(*args, **kwargs):
        raise ConvergenceError("stalled", residual=1.0, iterations=150)

    monkeypatch.setattr(transport, "electrical_current", stalled)
    assert main(["current", "--graph", str(path3_file)]) == 2


def test_trace_streams_solver_events(path3_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--trace", "flow", "--graph", str(path3_file)]) == 0
    events = [json.loads(line) for line in capsys.readouterr().err.splitlines() if line.startswith("{")]
    assert any(e["solver_name"] == "flow_decompose_by_length" for e in events)


def test_sweep_on_edge_list(path3_file: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["--workers", "1", "sweep", "--edge-list", str(path3_file), "--n-values", "1", "--realizations", "2", "--samples", "2"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("n,mean,stderr,samples")
    assert lines[1].startswith("1,1,0,4")

    out = tmp_path / "sweep.csv"
    assert main([*argv, "--out", str(out)]) == 0
    assert out.exists()


def test_sweep_needs_a_graph() -> None:
    assert main(["sweep", "--n-values", "1"]) == 1


def test_histogram_writes_files(fixtures_dir: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    argv = [
        "--workers",
        "1",
        "histogram",
        "--edge-list",
        str(fixtures_dir / "single_edge.txt"),
        "--n-list",
        "1",
        "--realizations",
        "1",
        "--samples",
        "3",
        "--out-dir",
        str(tmp_path),
    ]
    assert main(argv) == 0
    files = _json_out(capsys)["files"]
    assert [Path(f).name for f in files] == ["histogram_flow_n1.csv"]


def test_unknown_figure_id() -> None:
    with pytest.raises(SystemExit) as exc:
        main(["reproduce-figure", "7"])
    assert exc.value.code == 1


def test_undecodable_edge_list_is_io_error(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "binary.txt"
    path.write_bytes(b"0 1\n\xfe\xff\n")
    assert main(["flow", "--graph", str(path)]) == 3
    assert f"{path}:2" in capsys.readouterr().err


def test_resolved_config_shows_settings_tolerance(
    monkeypatch: pytest.MonkeyPatch, fixtures_dir: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    monkeypatch.setenv("NETFLUX_CURRENT_TOL", "1e-7")
    monkeypatch.setenv("NETFLUX_WORKERS", "3")
    assert main(["current", "--graph", str(fixtures_dir / "single_edge.txt")]) == 0
    line = next(x for x in capsys.readouterr().err.splitlines() if x.startswith("# resolved: "))
    config = json.loads(line.removeprefix("# resolved: "))
    assert config["tol"] == 1e-7
    assert config["workers"] == 3
