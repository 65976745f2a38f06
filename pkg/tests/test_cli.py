# tests/test_cli.py
import json

import pytest

from mastergraph.cli import main


def run_json(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, (json.loads(captured.out) if captured.out.strip() else None), captured.err


def by_label(report, vector):
    return dict(zip(report["states"], vector))


def test_analyze_fig2(capsys, fig2_path):
    """Тест: три минимальных поглощающих множества и базис при единичных интенсивностях"""
    code, report, _ = run_json(capsys, ["analyze", str(fig2_path)])
    assert code == 0
    assert report["n"] == 3
    assert report["relaxing"] is False
    assert report["kernel_dimension"] == 3
    assert report["minimal_absorbing_sets"] == [["3"], ["4", "5"], ["6", "7", "8"]]
    assert report["network"] == {"states": 8, "edges": 10}
    assert report["connectivity"] == "weak"
    assert report["dominance"]["is_wcdd"] is True
    assert "lambda" not in report

    expected = [
        {"3": 1.0},
        {"4": 0.5, "5": 0.5},
        {"6": 1 / 3, "7": 1 / 3, "8": 1 / 3},
    ]
    for entry, nonzero in zip(report["basis"], expected):
        values = by_label(report, entry["vector"])
        for label, value in values.items():
            assert value == pytest.approx(nonzero.get(label, 0.0), abs=1e-10)
    assert set(report["timings_ms"]) >= {"parse", "condense", "basis"}


def test_analyze_with_p0(capsys, fig2_path):
    code, report, _ = run_json(capsys, ["analyze", str(fig2_path), "--p0", "state:1"])
    assert code == 0
    assert report["lambda"] == pytest.approx([0.4, 0.4, 0.2], abs=1e-12)
    assert sum(report["p_infinity"]) == pytest.approx(1.0, abs=1e-12)


def test_analyze_cycle(capsys, tmp_path):
    path = tmp_path / "cycle.tsv"
    path.write_text("a\tb\t1\nb\tc\t1\nc\ta\t1\n")
    code, report, _ = run_json(capsys, ["analyze", str(path)])
    assert code == 0
    assert report["relaxing"] is True
    assert report["basis"][0]["vector"] == pytest.approx([1 / 3] * 3, abs=1e-12)
    assert "dominance" not in report


def test_analyze_malformed_line(capsys, tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("a\tb\t1\na b 1\n")
    code, report, err = run_json(capsys, ["analyze", str(path)])
    assert code == 2
    assert report is None
    assert "line 2" in err


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run_json(capsys, ["analyze", str(tmp_path / "nope.tsv")])
    assert code == 2
    assert "cannot read" in err


def test_json_input_by_extension(capsys, tmp_path):
    path = tmp_path / "net.json"
    path.write_text('{"edges": [{"src": "x", "dst": "y", "rate": 2.0}]}')
    code, report, _ = run_json(capsys, ["steady", str(path)])
    assert code == 0
    assert report["basis"] == [{"support": ["y"], "vector": [0.0, 1.0]}]


def test_steady_with_p0(capsys, fig2_path):
    code, report, _ = run_json(capsys, ["steady", str(fig2_path), "--p0", "state:1"])
    assert code == 0
    assert report["n"] == 3
    assert sum(report["lambda"]) == pytest.approx(1.0, abs=1e-12)
    assert min(report["lambda"]) >= 0


def test_trees_fig6(capsys, fig6_path):
    code, report, _ = run_json(capsys, ["trees", str(fig6_path), "--root", "2"])
    assert code == 0
    (entry,) = report["roots"]
    assert entry["root"] == "2"
    assert entry["count"] == 2
    assert entry["cofactor"] == pytest.approx(2.0)
    assert report["stationary"] == pytest.approx([0.25, 0.5, 0.25], abs=1e-12)


def test_trees_over_cap_exits_4(capsys, fig2_path):
    code, _, err = run_json(capsys, ["trees", str(fig2_path), "--cap", "3"])
    assert code == 4
    assert "capped" in err


def test_evolve_at_zero_echoes_p0(capsys, fig6_path):
    code, p_t, _ = run_json(capsys, ["evolve", str(fig6_path), "--t", "0", "--p0", "[0.2, 0.3, 0.5]"])
    assert code == 0
    assert p_t == [0.2, 0.3, 0.5]


def test_evolve_negative_time(capsys, fig6_path):
    code, _, _ = run_json(capsys, ["evolve", str(fig6_path), "--t", "-1"])
    assert code == 2


def test_evolve_p0_from_file(capsys, fig6_path, tmp_path):
    p0 = tmp_path / "p0.json"
    p0.write_text('{"1": 1.0}')
    code, p_t, _ = run_json(capsys, ["evolve", str(fig6_path), "--t", "100", "--p0", str(p0)])
    assert code == 0
    assert p_t == pytest.approx([0.25, 0.5, 0.25], abs=1e-10)


def test_p0_file_not_utf8(capsys, fig6_path, tmp_path):
    p0 = tmp_path / "p0.json"
    p0.write_bytes(b"\xff\xfe[0.5, 0.5, 0.0]")
    code, _, err = run_json(capsys, ["evolve", str(fig6_path), "--t", "1", "--p0", str(p0)])
    assert code == 2
    assert "UTF-8" in err


def test_analyze_vanishing_rates(capsys, tmp_path):
    """Тест: сеть с интенсивностями 1e-200 анализируется как обычная"""
    path = tmp_path / "slow.tsv"
    path.write_text("a\tb\t1e-200\nb\tc\t1e-200\nc\ta\t1e-200\n")
    code, report, _ = run_json(capsys, ["analyze", str(path)])
    assert code == 0
    assert report["relaxing"] is True
    assert report["basis"][0]["vector"] == pytest.approx([1 / 3] * 3, abs=1e-15)


def test_simulate(capsys, fig2_path):
    argv = ["simulate", str(fig2_path), "--T", "5", "--n", "1000", "--seed", "7", "--start", "4"]
    code, report, _ = run_json(capsys, argv)
    assert code == 0
    assert report["trajectories"] == 1000
    assert len(report["estimate"]) == len(report["stderr"]) == 8
    # повтор с тем же seed даёт тот же результат
    _, again, _ = run_json(capsys, argv)
    assert again == report


def test_simulate_invalid_horizon(capsys, fig2_path):
    code, _, _ = run_json(capsys, ["simulate", str(fig2_path), "--T", "0", "--n", "10", "--seed", "1", "--start", "1"])
    assert code == 2


def test_output_file(capsys, fig6_path, tmp_path):
    out = tmp_path / "report.json"
    code = main(["steady", str(fig6_path), "--output", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["relaxing"] is True


def test_floats_round_trip(capsys, tmp_path):
    path = tmp_path / "odd.tsv"
    path.write_text("a\tb\t0.1\nb\ta\t0.2\n")
    code, report, _ = run_json(capsys, ["steady", str(path)])
    assert code == 0
    vector = report["basis"][0]["vector"]
    assert vector == [2 / 3, 1 / 3] or vector == pytest.approx([2 / 3, 1 / 3], abs=1e-15)
