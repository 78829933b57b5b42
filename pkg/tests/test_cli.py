"""End-to-end tests of the command-line surface."""

import csv
import json

import pytest

from gkk.cli import main

EXAMPLE_A = """\
game 2
vertex 0 MIN
vertex 1 MAX
edge 0 1 -1
edge 1 0 2
"""


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "exampleA.game"
    path.write_text(EXAMPLE_A)
    return path


def test_solve_example_a(example_file, capsys):
    assert main(["solve", str(example_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["run"]["iterations"] == 1
    assert [v["potential"] for v in doc["vertices"]] == [0, 1]


def test_solve_general_flag(example_file, capsys):
    assert main(["solve", str(example_file), "--general"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["run"]["mode"] == "GENERAL"


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.game", tmp_path / "b.game"
    args = ["gen", "--n", "5", "--m", "8", "--maxw", "10", "--seed", "7", "--simple"]
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_seed_env_override(tmp_path, monkeypatch):
    out1 = tmp_path / "one.game"
    out2 = tmp_path / "two.game"
    monkeypatch.setenv("GKK_SEED", "99")
    main(["gen", "--n", "4", "--m", "6", "--maxw", "3", "-o", str(out1)])
    monkeypatch.delenv("GKK_SEED")
    main(["gen", "--n", "4", "--m", "6", "--maxw", "3", "--seed", "99", "-o", str(out2)])
    assert out1.read_text() == out2.read_text()


def test_lift_roundtrip(tmp_path, example_file, capsys):
    out = tmp_path / "lifted.game"
    assert main(["lift", str(example_file), "-o", str(out)]) == 0
    text = out.read_text()
    assert "edge 0 1 -4" in text and "edge 1 0 5" in text


def test_check_agrees_on_generated_games(tmp_path, capsys):
    for seed in range(5):
        path = tmp_path / f"g{seed}.game"
        main(
            ["gen", "--n", "6", "--m", "14", "--maxw", "5",
             "--seed", str(seed), "--simple", "-o", str(path)]
        )
        assert main(["check", str(path)]) == 0, capsys.readouterr()


def test_oracle_output(example_file, capsys):
    assert main(["oracle", str(example_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["vertices"][0]["mp"] == "1/2"
    assert doc["vertices"][0]["en_minus"] == -1


def test_solve_trace_then_verify(tmp_path, example_file, capsys):
    trace_path = tmp_path / "trace.json"
    assert main(["solve", str(example_file), "--trace", str(trace_path)]) == 0
    capsys.readouterr()
    assert main(["verify", "--trace", str(trace_path)]) == 0
    out = capsys.readouterr().out
    assert "[pass] layer_lex_growth" in out
    assert "[FAIL]" not in out


def test_bench_writes_all_columns(tmp_path, capsys):
    for seed in range(3):
        main(
            ["gen", "--n", "5", "--m", "10", "--maxw", "4",
             "--seed", str(seed), "--simple",
             "-o", str(tmp_path / f"b{seed}.game")]
        )
    out_csv = tmp_path / "bench.csv"
    assert main(["bench", "--dir", str(tmp_path), "--out", str(out_csv)]) == 0
    with out_csv.open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3
    expected = {
        "file", "n", "m", "N", "iterations", "E_plus", "E_minus",
        "bound_thm3", "bound_nN", "wall_time_s", "vi_lift_count",
    }
    assert set(rows[0]) == expected
    for row in rows:
        assert int(row["iterations"]) <= int(row["bound_thm3"])
        assert int(row["bound_thm3"]) <= int(row["bound_nN"])


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.game"
    bad.write_text("vertex 0 MIN\n")
    assert main(["solve", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
