"""The CLI as a thin client: flag handling, output formats, exit codes."""

import csv
import io
import json

import pytest

from weilmix.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(lines))))


def test_bounds_csv(capsys):
    code, out, err = run_cli(
        capsys,
        "bounds", "--family", "gu", "--n", "50", "--q", "9",
        "--r-min", "44", "--r-max", "54", "--format", "csv",
    )
    assert code == 0
    rows = parse_csv(out)
    assert rows[0][0] == "r"
    assert "[round=up]" in rows[0][1] and "[round=down]" in rows[0][6]
    data = {int(r[0]): r for r in rows[1:]}
    assert len(data) == 11
    assert float(data[52][1]) <= 0.0087
    assert abs(float(data[52][1]) - 0.008642) < 5e-7
    assert float(data[46][4]) >= 0.97
    assert "# weilmix" in out


def test_bounds_exact_sum_column(capsys):
    code, out, _ = run_cli(
        capsys,
        "bounds", "--family", "gl", "--n", "2", "--q", "3",
        "--r-min", "0", "--r-max", "0", "--exact-sum",
    )
    assert code == 0
    rows = parse_csv(out)
    assert rows[1][-1] == "47/1"


def test_bounds_json(capsys):
    code, out, _ = run_cli(
        capsys,
        "bounds", "--family", "sp-odd", "--n", "10", "--q", "5",
        "--r-min", "21", "--r-max", "21", "--format", "json",
    )
    assert code == 0
    record = json.loads(out)
    assert record["schema_version"] == 1
    assert abs(record["rows"][0]["upper_closed"] - 0.25) < 1e-9


def test_bounds_svg(capsys, tmp_path):
    svg_path = tmp_path / "profile.svg"
    code, out, _ = run_cli(
        capsys,
        "bounds", "--family", "gu", "--n", "6", "--q", "3",
        "--r-min", "1", "--r-max", "9", "--svg", str(svg_path),
    )
    assert code == 0
    content = svg_path.read_text()
    assert content.startswith("<?xml")
    assert "<svg" in content and "polyline" in content
    import xml.dom.minidom

    xml.dom.minidom.parseString(content)


def test_dist_fixed_space(capsys):
    code, out, _ = run_cli(
        capsys, "dist", "--family", "gu", "--n", "2", "--q", "2", "--what", "fixed-space"
    )
    assert code == 0
    rows = parse_csv(out)
    assert [r[1] for r in rows[1:]] == ["5/9", "7/18", "1/18"]


def test_dist_sp_classes(capsys):
    code, out, _ = run_cli(
        capsys,
        "dist", "--family", "sp-odd", "--n", "2", "--q", "5",
        "--what", "sp-classes", "--mode", "c-pairs",
    )
    assert code == 0
    rows = {r[0]: r[1] for r in parse_csv(out)[1:]}
    assert rows["Identity"] == "1/312"
    assert rows["D21"] == "125/312"


def test_dist_pair_codim_gl22(capsys):
    code, out, _ = run_cli(
        capsys, "dist", "--family", "gl", "--n", "2", "--q", "2", "--what", "pair-codim"
    )
    rows = {r[0]: r[1] for r in parse_csv(out)[1:]}
    assert rows == {"codim 0": "1/3", "codim 1": "0/1", "codim 2": "2/3"}


def test_usage_errors_exit_2(capsys):
    code, out, err = run_cli(
        capsys, "dist", "--family", "sp-even", "--n", "2", "--q", "3",
        "--what", "pair-codim",
    )
    assert code == 2
    assert "even q" in err
    code, _, err = run_cli(
        capsys, "dist", "--family", "gl", "--n", "2", "--q", "3", "--what", "sp-classes"
    )
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--family", "nope", "--n", "2", "--q", "3",
              "--r-min", "0", "--r-max", "1"])
    assert exc.value.code == 2


def test_simulate_deterministic_output(capsys):
    args = [
        "simulate", "--family", "sp-odd", "--n", "1", "--q", "3",
        "--what", "fixed-space", "--samples", "3000", "--seed", "7",
        "--threads", "2",
    ]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical
    rows = parse_csv(out1)
    total = sum(int(r[1]) for r in rows[1:])
    assert total == 3000
    assert "seed=7" in out1 and "samples=3000" in out1


def test_simulate_empty(capsys):
    code, out, _ = run_cli(
        capsys,
        "simulate", "--family", "gl", "--n", "2", "--q", "3",
        "--what", "fixed-space", "--samples", "0", "--seed", "1",
        "--threads", "1",
    )
    assert code == 0
    rows = parse_csv(out)
    assert all(r[1] == "0" for r in rows[1:])


def test_simulate_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("WEILMIX_THREADS", "2")
    code, out, _ = run_cli(
        capsys,
        "simulate", "--family", "sp-odd", "--n", "1", "--q", "3",
        "--what", "fixed-space", "--samples", "1000", "--seed", "5",
    )
    assert code == 0
    assert "# threads: 2" in out
    monkeypatch.setenv("WEILMIX_THREADS", "junk")
    code, _, err = run_cli(
        capsys,
        "simulate", "--family", "sp-odd", "--n", "1", "--q", "3",
        "--what", "fixed-space", "--samples", "10", "--seed", "5",
    )
    assert code == 2


def test_verify_quick_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "--level", "quick")
    assert code == 0
    assert "PASS" in out


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--level", "quick", "--format", "json")
    assert code == 0
    record = json.loads(out)
    assert record["ok"] is True
    assert record["schema_version"] == 1


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
