"""Command line behaviour: exit codes, output formats, determinism."""
import json
import subprocess
import sys

import pytest

from electrical_lie.cli import EXIT_DIVERGED, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    return subprocess.run([sys.executable, "-m", "electrical_lie", *argv], capture_output=True, text=True)


def test_dim_text(capsys):
    assert main(["dim", "--family", "C", "--rank", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "dim = 9 (certified)" in out


def test_dim_json(capsys):
    assert main(["dim", "--family", "D", "--rank", "4", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["dimension"] == 12 and doc["overall"] and doc["schema"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["dim", "--family", "E", "--rank", "6"],
        ["dim", "--family", "A", "--rank", "13"],
        ["dim", "--family", "D", "--rank", "2"],
        ["dim", "--family", "A"],
        ["verify", "--family", "A", "--rank", "3", "--suite", "bogus"],
        ["verify", "--family", "C", "--rank", "3", "--suite", "quotient"],
    ],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == EXIT_USAGE


def test_divergence_exit_code(tmp_path):
    out = tmp_path / "partial.json"
    assert main(["dim", "--family", "C", "--rank", "4", "--max-iterations", "10", "--out", str(out)]) == EXIT_DIVERGED
    doc = json.loads(out.read_text())
    assert doc["overall"] is False and "diverged" in doc


def test_failing_check_exit_code(capsys):
    # the printed D5 lemma has entries the certified table contradicts
    assert main(["verify", "--family", "D", "--rank", "5", "--suite", "oracle", "--format", "text"]) == EXIT_FAIL
    assert "FAIL  d5.oracle.lemma.EE(2,4)" in capsys.readouterr().out


def test_verify_is_byte_identical(tmp_path):
    a, b, c = (tmp_path / n for n in ("a.json", "b.json", "c.json"))
    base = ["verify", "--family", "C", "--rank", "4", "--suite", "all", "--out"]
    assert main(base + [str(a)]) == EXIT_OK
    assert main(base + [str(b)]) == EXIT_OK
    assert main(base + [str(c), "--jobs", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_subprocess_runs_are_identical():
    argv = ["verify", "--family", "A", "--rank", "5", "--suite", "oddA"]
    r1, r2 = run(*argv), run(*argv)
    assert r1.returncode == r2.returncode == EXIT_OK
    assert r1.stdout == r2.stdout
    assert json.loads(r1.stdout)["suites_run"] == ["oddA"]


def test_table_dump(capsys):
    assert main(["table", "--family", "B", "--rank", "2", "--route", "presentation"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["basis"] == ["e1", "e2", "[e1e2]", "[e2[e1e2]]"]


def test_version():
    r = run("--version")
    assert r.returncode == 0 and r.stdout.strip()
