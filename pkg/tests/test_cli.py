import io
import json
import subprocess
import sys

import pytest

from cmreg.cli import EXIT_COMPUTE, EXIT_OK, EXIT_USAGE, EXIT_VERDICT, main
from cmreg.pipeline import example_family


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_analyze_file(tmp_path):
    f = tmp_path / "fam.txt"
    f.write_text(example_family(4).emit())
    code, text = run("analyze", str(f))
    assert code == EXIT_OK
    assert "reg(G) 4" in text and "l(L) 4" in text
    code, text = run("analyze", str(f), "--json")
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["hdeg"] == 5 and data["e_coeffs"] == [1, -4]


def test_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("field: F32003\nvars: x, y\nideal: x^2, x*y^^3\n")
    code, _ = run("analyze", str(f))
    assert code == EXIT_USAGE
    assert "line 3, column 17" in capsys.readouterr().err


def test_missing_file_and_bad_usage():
    assert run("analyze", "/nonexistent/instance.txt")[0] == EXIT_USAGE
    assert run("bogus")[0] == EXIT_USAGE
    assert run("family", "--r", "0")[0] == EXIT_USAGE
    assert run("bounds", "--d", "0", "--e", "1", "--i", "0")[0] == EXIT_USAGE
    assert run()[0] == EXIT_USAGE


def test_help_is_success(capsys):
    assert run("--help")[0] == EXIT_OK


def test_computational_error_exit_code(tmp_path):
    # the unit ideal has no tangent cone data to speak of
    f = tmp_path / "unit.txt"
    f.write_text("field: F32003\nvars: x, y\nideal: 1 + x\n")
    assert run("analyze", str(f))[0] == EXIT_COMPUTE


def test_verdict_failure_exit_code(tmp_path):
    # a supplied extended degree that is too small makes the bounds fail
    f = tmp_path / "low.txt"
    f.write_text("field: F32003\nvars: x, y, z\nideal: x^2 - x^3, x*y - z^3*x\nextdeg: 1\n")
    code, text = run("analyze", str(f))
    assert code == EXIT_VERDICT
    assert "FAILED" in text


def test_family_and_bounds():
    code, text = run("family", "--r", "2", "--json")
    assert code == EXIT_OK and json.loads(text)["reg"] == 2
    code, text = run("bounds", "--d", "2", "--e", "2", "--i", "0", "--n", "3")
    assert code == EXIT_OK
    assert "reg(G)  " in text and "82944" in text


def test_envelope():
    code, text = run("envelope", "--d", "1", "--q", "1")
    assert code == EXIT_OK
    assert "total candidates: 1" in text and "1, 2, 3, 4, 5" in text
    code, text = run("envelope", "--d", "3", "--q", "4", "--json")
    assert code == EXIT_OK and int(json.loads(text)["count"]) > 0


def test_corpus_command(tmp_path):
    code, text = run("corpus", "--seed", "1", "--count", "4", "--binomial", "2")
    assert code == EXIT_OK and text.startswith("instances 6")
    (tmp_path / "a.txt").write_text(example_family(1).emit())
    code, text = run("corpus", "--dir", str(tmp_path), "--json")
    assert code == EXIT_OK and json.loads(text)["instances"] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cmreg", "family", "--r", "1"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0 and "reg(G) 1" in proc.stdout
