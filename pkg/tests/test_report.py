import contextlib
import io
import json
import pathlib

import pytest
import structlog

from holoknot.errors import (
    EXIT_CAP_EXCEEDED,
    EXIT_DOMAIN_FAILURE,
    EXIT_INPUT_ERROR,
    BraidParseError,
    IllegalMoveError,
    InputError,
    IterationCapError,
    NotAFrontError,
    ToleranceError,
    exit_code_for,
)
from holoknot import cli
from holoknot.curve_engine import genericity_report
from holoknot.report import RunReport, configure_logging
from holoknot.testutils import CATALOG, write_text_file
from holoknot.utils import atomic_write_text, read_text, sha256_digest


def test_exit_code_for() -> None:
    for error, expected in (
        (InputError("bad"), EXIT_INPUT_ERROR),
        (BraidParseError("bad token", 2, 5), EXIT_INPUT_ERROR),
        (IllegalMoveError("no"), EXIT_DOMAIN_FAILURE),
        (NotAFrontError("k=0"), EXIT_DOMAIN_FAILURE),
        (ToleranceError("disagree"), EXIT_DOMAIN_FAILURE),
        (IterationCapError("too many"), EXIT_CAP_EXCEEDED),
    ):
        assert exit_code_for(error) == expected
    with pytest.raises(TypeError):
        exit_code_for(KeyError("x"))

    error = BraidParseError("bad token", 2, 5)
    assert str(error) == "line 2, column 5: bad token"
    assert (error.line, error.column) == (2, 5)


def test_run_report() -> None:
    report = RunReport(command="nf")
    report.add_input("word.txt", "n=2 1")
    report.results["normal_form"] = "Δ^1 |"
    report.summary.append("Δ^1 |")
    report.warnings.append("something odd")
    report.outputs["out.txt"] = "text"

    assert report.inputs_digest == {"word.txt": sha256_digest("n=2 1")}
    assert report.to_text() == "Δ^1 |\nwarning: something odd\n"
    data = json.loads(report.to_json())
    assert data == {
        "command": "nf",
        "inputs_digest": {"word.txt": sha256_digest("n=2 1")},
        "results": {"normal_form": "Δ^1 |"},
        "warnings": ["something odd"],
        "exit_code": 0,
    }
    assert RunReport(command="eq").to_text() == ""


def test_read_and_write_text(tmp_path: pathlib.Path) -> None:
    path = tmp_path / "out.txt"
    atomic_write_text(path, "first\n")
    assert read_text(path) == "first\n"
    atomic_write_text(path, "second\n")
    assert read_text(path) == "second\n"
    assert [item.name for item in tmp_path.iterdir()] == ["out.txt"]

    with pytest.raises(InputError):
        read_text(tmp_path / "missing.txt")
    with pytest.raises(InputError):
        atomic_write_text(tmp_path / "no" / "such" / "dir.txt", "x")

    assert sha256_digest("") == (
        "e3b0c44298fc1c149afbf4c8996fb924"
        "27ae41e4649b934ca495991b7852b855"
    )


def test_configure_logging(capsys: pytest.CaptureFixture) -> None:
    assert structlog.is_configured()
    log = structlog.get_logger("Test")
    configure_logging("WARNING")
    log.info("quiet event")
    log.warning("loud event")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "loud event" in captured.err
    assert "quiet event" not in captured.err

    configure_logging("DEBUG")
    log.debug("debug event")
    assert "debug event" in capsys.readouterr().err


def test_logging_outlives_stderr(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    path = write_text_file(tmp_path, "word.txt", "n=3 1 2")
    stream = io.StringIO()
    with contextlib.redirect_stderr(stream):
        assert cli.main(["--log-level", "DEBUG", "nf", str(path)]) == 0
    stream.close()

    # Events now go to the current stderr, not the closed stream.
    assert genericity_report(CATALOG["unknot"]).all_pass
    assert "genericity checked" in capsys.readouterr().err
