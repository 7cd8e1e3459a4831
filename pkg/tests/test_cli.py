import json
import pathlib
import random

import pytest

from holoknot import cli
from holoknot.testutils import write_text_file

random.seed(61)

TREFOIL_SERIES = '{"sin": [1, 4, 0, 1]}'
NO_AXIS_SERIES = '{"sin": [1, 4, 0, 1, 1.5]}'
KIDNEY_SERIES = '{"cos": [1], "sin": [0, 0, 0.2]}'


def run(
    capsys: pytest.CaptureFixture, *argv: str
) -> tuple[int, str, str]:
    """Run the program and return the exit code, stdout and stderr."""
    exit_code = cli.main(list(argv))
    captured = capsys.readouterr()
    return exit_code, captured.out, captured.err


def test_nf(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture) -> None:
    path = write_text_file(tmp_path, "word.txt", "n=3 -1\n")
    exit_code, out, _ = run(capsys, "nf", str(path))
    assert exit_code == 0
    assert out == "Δ^-1 | 1 2\n"

    exit_code, out, _ = run(capsys, "--json", "nf", str(path))
    assert exit_code == 0
    data = json.loads(out)
    assert data["command"] == "nf"
    assert data["exit_code"] == 0
    assert data["results"]["normal_form"] == "Δ^-1 | 1 2"
    assert data["results"]["inf"] == -1
    assert list(data["inputs_digest"]) == [str(path)]
    assert "summary" not in data


def test_eq_and_conj(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    a = write_text_file(tmp_path, "a.txt", "n=3 1 2 1")
    b = write_text_file(tmp_path, "b.txt", "n=3 2 1 2")
    c = write_text_file(tmp_path, "c.txt", "n=3 2")
    d = write_text_file(tmp_path, "d.txt", "n=3 1")
    e = write_text_file(tmp_path, "e.txt", "n=3 -1")

    assert run(capsys, "eq", str(a), str(b))[:2] == (0, "EQUAL\n")
    assert run(capsys, "eq", str(a), str(c))[:2] == (0, "NOT EQUAL\n")

    exit_code, out, _ = run(capsys, "conj", str(c), str(d))
    assert exit_code == 0
    lines = out.splitlines()
    assert lines[0] == "CONJUGATE"
    assert lines[1].startswith("witness: n=3")

    # A negative answer is a result, not a failure.
    assert run(capsys, "conj", str(d), str(e))[:2] == (0, "NOT CONJUGATE\n")


def test_eq_rewriting(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    a = write_text_file(tmp_path, "a.txt", "n=4 1 2 1 3 2 1")
    b = write_text_file(tmp_path, "b.txt", "n=4 3 2 1 3 2 3")
    c = write_text_file(tmp_path, "c.txt", "n=4 -1 -3")
    d = write_text_file(tmp_path, "d.txt", "n=4 -3 -1")

    assert run(capsys, "eq", "--rewriting", str(a), str(b))[:2] == (
        0,
        "EQUAL\n",
    )
    assert run(capsys, "eq", "--rewriting", str(c), str(d))[:2] == (
        0,
        "EQUAL\n",
    )
    assert run(capsys, "eq", "--rewriting", str(a), str(c))[0] == 1
    capped = ("--max-positive-words", "1", "eq", "--rewriting")
    exit_code, _, err = run(capsys, *capped, str(a), str(b))
    assert exit_code == 3
    assert "exceeded 1 words" in err


def test_summit_commands(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    path = write_text_file(tmp_path, "word.txt", "n=3 1 1")
    exit_code, out, _ = run(capsys, "summit-set", str(path))
    assert exit_code == 0
    assert set(out.splitlines()) == {"Δ^0 | 1 . 1", "Δ^0 | 2 . 2"}

    exit_code, out, _ = run(capsys, "summit", str(path))
    assert exit_code == 0
    assert out.splitlines()[0] in {"Δ^0 | 1 . 1", "Δ^0 | 2 . 2"}

    exit_code, _, err = run(
        capsys, "--strand-cap", "2", "summit-set", str(path)
    )
    assert exit_code == 3
    assert "error:" in err


def test_input_errors(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    exit_code, out, err = run(capsys, "nf", str(tmp_path / "missing.txt"))
    assert exit_code == 2
    assert out == ""
    assert "error: Cannot read" in err

    path = write_text_file(tmp_path, "bad.txt", "n=3 1 7")
    exit_code, _, err = run(capsys, "nf", str(path))
    assert exit_code == 2
    assert "line 1, column 7" in err

    exit_code, out, _ = run(capsys, "--json", "nf", str(path))
    assert exit_code == 2
    data = json.loads(out)
    assert data["exit_code"] == 2
    assert data["results"]["error_type"] == "BraidParseError"

    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "--grid-size", "8", "nf", str(path))[0] == 2

    config = write_text_file(tmp_path, "config.json", '{"grid_size": "x"}')
    good = write_text_file(tmp_path, "word.txt", "n=2 1")
    assert run(capsys, "--config", str(config), "nf", str(good))[0] == 2


def test_holonomize_and_verify(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    path = write_text_file(tmp_path, "word.txt", "n=3 -2 -1 1 2")
    exit_code, out, _ = run(capsys, "holonomize", str(path))
    assert exit_code == 0
    assert out.splitlines()[1:] == ["round trip: PASS", "certificate: PASS"]

    word = write_text_file(tmp_path, "sigma.txt", "n=3 -1")
    exit_code, out, _ = run(capsys, "holonomize", str(word))
    assert exit_code == 0
    assert out.splitlines()[0] == "n=3 N=-1,-2,-1 P=1,2"

    certificate_path = tmp_path / "certificate.txt"
    certificate_word = write_text_file(tmp_path, "cert.txt", "n=3 -2 -1 1 2")
    exit_code, out, _ = run(
        capsys,
        "holonomize",
        str(certificate_word),
        "--to",
        "normal",
        "--certificate",
        str(certificate_path),
    )
    assert exit_code == 0
    assert "certificate: PASS" in out.splitlines()
    assert certificate_path.read_text().startswith("START => n=3")

    exit_code, out, _ = run(capsys, "verify", str(certificate_path))
    assert (exit_code, out) == (0, "PASS\n")

    # Replace the final form with a different braid.
    lines = certificate_path.read_text().splitlines()
    head, _ = lines[-1].split(" => ")
    lines[-1] = f"{head} => n=3 N= P=1,1,1,1,1,1,1"
    tampered = write_text_file(
        tmp_path, "tampered.txt", "\n".join(lines) + "\n"
    )
    exit_code, out, _ = run(capsys, "verify", str(tampered))
    assert exit_code == 1
    assert out.startswith(f"FAIL at step {len(lines) - 1}:")


def test_isotopy(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    form = write_text_file(tmp_path, "form.txt", "# trefoil\nn=2 N= P=1,1,1\n")
    certificate_path = tmp_path / "certificate.txt"
    exit_code, out, _ = run(
        capsys,
        "isotopy",
        "stabilize",
        str(form),
        "--sign",
        "-1",
        "--certificate",
        str(certificate_path),
    )
    assert exit_code == 0
    assert out == "n=3 N=-2 P=1,1,1\ncertificate: PASS\n"
    assert run(capsys, "verify", str(certificate_path))[0] == 0

    stabilized = write_text_file(
        tmp_path, "stabilized.txt", "n=3 N=-2 P=1,1,1"
    )
    exit_code, out, _ = run(capsys, "isotopy", "destabilize", str(stabilized))
    assert (exit_code, out.splitlines()[0]) == (0, "n=2 N= P=1,1,1")

    script = write_text_file(
        tmp_path,
        "script.txt",
        "n=2 N= P=1,1,1\nM1 +1\nGOTO n=3 N= P=1,1,1,2\nM2\n",
    )
    exit_code, out, _ = run(capsys, "isotopy", "replay", str(script))
    assert exit_code == 0
    assert out == "n=2 N= P=1,1,1\ncertificate: PASS\n"

    # The trefoil cannot lose a strand: exit code 1.
    exit_code, _, err = run(capsys, "isotopy", "destabilize", str(form))
    assert exit_code == 1
    assert "error:" in err

    bad_sign = ("isotopy", "stabilize", str(form), "--sign", "2")
    assert run(capsys, *bad_sign)[0] == 2
    two_forms = write_text_file(tmp_path, "two.txt", "n=2 N= P=1\nn=2 N= P=1")
    assert run(capsys, "isotopy", "stabilize", str(two_forms))[0] == 2


def test_curve(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture) -> None:
    series = write_text_file(tmp_path, "trefoil.json", TREFOIL_SERIES)
    exit_code, out, _ = run(capsys, "curve", "check", str(series))
    assert exit_code == 0
    lines = out.splitlines()
    assert lines[:4] == [f"condition {i}: PASS" for i in range(1, 5)]
    assert "double points: 3" in lines
    assert "braid index: 2" in lines

    exit_code, out, _ = run(capsys, "curve", "braid", str(series))
    assert exit_code == 0
    assert out == "n=2 1 1 1\n"

    # Generic, but not a closed braid about its axis point.
    kidney = write_text_file(tmp_path, "kidney.json", KIDNEY_SERIES)
    exit_code, out, _ = run(capsys, "curve", "check", str(kidney))
    assert exit_code == 0
    assert out.splitlines()[:4] == [
        f"condition {i}: PASS" for i in range(1, 5)
    ]
    exit_code, out, err = run(capsys, "curve", "braid", str(kidney))
    assert (exit_code, out) == (1, "")
    assert "is not increasing" in err

    output = tmp_path / "trefoil.csv"
    exit_code, out, _ = run(
        capsys,
        "--grid-size",
        "128",
        "curve",
        "csv",
        str(series),
        "--output",
        str(output),
    )
    assert exit_code == 0
    assert out == f"wrote {output}\n"
    csv_lines = output.read_text().splitlines()
    assert csv_lines[0] == "t,x,y,z"
    assert len(csv_lines) == 129

    svg = tmp_path / "trefoil.svg"
    exit_code, _, _ = run(
        capsys, "curve", "svg", str(series), "--output", str(svg)
    )
    assert exit_code == 0
    assert svg.read_text().lstrip().startswith("<")

    no_axis = write_text_file(tmp_path, "no_axis.json", NO_AXIS_SERIES)
    exit_code, out, _ = run(capsys, "curve", "check", str(no_axis))
    assert exit_code == 0
    assert "condition 4: FAIL" in out.splitlines()
    exit_code, _, err = run(capsys, "curve", "braid", str(no_axis))
    assert exit_code == 1
    assert "error:" in err

    bad = write_text_file(tmp_path, "bad.json", '{"sin": [1], "tan": [2]}')
    assert run(capsys, "curve", "check", str(bad))[0] == 2


def test_cousin(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture) -> None:
    series = write_text_file(tmp_path, "trefoil.json", TREFOIL_SERIES)
    exit_code, out, _ = run(capsys, "cousin", "front", str(series))
    assert exit_code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert all(line.endswith("sign=-1") for line in lines[:3])
    assert lines[3] == "cusps: 4"

    exit_code, out, _ = run(
        capsys, "--json", "cousin", "check", str(series), "--dasbach", "2"
    )
    assert exit_code == 0
    data = json.loads(out)
    assert data["results"]["tangency"]["is_tangent"]
    assert data["results"]["diagram_equivalence"]["equivalent"]
    assert data["results"]["dasbach"]["all_tangent"]
    assert data["warnings"] == []

    exit_code, out, _ = run(
        capsys,
        "cousin",
        "check",
        str(series),
        "--dasbach",
        "2",
        "--verbatim",
    )
    assert exit_code == 0
    assert any(
        line.startswith("warning: verbatim") for line in out.splitlines()
    )

    exit_code, out, _ = run(capsys, "cousin", "check", str(series), "--k", "0")
    assert exit_code == 0
    assert out.startswith("beta residual:")

    assert run(capsys, "cousin", "front", str(series), "--k", "0")[0] == 1
    assert run(capsys, "cousin", "front", str(series), "--k", "-1")[0] == 2


def test_example_files(capsys: pytest.CaptureFixture) -> None:
    data_dir = pathlib.Path(__file__).parent / "data"
    exit_code, out, _ = run(capsys, "nf", str(data_dir / "word.txt"))
    assert exit_code == 0
    assert out.startswith("Δ^")

    script = data_dir / "markov_script.txt"
    exit_code, out, _ = run(capsys, "isotopy", "replay", str(script))
    assert (exit_code, out) == (0, "n=2 N= P=1,1,1\ncertificate: PASS\n")

    series = data_dir / "trefoil.json"
    exit_code, out, _ = run(capsys, "--json", "curve", "check", str(series))
    assert exit_code == 0
    assert json.loads(out)["results"]["genericity"]["all_pass"]
