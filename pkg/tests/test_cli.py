import json
import subprocess
import sys
from dataclasses import replace

import pytest

from coxfold import cli, folding


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "H3")
    data = json.loads(out)
    assert code == 0 and data["schema"] == "coxfold/1"
    assert data["coxeter_number"] == 10


@pytest.mark.parametrize(
    "argv,code",
    [
        ((), 1),
        (("frobnicate",), 1),
        (("info", "Q7"), 1),
        (("verify", "BOGUS"), 1),
        (("verify", "E6", "--fold", "F4"), 0),
        (("fold", "D4", "G2"), 0),
        (("fold", "E6", "H3"), 1),
        (("verify", "E8", "--affine"), 0),
        (("verify", "H3", "--affine"), 0),
        (("verify", "D6", "--affine"), 2),  # word identity does not hold
        (("verify", "H4", "--affine"), 2),  # label outside the candidate set
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_verify_payload(capsys):
    code, out, _ = run(capsys, "verify", "E6", "--fold", "F4", "--group-order")
    data = json.loads(out)
    assert code == 0 and data["passed"]


def test_deterministic_output(capsys):
    a = run(capsys, "verify", "E7", "--affine")
    b = run(capsys, "verify", "E7", "--affine")
    assert a == b


def test_corrupted_fold_exits_2(capsys, monkeypatch):
    good = folding.get_fold

    def broken(source, target):
        fm = good(source, target)
        return replace(fm, generator_words=((6,), (3,), (2,), (1, 5)))

    monkeypatch.setattr(folding, "get_fold", broken)
    code, out, _ = run(capsys, "verify", "E6", "--fold", "F4")
    assert code == 2
    assert not json.loads(out)["passed"]


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "E8", "--seed", "8")
    assert code == 0 and json.loads(out)["size"] == 17280


def test_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("COXFOLD_CAP", "10")
    assert run(capsys, "orbit", "E8", "--seed", "1")[0] == 2
    monkeypatch.setenv("COXFOLD_CAP", "many")
    assert run(capsys, "orbit", "E8", "--seed", "1")[0] == 1


def test_cells(capsys):
    code, out, _ = run(capsys, "cells", "A3", "--what", "voronoi")
    assert code == 0 and json.loads(out)["sets"]["voronoi"]["size"] == 14


def test_project_and_render(capsys, tmp_path):
    csv = tmp_path / "a4.csv"
    code, out, _ = run(capsys, "project", "A4", "--radius2", "6", "--out", str(csv), "--check-rotation", "5")
    data = json.loads(out)
    assert code == 0 and data["points"] == 111 and data["checks"]["rotation"]["passed"]
    svg = tmp_path / "a4.svg"
    code, out, _ = run(capsys, "render", str(csv), "--out", str(svg))
    assert code == 0 and svg.read_text().count("<circle") == 111
    assert run(capsys, "render", str(tmp_path / "missing.csv"), "--out", str(svg))[0] == 1


def test_project_shells(capsys, tmp_path):
    code, out, _ = run(capsys, "project", "E8", "--plane", "h4", "--radius2", "2",
                       "--out", str(tmp_path / "e8.csv"), "--check-shells")
    shells = json.loads(out)["checks"]["shells"]
    assert code == 0 and [s["count"] for s in shells] == [1, 120, 120]


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "coxfold.cli", "info", "G2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["coxeter_number"] == 6
