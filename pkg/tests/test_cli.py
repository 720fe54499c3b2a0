"""Golden-file tests for the command line.

Each case in ``golden/cases.txt`` has an expected transcript
``golden/<name>.out``: stdout, then stderr, then the exit status. Set
``GOLDEN_UPDATE=1`` to rewrite the transcripts.
"""

import io
import os
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from omegaramsey.cli import run

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"
ROOT = HERE.parent


def load_cases():
    cases = []
    for line in (GOLDEN / "cases.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, args = (part.strip() for part in line.split("|", 1))
        cases.append((name, args))
    return cases


def transcript(args):
    argv = shlex.split(args.format(bundle="bundles/paircolour", data="tests/golden/data"))
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = run(argv, out, err)
    finally:
        os.chdir(cwd)
    return f"{out.getvalue()}--- stderr\n{err.getvalue()}--- exit {code}\n"


@pytest.mark.parametrize("name,args", load_cases(), ids=[c[0] for c in load_cases()])
def test_golden(name, args):
    got = transcript(args)
    path = GOLDEN / f"{name}.out"
    if os.environ.get("GOLDEN_UPDATE"):
        path.write_text(got)
    assert got == path.read_text()


def test_exit_codes_cover_all_outcomes():
    codes = {transcript(a).rsplit("exit ", 1)[1].strip() for _, a in load_cases()}
    assert codes == {"0", "1", "2"}


def test_usage_error_exit_status():
    assert run(["clique"], io.StringIO(), io.StringIO()) == 2


def test_paircolour_bundle_written(tmp_path):
    out = io.StringIO()
    assert run(["clique", "paircolour", "--out", str(tmp_path / "b")], out, io.StringIO()) == 0
    for name in ("L", "eq", "E1", "E2"):
        assert (tmp_path / "b" / f"{name}.nba").read_text() == (ROOT / "bundles" / "paircolour" / f"{name}.nba").read_text()


def test_poset_partition_command(tmp_path):
    out = io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = run(
            ["poset", "partition", "--L", "tests/golden/data/univ.nba", "--eq", "tests/golden/data/diag.nba",
             "--leq", "tests/golden/data/lexleq.nba", "--out", str(tmp_path / "p")],
            out, io.StringIO(),
        )
    finally:
        os.chdir(cwd)
    assert code == 0 and "CLASSES 3" in out.getvalue()
    assert sorted(os.listdir(tmp_path / "p")) == ["E1.nba", "E2.nba", "E3.nba", "L.nba", "eq.nba"]


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "omegaramsey", "nlang", "gen", "--choices", "1", "--len", "2"],
        capture_output=True, text=True, cwd=ROOT,
    )
    assert r.returncode == 0 and r.stdout == "WORD 10\n"
