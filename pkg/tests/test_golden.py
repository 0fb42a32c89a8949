"""Golden transcripts: each script in golden/ must reproduce its .out file."""

import pathlib

import pytest

from dualrt.script import run_path

GOLDEN = pathlib.Path(__file__).parent / "golden"
SCRIPTS = sorted(GOLDEN.glob("*.dr"))


@pytest.mark.parametrize("script", SCRIPTS, ids=lambda p: p.stem)
def test_transcript_matches(script):
    report = run_path(str(script))
    expected = script.with_suffix(".out").read_text(encoding="utf-8")
    assert report.transcript == expected
    assert report.exit_code == 0


@pytest.mark.parametrize("script", SCRIPTS, ids=lambda p: p.stem)
def test_transcript_is_deterministic(script):
    assert run_path(str(script)).transcript == run_path(str(script)).transcript
