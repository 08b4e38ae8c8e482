from __future__ import annotations

import io
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from bmclang.cli import main

CORPUS = Path(__file__).parent / "corpus"


def corpus_files(subdir: str = "", suffix: str = "") -> list[Path]:
    base = CORPUS / subdir if subdir else CORPUS
    return sorted(
        p for p in base.iterdir() if p.is_file() and p.name.endswith(suffix or "")
    )


def clean_corpus() -> list[Path]:
    return corpus_files()


def negative_corpus() -> list[Path]:
    return corpus_files("negative")


def run_cli(*args: str) -> tuple[int, str, str]:
    """Run the CLI in-process, capturing stdout and stderr."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def figure9_text() -> str:
    return (CORPUS / "figure9.bmc").read_text(encoding="utf-8")


@pytest.fixture
def figure9_path() -> Path:
    return CORPUS / "figure9.bmc"


@pytest.fixture
def pmc_path() -> Path:
    return CORPUS / "pmc.bmc"
