"""Shared fixtures: paths to bundled data and a tiny git repo builder."""

import json
import subprocess
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def eda_corpus_path() -> Path:
    return FIXTURES / "eda_corpus.jsonl"


@pytest.fixture(scope="session")
def eda_expected() -> dict:
    with open(FIXTURES / "eda_expected.json", encoding="utf-8") as handle:
        return json.load(handle)


def git(repo: Path, *args: str) -> str:
    env_args = [
        "-c", "user.name=Test Author",
        "-c", "user.email=test@example.com",
        "-c", "commit.gpgsign=false",
    ]
    proc = subprocess.run(
        ["git", *env_args, "-C", str(repo), *args],
        capture_output=True,
        text=True,
        check=True,
    )
    return proc.stdout


def make_commit(repo: Path, filename: str, content: str, message: str) -> None:
    (repo / filename).write_text(content, encoding="utf-8")
    git(repo, "add", filename)
    git(repo, "commit", "-m", message)


@pytest.fixture
def linear_repo(tmp_path: Path) -> Path:
    """Three plain commits on one branch."""
    repo = tmp_path / "repo"
    repo.mkdir()
    git(repo, "init", "-q", "-b", "main")
    make_commit(repo, "alpha.txt", "first version\n", "Add alpha file")
    make_commit(repo, "alpha.txt", "second version\n", "Update alpha contents")
    make_commit(repo, "beta.txt", "another file\n", "Add beta file")
    return repo
