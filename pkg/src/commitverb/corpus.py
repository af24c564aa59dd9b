"""Commit corpus ingestion, serialization, and filtering.

A corpus is a JSON-lines file, one object per commit with string fields
"id", "message", and "diff". Messages and diffs are stored verbatim at
ingest time; all cleanup happens in the filtering step so that filter
decisions stay reproducible from the raw corpus.
"""

import json
import subprocess
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusFormatError, IngestError, UsageError, VcsUnavailableError

DEFAULT_MAX_DIFF_BYTES = 1 << 20

_MERGE_ROLLBACK_TOKENS = frozenset({"merge", "rollback"})
# Whitespace permitted inside an otherwise printable-ASCII message.
_MESSAGE_WHITESPACE = frozenset("\t\n\r")


@dataclass(frozen=True)
class Commit:
    """One mined commit: stable id, full message, first-parent patch text."""

    id: str
    message: str
    diff: str


@dataclass(frozen=True)
class FilterPolicy:
    """Knobs for filter_corpus; defaults reproduce the standard cleanup."""

    max_diff_bytes: int = DEFAULT_MAX_DIFF_BYTES
    ascii_only_diff: bool = True
    english_only_message: bool = True
    drop_merge_rollback: bool = True

    def __post_init__(self):
        if self.max_diff_bytes <= 0:
            raise UsageError("max_diff_bytes must be positive")


@dataclass
class FilterTally:
    """Rejection counts per rule, in the order the rules are applied."""

    message: int = 0
    merge_rollback: int = 0
    diff: int = 0

    @property
    def total(self) -> int:
        return self.message + self.merge_rollback + self.diff


@dataclass(frozen=True)
class IngestResult:
    """Outcome of mining one repository."""

    written: int
    skipped: int


def is_merge_or_rollback(message: str) -> bool:
    """True when the first whitespace-delimited token is merge/rollback.

    The comparison is case-insensitive and ignores leading whitespace;
    only exact token equality counts ("Merged ..." does not match).
    """
    tokens = message.split(None, 1)
    if not tokens:
        return False
    return tokens[0].lower() in _MERGE_ROLLBACK_TOKENS


def is_valid_message(message: str) -> bool:
    """Message has visible content and uses only printable ASCII.

    Tab, newline, and carriage return are tolerated as whitespace; any
    other control character or any non-ASCII character disqualifies
    the message (a cheap stand-in for an English-text check).
    """
    has_content = False
    for ch in message:
        if "\x20" <= ch <= "\x7e":
            if ch != " ":
                has_content = True
        elif ch not in _MESSAGE_WHITESPACE:
            return False
    return has_content


def is_valid_diff(diff: str, policy: FilterPolicy) -> bool:
    """Diff fits the size cap and, when required, is pure ASCII."""
    encoded = diff.encode("utf-8")
    if len(encoded) > policy.max_diff_bytes:
        return False
    if policy.ascii_only_diff and any(b >= 128 for b in encoded):
        return False
    return True


def filter_corpus(
    commits: Iterable[Commit], policy: FilterPolicy | None = None
) -> tuple[list[Commit], FilterTally]:
    """Apply the cleanup rules, returning survivors plus per-rule tallies.

    Rules run in a fixed order (message validity, merge/rollback, diff
    validity) and each rejected commit is charged to the first rule it
    fails, so tallies are stable across runs.
    """
    policy = policy or FilterPolicy()
    kept: list[Commit] = []
    tally = FilterTally()
    for commit in commits:
        if policy.english_only_message:
            message_ok = is_valid_message(commit.message)
        else:
            message_ok = any(not ch.isspace() for ch in commit.message)
        if not message_ok:
            tally.message += 1
            continue
        if policy.drop_merge_rollback and is_merge_or_rollback(commit.message):
            tally.merge_rollback += 1
            continue
        if not is_valid_diff(commit.diff, policy):
            tally.diff += 1
            continue
        kept.append(commit)
    return kept, tally


def read_corpus(path) -> Iterator[Commit]:
    """Yield commits from a JSON-lines corpus file in file order.

    Blank lines are skipped; unknown extra fields are ignored so labeled
    files can be read as plain corpora. Any malformed record raises
    CorpusFormatError carrying the 1-based line number.
    """
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            record = _parse_record(path, lineno, line)
            commit = Commit(record["id"], record["message"], record["diff"])
            if commit.id in seen:
                raise CorpusFormatError(path, lineno, f"duplicate id {commit.id!r}")
            seen.add(commit.id)
            yield commit


def _parse_record(path, lineno: int, line: str) -> dict:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(path, lineno, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(record, dict):
        raise CorpusFormatError(path, lineno, "record is not a JSON object")
    for field in ("id", "message", "diff"):
        if field not in record:
            raise CorpusFormatError(path, lineno, f"missing field {field!r}")
        if not isinstance(record[field], str):
            raise CorpusFormatError(path, lineno, f"field {field!r} is not a string")
    if not record["id"]:
        raise CorpusFormatError(path, lineno, "empty id")
    return record


def write_corpus(commits: Iterable[Commit], path) -> int:
    """Write commits as JSON lines; returns the record count."""
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for commit in commits:
            record = {"id": commit.id, "message": commit.message, "diff": commit.diff}
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            handle.write("\n")
            count += 1
    return count


def _git(repo: Path, *args: str) -> bytes:
    try:
        proc = subprocess.run(
            ["git", "-C", str(repo), *args],
            capture_output=True,
            check=False,
        )
    except FileNotFoundError as exc:
        raise VcsUnavailableError("git executable not found") from exc
    if proc.returncode != 0:
        detail = proc.stderr.decode("utf-8", errors="replace").strip()
        raise RuntimeError(f"git {args[0]} failed: {detail}")
    return proc.stdout


def _commit_patch(repo: Path, sha: str) -> str:
    """First-parent patch for one commit; root commits diff the empty tree."""
    out = _git(repo, "diff-tree", "--no-commit-id", "--root", "-p", "--no-color", sha)
    return out.decode("utf-8", errors="replace")


def _commit_message(repo: Path, sha: str) -> str:
    out = _git(repo, "log", "-1", "--format=%B", sha)
    return out.decode("utf-8", errors="replace")


def ingest_repo(repo_path, output_path) -> IngestResult:
    """Mine a git repository into a corpus file.

    Walks first-parent history oldest-first and writes one record per
    non-merge commit. Commits whose patch cannot be produced are skipped
    and counted; an empty repository yields an empty corpus file.
    """
    repo = Path(repo_path)
    try:
        _git(repo, "rev-parse", "--git-dir")
    except VcsUnavailableError:
        raise
    except RuntimeError as exc:
        raise IngestError(f"not a readable git repository: {repo}") from exc

    try:
        _git(repo, "rev-parse", "--verify", "HEAD")
    except RuntimeError:
        open(output_path, "w", encoding="utf-8").close()
        return IngestResult(written=0, skipped=0)

    listing = _git(repo, "rev-list", "--first-parent", "--parents", "--reverse", "HEAD")
    written = 0
    skipped = 0
    with open(output_path, "w", encoding="utf-8") as handle:
        for line in listing.decode("ascii").splitlines():
            parts = line.split()
            if not parts:
                continue
            sha, parents = parts[0], parts[1:]
            if len(parents) > 1:
                continue
            try:
                diff = _commit_patch(repo, sha)
            except RuntimeError:
                skipped += 1
                continue
            record = {"id": sha, "message": _commit_message(repo, sha), "diff": diff}
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            handle.write("\n")
            written += 1
    return IngestResult(written=written, skipped=skipped)
