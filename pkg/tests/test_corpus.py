"""Corpus predicates, filtering, serialization, and repository mining."""

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commitverb import corpus as corpus_mod
from commitverb.corpus import (
    Commit,
    FilterPolicy,
    filter_corpus,
    ingest_repo,
    is_merge_or_rollback,
    is_valid_diff,
    is_valid_message,
    read_corpus,
    write_corpus,
)
from commitverb.errors import CorpusFormatError, IngestError, UsageError, VcsUnavailableError

from conftest import git, make_commit


def commit(message="Fix bug", diff="+ patched line\n", cid="c1"):
    return Commit(cid, message, diff)


# ---------------------------------------------------------------- predicates

def test_merge_rollback_first_token():
    assert is_merge_or_rollback("Merge branch 'master' into dev")
    assert is_merge_or_rollback("merge pull request #7")
    assert is_merge_or_rollback("  rollback bad deploy")
    assert is_merge_or_rollback("MERGE\nsecond line")
    assert not is_merge_or_rollback("Merged PR")
    assert not is_merge_or_rollback("Fix merge conflict handling")
    assert not is_merge_or_rollback("")
    assert not is_merge_or_rollback("   ")


@given(st.sampled_from(["merge", "rollback"]), st.text(alphabet="abcDEF ", max_size=20))
def test_merge_rollback_case_insensitive(token, rest):
    mixed = token.upper()[:1] + token[1:]
    assert is_merge_or_rollback(f"{mixed} {rest}")


def test_valid_message():
    assert is_valid_message("Fix parser bug")
    assert is_valid_message("multi\nline\tmessage\r\n")
    assert is_valid_message("12345")
    assert is_valid_message("!?#")
    assert not is_valid_message("")
    assert not is_valid_message("   \n\t")
    assert not is_valid_message("fix überflow")
    assert not is_valid_message("ok\x00nul")
    assert not is_valid_message("bell\x07")


def test_valid_diff_size_cap():
    policy = FilterPolicy(max_diff_bytes=10)
    assert is_valid_diff("a" * 10, policy)
    assert not is_valid_diff("a" * 11, policy)
    assert is_valid_diff("", policy)


def test_valid_diff_ascii():
    policy = FilterPolicy()
    assert is_valid_diff("+ plain change\n", policy)
    # u-umlaut encodes through 0xC3
    assert not is_valid_diff("+ ümlaut\n", policy)
    relaxed = FilterPolicy(ascii_only_diff=False)
    assert is_valid_diff("+ ümlaut\n", relaxed)


def test_diff_size_counts_utf8_bytes():
    policy = FilterPolicy(max_diff_bytes=2, ascii_only_diff=False)
    assert not is_valid_diff("üü", policy)  # 4 bytes in UTF-8
    assert is_valid_diff("ab", policy)


def test_policy_rejects_bad_cap():
    with pytest.raises(UsageError):
        FilterPolicy(max_diff_bytes=0)


# ------------------------------------------------------------------ filtering

def test_filter_order_first_failing_rule_wins():
    # invalid message AND oversized diff: charged to the message rule
    bad_both = commit(message="ü", diff="a" * 20, cid="b1")
    merge_big = commit(message="Merge branch", diff="a" * 20, cid="b2")
    policy = FilterPolicy(max_diff_bytes=10)
    kept, tally = filter_corpus([bad_both, merge_big], policy)
    assert kept == []
    assert (tally.message, tally.merge_rollback, tally.diff) == (1, 1, 0)


def test_filter_tallies_and_order():
    commits = [
        commit(cid="a", message="Fix bug"),
        commit(cid="b", message=""),
        commit(cid="c", message="rollback release"),
        commit(cid="d", diff="x" * 100),
        commit(cid="e", message="Add tests"),
    ]
    kept, tally = filter_corpus(commits, FilterPolicy(max_diff_bytes=50))
    assert [c.id for c in kept] == ["a", "e"]
    assert (tally.message, tally.merge_rollback, tally.diff) == (1, 1, 1)
    assert len(kept) + tally.total == len(commits)


def test_filter_policy_toggles():
    commits = [
        commit(cid="m", message="Merge branch 'x'"),
        commit(cid="u", message="fix überflow", diff="+ ümlaut\n"),
    ]
    kept, _ = filter_corpus(commits, FilterPolicy(drop_merge_rollback=False))
    assert [c.id for c in kept] == ["m"]
    kept, _ = filter_corpus(
        commits,
        FilterPolicy(ascii_only_diff=False, english_only_message=False),
    )
    assert [c.id for c in kept] == ["u"]


def test_filter_blank_message_rejected_even_without_english_check():
    kept, tally = filter_corpus(
        [commit(cid="w", message=" \n ")],
        FilterPolicy(english_only_message=False),
    )
    assert kept == []
    assert tally.message == 1


corpora = st.lists(
    st.builds(
        Commit,
        id=st.uuids().map(str),
        message=st.text(max_size=40),
        diff=st.text(max_size=60),
    ),
    max_size=20,
)


@given(corpora)
def test_filter_idempotent_and_tally_sums(commits):
    kept, tally = filter_corpus(commits)
    assert len(kept) + tally.total == len(commits)
    again, second_tally = filter_corpus(kept)
    assert again == kept
    assert second_tally.total == 0


@given(corpora, st.integers(min_value=1, max_value=50), st.integers(min_value=1, max_value=50))
def test_filter_monotone_in_diff_cap(commits, cap_a, cap_b):
    small, large = sorted([cap_a, cap_b])
    kept_small, _ = filter_corpus(commits, FilterPolicy(max_diff_bytes=small))
    kept_large, _ = filter_corpus(commits, FilterPolicy(max_diff_bytes=large))
    assert {c.id for c in kept_small} <= {c.id for c in kept_large}


# -------------------------------------------------------------- serialization

def test_corpus_roundtrip(tmp_path):
    commits = [
        commit(cid="one", message="Fix\nmulti line", diff="+ a\n- b\n"),
        commit(cid="two", message="Add thing", diff=""),
    ]
    path = tmp_path / "corpus.jsonl"
    assert write_corpus(commits, path) == 2
    assert list(read_corpus(path)) == commits


def test_read_corpus_reports_line_numbers(tmp_path):
    path = tmp_path / "bad.jsonl"
    good = json.dumps({"id": "a", "message": "m", "diff": "d"})
    path.write_text(good + "\nnot json\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError) as err:
        list(read_corpus(path))
    assert err.value.line == 2


@pytest.mark.parametrize(
    "record, reason_part",
    [
        ('["list"]', "not a JSON object"),
        ('{"id": "a", "message": "m"}', "missing field 'diff'"),
        ('{"id": "a", "message": 3, "diff": "d"}', "not a string"),
        ('{"id": "", "message": "m", "diff": "d"}', "empty id"),
    ],
)
def test_read_corpus_malformed_records(tmp_path, record, reason_part):
    path = tmp_path / "bad.jsonl"
    path.write_text(record + "\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError) as err:
        list(read_corpus(path))
    assert reason_part in str(err.value)
    assert err.value.line == 1


def test_read_corpus_duplicate_id(tmp_path):
    path = tmp_path / "dup.jsonl"
    line = json.dumps({"id": "same", "message": "m", "diff": "d"})
    path.write_text(line + "\n" + line + "\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError) as err:
        list(read_corpus(path))
    assert err.value.line == 2
    assert "duplicate" in str(err.value)


def test_read_corpus_skips_blank_lines_and_extra_fields(tmp_path):
    path = tmp_path / "c.jsonl"
    record = {"id": "a", "message": "m", "diff": "d", "label": 3}
    path.write_text("\n" + json.dumps(record) + "\n\n", encoding="utf-8")
    assert list(read_corpus(path)) == [Commit("a", "m", "d")]


# ------------------------------------------------------------------ ingestion

def test_ingest_linear_repo(linear_repo, tmp_path):
    out = tmp_path / "mined.jsonl"
    result = ingest_repo(linear_repo, out)
    assert (result.written, result.skipped) == (3, 0)
    commits = list(read_corpus(out))
    assert [c.message.strip() for c in commits] == [
        "Add alpha file",
        "Update alpha contents",
        "Add beta file",
    ]
    # root commit diffs against the empty tree
    assert "+first version" in commits[0].diff
    assert "-first version" in commits[1].diff
    assert "+second version" in commits[1].diff


def test_ingest_skips_merge_commits(tmp_path):
    repo = tmp_path / "repo"
    repo.mkdir()
    git(repo, "init", "-q", "-b", "main")
    make_commit(repo, "base.txt", "base\n", "Add base")
    git(repo, "checkout", "-q", "-b", "feature")
    make_commit(repo, "feat.txt", "feature\n", "Add feature work")
    git(repo, "checkout", "-q", "main")
    make_commit(repo, "main.txt", "mainline\n", "Add mainline work")
    git(repo, "merge", "-q", "--no-ff", "-m", "Merge feature into main", "feature")
    out = tmp_path / "mined.jsonl"
    result = ingest_repo(repo, out)
    messages = [c.message.strip() for c in read_corpus(out)]
    assert result.written == 2
    assert "Merge feature into main" not in messages
    # the feature branch commit is not on the first-parent chain
    assert messages == ["Add base", "Add mainline work"]


def test_ingest_empty_repo(tmp_path):
    repo = tmp_path / "empty"
    repo.mkdir()
    git(repo, "init", "-q", "-b", "main")
    out = tmp_path / "mined.jsonl"
    result = ingest_repo(repo, out)
    assert (result.written, result.skipped) == (0, 0)
    assert out.read_text(encoding="utf-8") == ""


def test_ingest_rejects_non_repo(tmp_path):
    plain = tmp_path / "plain"
    plain.mkdir()
    with pytest.raises(IngestError) as err:
        ingest_repo(plain, tmp_path / "out.jsonl")
    assert str(plain) in str(err.value)


def test_ingest_counts_undiffable_commits(linear_repo, tmp_path, monkeypatch):
    real = corpus_mod._commit_patch
    listing = git(linear_repo, "rev-list", "--first-parent", "HEAD").split()
    poisoned = listing[0]  # newest commit

    def flaky(repo, sha):
        if sha == poisoned:
            raise RuntimeError("diff generation failed")
        return real(repo, sha)

    monkeypatch.setattr(corpus_mod, "_commit_patch", flaky)
    result = ingest_repo(linear_repo, tmp_path / "out.jsonl")
    assert (result.written, result.skipped) == (2, 1)


def test_ingest_reports_missing_git(tmp_path, monkeypatch):
    def no_git(*args, **kwargs):
        raise FileNotFoundError("git")

    monkeypatch.setattr(corpus_mod.subprocess, "run", no_git)
    with pytest.raises(VcsUnavailableError):
        ingest_repo(tmp_path, tmp_path / "out.jsonl")
