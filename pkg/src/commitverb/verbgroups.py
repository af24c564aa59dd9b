"""Fixed verb-group taxonomy and supervised labeling of commit diffs.

Twenty common commit verbs collapse into fifteen semantic groups; a
commit is labeled by the group of the verb leading its message. Labels
drive classifier training, so the table is deliberately immutable.
"""

import json
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .corpus import Commit, _parse_record
from .errors import CorpusFormatError
from .textanalysis import (
    CORE_LEMMAS,
    VerbLexicon,
    extract_leading_verb_object,
    split_sentences,
)

GROUP_COUNT = 15

_GROUP_MEMBERS: dict[int, tuple[str, ...]] = {
    1: ("add", "create", "make", "implement"),
    2: ("fix",),
    3: ("remove",),
    4: ("update", "upgrade"),
    5: ("use",),
    6: ("move", "change"),
    7: ("prepare",),
    8: ("improve",),
    9: ("ignore",),
    10: ("handle",),
    11: ("rename",),
    12: ("allow",),
    13: ("set",),
    14: ("revert",),
    15: ("replace",),
}


@dataclass(frozen=True)
class VerbGroupTable:
    """Lemma -> group-id mapping with groups numbered 1..15."""

    groups: Mapping[str, int]

    def group_of(self, lemma: str) -> int | None:
        return self.groups.get(lemma)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.groups

    def __len__(self) -> int:
        return len(self.groups)

    def group_ids(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.groups.values())))


@dataclass(frozen=True)
class LabeledDiff:
    """A diff paired with its verb-group label."""

    commit_id: str
    diff: str
    label: int

    def __post_init__(self):
        if not 1 <= self.label <= GROUP_COUNT:
            raise ValueError(f"label {self.label} outside 1..{GROUP_COUNT}")


@lru_cache(maxsize=1)
def builtin_table() -> VerbGroupTable:
    """The canonical 20-lemma, 15-group table."""
    mapping = {
        lemma: gid for gid, members in _GROUP_MEMBERS.items() for lemma in members
    }
    assert frozenset(mapping) == CORE_LEMMAS
    return VerbGroupTable(MappingProxyType(mapping))


def label_commit(
    commit: Commit,
    table: VerbGroupTable | None = None,
    lexicon: VerbLexicon | None = None,
) -> LabeledDiff | None:
    """Label one commit by the leading verb of its first sentence.

    Returns None when no verb+object phrase is found or the verb falls
    outside the group table.
    """
    table = table or builtin_table()
    split = split_sentences(commit.message)
    if not split.sentences:
        return None
    phrase = extract_leading_verb_object(split.sentences[0], lexicon)
    if phrase is None:
        return None
    gid = table.group_of(phrase.verb_lemma)
    if gid is None:
        return None
    return LabeledDiff(commit.id, commit.diff, gid)


def label_corpus(
    commits: Iterable[Commit],
    table: VerbGroupTable | None = None,
    lexicon: VerbLexicon | None = None,
) -> tuple[list[LabeledDiff], dict[int, int]]:
    """Label every commit that yields a group; unlabeled ones are dropped.

    Returns the labeled diffs in input order plus per-group counts.
    """
    table = table or builtin_table()
    labeled: list[LabeledDiff] = []
    counts: dict[int, int] = {}
    for commit in commits:
        item = label_commit(commit, table, lexicon)
        if item is None:
            continue
        labeled.append(item)
        counts[item.label] = counts.get(item.label, 0) + 1
    return labeled, counts


def write_labeled(records: Iterable[tuple[Commit, int]], path) -> int:
    """Write commits plus integer "label" fields as JSON lines."""
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for commit, label in records:
            record = {
                "id": commit.id,
                "message": commit.message,
                "diff": commit.diff,
                "label": label,
            }
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            handle.write("\n")
            count += 1
    return count


def read_labeled_commits(path) -> Iterator[tuple[Commit, int]]:
    """Yield (commit, label) pairs from a labeled JSON-lines file."""
    seen: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            if not line.strip():
                continue
            record = _parse_record(path, lineno, line)
            label = record.get("label")
            if not isinstance(label, int) or isinstance(label, bool):
                raise CorpusFormatError(path, lineno, "missing or non-integer field 'label'")
            if not 1 <= label <= GROUP_COUNT:
                raise CorpusFormatError(path, lineno, f"label {label} outside 1..{GROUP_COUNT}")
            commit = Commit(record["id"], record["message"], record["diff"])
            if commit.id in seen:
                raise CorpusFormatError(path, lineno, f"duplicate id {commit.id!r}")
            seen.add(commit.id)
            yield commit, label


def read_labeled(path) -> list[LabeledDiff]:
    """Labeled diffs from a labeled file (messages are not retained)."""
    return [
        LabeledDiff(commit.id, commit.diff, label)
        for commit, label in read_labeled_commits(path)
    ]
