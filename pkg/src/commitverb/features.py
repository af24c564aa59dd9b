"""Tf-idf featurization of diff text.

Diffs are reduced to lowercase identifier-ish tokens, a vocabulary with
smoothed idf weights is fit on training documents only, and each document
becomes a sparse tf-idf vector. Term frequency is normalized by the full
token count of the document, so out-of-vocabulary tokens still dilute the
weights of known ones.
"""

import math
import re
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import UsageError

# Identifier of the idf weighting written into model files; a loaded model
# must have been fit with the same formula.
IDF_FORMULA = "ln((1+N)/(1+df))+1"

_METADATA_PREFIXES = ("diff ", "index ", "+++", "---", "@@")
_TOKEN_RE = re.compile(r"[a-z0-9_]+")


def tokenize_diff(diff: str) -> list[str]:
    """Lowercase token stream of a patch, metadata lines dropped.

    Lines starting with "diff ", "index ", "+++", "---", or "@@" are
    skipped entirely; on the remaining lines every maximal run of
    [a-z0-9_] after lowercasing is one token, so '+'/'-' change markers
    and other punctuation act as separators.
    """
    tokens: list[str] = []
    for line in diff.split("\n"):
        if line.startswith(_METADATA_PREFIXES):
            continue
        tokens.extend(_TOKEN_RE.findall(line.lower()))
    return tokens


@dataclass(frozen=True)
class TermInfo:
    """Per-term vocabulary entry."""

    index: int
    document_frequency: int
    idf: float


@dataclass(frozen=True)
class Vocabulary:
    """Terms kept after the min_df cut, indexed in lexicographic order."""

    terms: dict[str, TermInfo]
    total_documents: int

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def sorted_terms(self) -> list[str]:
        """Terms in index order."""
        ordered: list[str] = [""] * len(self.terms)
        for term, info in self.terms.items():
            ordered[info.index] = term
        return ordered


def build_vocabulary(docs: Iterable[Sequence[str]], min_df: int = 2) -> Vocabulary:
    """Fit a vocabulary on tokenized documents.

    df counts documents containing a term (not occurrences); terms with
    df >= min_df survive and get idf = ln((1+N)/(1+df)) + 1. Indices
    follow lexicographic term order, so equal corpora yield identical
    vocabularies whatever the in-document token order.
    """
    if min_df < 1:
        raise UsageError("min_df must be at least 1")
    doc_list = [list(doc) for doc in docs]
    if not doc_list:
        raise UsageError("cannot build a vocabulary from zero documents")
    df: Counter[str] = Counter()
    for doc in doc_list:
        df.update(set(doc))
    n = len(doc_list)
    kept = sorted(term for term, count in df.items() if count >= min_df)
    terms = {
        term: TermInfo(
            index=i,
            document_frequency=df[term],
            idf=math.log((1 + n) / (1 + df[term])) + 1.0,
        )
        for i, term in enumerate(kept)
    }
    return Vocabulary(terms=terms, total_documents=n)


@dataclass(frozen=True)
class SparseVector:
    """Tf-idf weights as (index, weight) pairs, strictly increasing index."""

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self):
        previous = -1
        for index, weight in self.entries:
            if index <= previous:
                raise ValueError("vector indices must be strictly increasing")
            if weight <= 0.0:
                raise ValueError("vector weights must be positive")
            previous = index

    def __len__(self) -> int:
        return len(self.entries)

    def as_dict(self) -> dict[int, float]:
        return dict(self.entries)


def vectorize(tokens: Sequence[str], vocabulary: Vocabulary) -> SparseVector:
    """Tf-idf vector of one tokenized document.

    tf(t) = count(t) / len(tokens); unknown tokens contribute to the
    denominator but produce no entries. An empty token list yields the
    empty vector.
    """
    total = len(tokens)
    if total == 0:
        return SparseVector(())
    counts = Counter(tokens)
    entries = []
    for term, count in counts.items():
        info = vocabulary.terms.get(term)
        if info is not None:
            entries.append((info.index, (count / total) * info.idf))
    entries.sort()
    return SparseVector(tuple(entries))
