"""Multinomial Naive Bayes over fractional tf-idf weights, plus model
persistence and random oversampling for skewed label distributions.

Training treats each vector entry as a fractional event count: per-class
term likelihoods are Laplace-smoothed ratios of summed tf-idf mass, so
exp(likelihoods) sums to one per class by construction.
"""

import json
import math
import random
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import ModelFormatError, UsageError
from .features import IDF_FORMULA, SparseVector, TermInfo, Vocabulary

MODEL_FORMAT_VERSION = "1.0"

LabeledVector = tuple[SparseVector, int]


@dataclass
class NBModel:
    """A trained classifier: priors, per-term log-likelihoods, vocabulary."""

    alpha: float
    vocabulary: Vocabulary
    class_ids: tuple[int, ...]
    log_prior: dict[int, float]
    log_likelihood: dict[int, np.ndarray]


@dataclass(frozen=True)
class Prediction:
    """Chosen class plus the log-score of every candidate."""

    label: int
    log_scores: dict[int, float]


def train(
    labeled_vectors: Iterable[LabeledVector],
    vocabulary: Vocabulary,
    alpha: float = 1.0,
) -> NBModel:
    """Fit the classifier on (vector, group-id) pairs.

    alpha is the Laplace smoothing mass added per term; priors are class
    document shares. Classes absent from the training data are absent
    from the model.
    """
    if alpha <= 0:
        raise UsageError("alpha must be positive")
    items = list(labeled_vectors)
    doc_counts: Counter[int] = Counter(label for _, label in items)
    if len(doc_counts) < 2:
        raise UsageError("training needs at least two distinct labels")

    size = len(vocabulary)
    class_ids = tuple(sorted(doc_counts))
    weight_sums = {gid: np.zeros(size) for gid in class_ids}
    for vector, label in items:
        sums = weight_sums[label]
        for index, weight in vector.entries:
            if index >= size:
                raise UsageError(f"vector index {index} outside vocabulary of size {size}")
            sums[index] += weight

    total = len(items)
    log_prior = {gid: math.log(doc_counts[gid] / total) for gid in class_ids}
    log_likelihood = {}
    for gid in class_ids:
        sums = weight_sums[gid]
        if size == 0:
            log_likelihood[gid] = np.zeros(0)
            continue
        log_likelihood[gid] = np.log(sums + alpha) - math.log(sums.sum() + alpha * size)
    return NBModel(
        alpha=alpha,
        vocabulary=vocabulary,
        class_ids=class_ids,
        log_prior=log_prior,
        log_likelihood=log_likelihood,
    )


def predict(model: NBModel, vector: SparseVector) -> Prediction:
    """Score one vector against every class; ties pick the smallest id.

    An empty vector reduces to the priors.
    """
    size = len(model.vocabulary)
    for index, _ in vector.entries:
        if index >= size:
            raise UsageError(f"vector index {index} outside vocabulary of size {size}")
    log_scores: dict[int, float] = {}
    best_label = model.class_ids[0]
    best_score = -math.inf
    for gid in model.class_ids:
        likelihood = model.log_likelihood[gid]
        score = model.log_prior[gid]
        for index, weight in vector.entries:
            score += weight * likelihood[index]
        score = float(score)
        log_scores[gid] = score
        if score > best_score:
            best_score = score
            best_label = gid
    return Prediction(label=best_label, log_scores=log_scores)


def oversample(labeled_vectors: Iterable[LabeledVector], seed: int) -> list[LabeledVector]:
    """Pad minority classes up to the majority count by resampling.

    Originals are kept in input order; padding duplicates follow, grouped
    by ascending class id, drawn uniformly with replacement from that
    class's originals. Deterministic for a given seed; balanced input
    comes back unchanged.
    """
    items = list(labeled_vectors)
    if not items:
        return []
    by_class: dict[int, list[LabeledVector]] = {}
    for item in items:
        by_class.setdefault(item[1], []).append(item)
    majority = max(len(group) for group in by_class.values())
    rng = random.Random(seed)
    out = list(items)
    for gid in sorted(by_class):
        group = by_class[gid]
        for _ in range(majority - len(group)):
            out.append(rng.choice(group))
    return out


def save_model(model: NBModel, path) -> None:
    """Write the model as one JSON document.

    The layout is versioned and fully ordered, so identical models save
    to byte-identical files.
    """
    vocab = model.vocabulary
    terms = vocab.sorted_terms()
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "idf_formula": IDF_FORMULA,
        "alpha": model.alpha,
        "total_documents": vocab.total_documents,
        "vocabulary": [
            [term, vocab.terms[term].document_frequency, vocab.terms[term].idf]
            for term in terms
        ],
        "class_ids": list(model.class_ids),
        "log_prior": {str(gid): model.log_prior[gid] for gid in model.class_ids},
        "log_likelihood": {
            str(gid): [float(x) for x in model.log_likelihood[gid]]
            for gid in model.class_ids
        },
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, sort_keys=True, separators=(",", ":"))
        handle.write("\n")


def _require(doc: dict, field: str, kind) -> object:
    if field not in doc:
        raise ModelFormatError(field, "missing")
    value = doc[field]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ModelFormatError(field, "not a number")
        return float(value)
    if not isinstance(value, kind):
        raise ModelFormatError(field, f"expected {kind.__name__}")
    return value


def load_model(path) -> NBModel:
    """Read a model file back; exact counts and bit-identical reals.

    Corrupt or missing fields raise ModelFormatError naming the field; a
    file written by a newer major format version is refused.
    """
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ModelFormatError("document", f"invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("document", "not a JSON object")

    version = _require(doc, "format_version", str)
    major = version.split(".", 1)[0]
    if not major.isdigit() or int(major) != int(MODEL_FORMAT_VERSION.split(".", 1)[0]):
        raise ModelFormatError(
            "format_version",
            f"{version!r} not readable by format {MODEL_FORMAT_VERSION}",
        )
    formula = _require(doc, "idf_formula", str)
    if formula != IDF_FORMULA:
        raise ModelFormatError("idf_formula", f"unknown weighting {formula!r}")
    alpha = _require(doc, "alpha", float)
    if alpha <= 0:
        raise ModelFormatError("alpha", "must be positive")
    total_documents = _require(doc, "total_documents", int)

    raw_vocab = _require(doc, "vocabulary", list)
    terms: dict[str, TermInfo] = {}
    for index, entry in enumerate(raw_vocab):
        if (
            not isinstance(entry, list)
            or len(entry) != 3
            or not isinstance(entry[0], str)
            or not isinstance(entry[1], int)
            or isinstance(entry[2], bool)
            or not isinstance(entry[2], (int, float))
        ):
            raise ModelFormatError("vocabulary", f"bad term entry at index {index}")
        if entry[0] in terms:
            raise ModelFormatError("vocabulary", f"duplicate term {entry[0]!r}")
        terms[entry[0]] = TermInfo(index, entry[1], float(entry[2]))
    vocabulary = Vocabulary(terms=terms, total_documents=total_documents)

    raw_ids = _require(doc, "class_ids", list)
    if not raw_ids or not all(
        isinstance(gid, int) and not isinstance(gid, bool) for gid in raw_ids
    ):
        raise ModelFormatError("class_ids", "expected a non-empty list of integers")
    class_ids = tuple(raw_ids)

    raw_prior = _require(doc, "log_prior", dict)
    raw_likelihood = _require(doc, "log_likelihood", dict)
    log_prior: dict[int, float] = {}
    log_likelihood: dict[int, np.ndarray] = {}
    for gid in class_ids:
        key = str(gid)
        if key not in raw_prior:
            raise ModelFormatError("log_prior", f"missing class {gid}")
        log_prior[gid] = float(raw_prior[key])
        if key not in raw_likelihood:
            raise ModelFormatError("log_likelihood", f"missing class {gid}")
        row = raw_likelihood[key]
        if not isinstance(row, list) or len(row) != len(terms):
            raise ModelFormatError(
                "log_likelihood", f"class {gid} row length != vocabulary size"
            )
        log_likelihood[gid] = np.array(row, dtype=float)
    return NBModel(
        alpha=alpha,
        vocabulary=vocabulary,
        class_ids=class_ids,
        log_prior=log_prior,
        log_likelihood=log_likelihood,
    )
