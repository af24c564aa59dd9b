"""commitverb: mine commit corpora, analyze message phrasing, and
classify diffs into a fixed taxonomy of verb groups."""

__version__ = "0.1.0"

from .classifier import (
    MODEL_FORMAT_VERSION,
    NBModel,
    Prediction,
    load_model,
    oversample,
    predict,
    save_model,
    train,
)
from .corpus import (
    Commit,
    FilterPolicy,
    FilterTally,
    IngestResult,
    filter_corpus,
    ingest_repo,
    is_merge_or_rollback,
    is_valid_diff,
    is_valid_message,
    read_corpus,
    write_corpus,
)
from .errors import (
    CommitVerbError,
    CorpusFormatError,
    IngestError,
    ModelFormatError,
    UsageError,
    VcsUnavailableError,
)
from .evaluation import ClassMetrics, EvaluationReport, evaluate, split
from .features import (
    IDF_FORMULA,
    SparseVector,
    Vocabulary,
    build_vocabulary,
    tokenize_diff,
    vectorize,
)
from .textanalysis import (
    CORE_LEMMAS,
    CorpusStats,
    SentenceSplit,
    VerbLexicon,
    VerbObjectPhrase,
    corpus_stats,
    extract_leading_verb_object,
    lemmatize_verb,
    load_lexicon,
    split_sentences,
)
from .verbgroups import (
    GROUP_COUNT,
    LabeledDiff,
    VerbGroupTable,
    builtin_table,
    label_commit,
    label_corpus,
    read_labeled,
    read_labeled_commits,
    write_labeled,
)
