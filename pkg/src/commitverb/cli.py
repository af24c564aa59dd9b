"""Command line entry point for the corpus -> classifier pipeline.

Exit codes: 0 on success, 1 on usage errors, 2 on I/O or file-format
errors. Diagnostics go to stderr; data goes to files or stdout only.
Every source of randomness takes --seed and defaults to a fixed constant,
never the clock.
"""

import argparse
import json
import sys

from . import __version__
from .classifier import (
    MODEL_FORMAT_VERSION,
    load_model,
    oversample,
    predict,
    save_model,
    train,
)
from .corpus import FilterPolicy, filter_corpus, ingest_repo, read_corpus, write_corpus
from .errors import (
    CorpusFormatError,
    IngestError,
    ModelFormatError,
    UsageError,
    VcsUnavailableError,
)
from .evaluation import evaluate, split
from .features import build_vocabulary, tokenize_diff, vectorize
from .textanalysis import corpus_stats, load_lexicon
from .verbgroups import (
    builtin_table,
    label_commit,
    read_labeled_commits,
    write_labeled,
)

DEFAULT_SEED = 42


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad arguments; our contract reserves 2 for I/O."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="commitverb",
        description="Mine commit corpora, analyze message phrasing, and "
        "classify diffs into verb groups.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"commitverb {__version__} (model format {MODEL_FORMAT_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("ingest", help="mine a git repository into a corpus file")
    p.add_argument("--repo", required=True, help="path to the repository")
    p.add_argument("--out", required=True, help="corpus file to write")

    p = sub.add_parser("filter", help="drop unusable commits from a corpus")
    p.add_argument("--in", dest="input", required=True, help="corpus file to read")
    p.add_argument("--out", required=True, help="corpus file to write")
    p.add_argument(
        "--max-diff-bytes",
        type=int,
        default=FilterPolicy().max_diff_bytes,
        help="size cap on the UTF-8 encoded diff (default %(default)s)",
    )
    p.add_argument(
        "--keep-merges",
        action="store_true",
        help="keep commits whose message starts with merge/rollback",
    )
    p.add_argument(
        "--allow-non-ascii",
        action="store_true",
        help="skip the ASCII checks on both messages and diffs",
    )

    p = sub.add_parser("analyze", help="message statistics and histogram figures")
    p.add_argument("--in", dest="input", required=True, help="corpus file to read")
    p.add_argument("--report", required=True, help="JSON report to write")
    p.add_argument("--lexicon", help="verb lexicon file (default: bundled list)")
    p.add_argument(
        "--no-figures",
        action="store_true",
        help="skip rendering histogram PNGs next to the report",
    )

    p = sub.add_parser("label", help="label commits by their leading verb group")
    p.add_argument("--in", dest="input", required=True, help="corpus file to read")
    p.add_argument("--out", required=True, help="labeled file to write")

    p = sub.add_parser("train", help="fit the verb-group classifier on labeled diffs")
    p.add_argument("--in", dest="input", required=True, help="labeled file to read")
    p.add_argument("--model", required=True, help="model file to write")
    p.add_argument("--alpha", type=float, default=1.0, help="smoothing (default 1.0)")
    p.add_argument("--min-df", type=int, default=2, help="vocabulary cut (default 2)")
    p.add_argument(
        "--oversample",
        action="store_true",
        help="balance classes by seeded resampling before training",
    )
    p.add_argument(
        "--test-count",
        type=int,
        help="hold out this many records before training (requires --test-out)",
    )
    p.add_argument("--test-out", help="labeled file for the held-out records")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed")

    p = sub.add_parser("predict", help="classify corpus diffs with a trained model")
    p.add_argument("--model", required=True, help="model file to read")
    p.add_argument("--in", dest="input", required=True, help="corpus file to read")
    p.add_argument("--out", required=True, help="predictions file to write")

    p = sub.add_parser("evaluate", help="score a model against labeled diffs")
    p.add_argument("--model", required=True, help="model file to read")
    p.add_argument("--test", required=True, help="labeled file to score")
    p.add_argument("--report", required=True, help="JSON report to write")
    p.add_argument(
        "--no-figures",
        action="store_true",
        help="skip rendering the confusion-matrix PNG next to the report",
    )
    return parser


def _cmd_ingest(args) -> int:
    result = ingest_repo(args.repo, args.out)
    print(
        f"wrote {result.written} commits to {args.out}"
        + (f" ({result.skipped} skipped)" if result.skipped else ""),
        file=sys.stderr,
    )
    return 0


def _cmd_filter(args) -> int:
    policy = FilterPolicy(
        max_diff_bytes=args.max_diff_bytes,
        ascii_only_diff=not args.allow_non_ascii,
        english_only_message=not args.allow_non_ascii,
        drop_merge_rollback=not args.keep_merges,
    )
    commits = list(read_corpus(args.input))
    kept, tally = filter_corpus(commits, policy)
    write_corpus(kept, args.out)
    print(
        f"kept {len(kept)} of {len(commits)} commits "
        f"(rejected: message {tally.message}, "
        f"merge/rollback {tally.merge_rollback}, diff {tally.diff})",
        file=sys.stderr,
    )
    return 0


def _cmd_analyze(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    stats = corpus_stats(read_corpus(args.input), lexicon)
    with open(args.report, "w", encoding="utf-8") as handle:
        json.dump(stats.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")
    print(
        f"{stats.messages} messages, verb+object fraction "
        f"{stats.verb_object_fraction:.3f}; report in {args.report}",
        file=sys.stderr,
    )
    if not args.no_figures:
        from .plots import save_stats_figures

        for path in save_stats_figures(stats, args.report):
            print(f"figure {path}", file=sys.stderr)
    return 0


def _cmd_label(args) -> int:
    table = builtin_table()
    records = []
    counts: dict[int, int] = {}
    total = 0
    for commit in read_corpus(args.input):
        total += 1
        item = label_commit(commit, table)
        if item is None:
            continue
        records.append((commit, item.label))
        counts[item.label] = counts.get(item.label, 0) + 1
    write_labeled(records, args.out)
    print(f"labeled {len(records)} of {total} commits", file=sys.stderr)
    for gid in sorted(counts):
        print(f"  group {gid}: {counts[gid]}", file=sys.stderr)
    return 0


def _cmd_train(args) -> int:
    if (args.test_count is None) != (args.test_out is None):
        raise UsageError("--test-count and --test-out must be used together")
    records = list(read_labeled_commits(args.input))
    if args.test_count is not None:
        records, held_out = split(records, args.test_count, args.seed)
        write_labeled(held_out, args.test_out)
        print(f"held out {len(held_out)} records to {args.test_out}", file=sys.stderr)

    docs = [tokenize_diff(commit.diff) for commit, _ in records]
    vocabulary = build_vocabulary(docs, min_df=args.min_df)
    labeled_vectors = [
        (vectorize(doc, vocabulary), label)
        for doc, (_, label) in zip(docs, records)
    ]
    if args.oversample:
        before = len(labeled_vectors)
        labeled_vectors = oversample(labeled_vectors, args.seed)
        print(
            f"oversampled {before} -> {len(labeled_vectors)} training vectors",
            file=sys.stderr,
        )
    model = train(labeled_vectors, vocabulary, alpha=args.alpha)
    save_model(model, args.model)
    print(
        f"trained on {len(labeled_vectors)} vectors, "
        f"{len(vocabulary)} terms, {len(model.class_ids)} groups; "
        f"model in {args.model}",
        file=sys.stderr,
    )
    return 0


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    count = 0
    with open(args.out, "w", encoding="utf-8") as handle:
        for commit in read_corpus(args.input):
            vector = vectorize(tokenize_diff(commit.diff), model.vocabulary)
            result = predict(model, vector)
            record = {
                "id": commit.id,
                "label": result.label,
                "log_scores": {str(g): s for g, s in result.log_scores.items()},
            }
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            handle.write("\n")
            count += 1
    print(f"predicted {count} commits to {args.out}", file=sys.stderr)
    return 0


def _cmd_evaluate(args) -> int:
    model = load_model(args.model)
    truth = []
    predicted = []
    for commit, label in read_labeled_commits(args.test):
        vector = vectorize(tokenize_diff(commit.diff), model.vocabulary)
        truth.append(label)
        predicted.append(predict(model, vector).label)
    report = evaluate(truth, predicted)
    with open(args.report, "w", encoding="utf-8") as handle:
        json.dump(report.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")
    print(report.format_table())
    print(f"report in {args.report}", file=sys.stderr)
    if not args.no_figures:
        from .plots import save_confusion_figure

        path = save_confusion_figure(report, args.report)
        print(f"figure {path}", file=sys.stderr)
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "filter": _cmd_filter,
    "analyze": _cmd_analyze,
    "label": _cmd_label,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "evaluate": _cmd_evaluate,
}


def run(args: argparse.Namespace) -> int:
    """Dispatch one parsed invocation; raises on failure."""
    if args.command is None:
        raise UsageError("commitverb: a subcommand is required (see --help)")
    return _COMMANDS[args.command](args)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            print("error: a subcommand is required", file=sys.stderr)
            return 1
        return run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CorpusFormatError, ModelFormatError, IngestError, VcsUnavailableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
