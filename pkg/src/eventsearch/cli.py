"""Command-line front door for the retrieval pipeline.

Each subcommand is a thin adapter over one library operation so that every
pipeline stage leaves an inspectable artifact on disk. Exit codes: 0 on
success, 1 on usage errors, 2 on data or format errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .corpus import MonthlyCorpus, format_month, ingest, parse_month, segment_by_month
from .embedding import TrainConfig, load_vectors, most_similar, save_vectors, train
from .errors import EventSearchError
from .evaluation import format_report, recall_increase
from .expansion import StopwordList, expand_query, format_expansion, seed_only_query
from .index import build_index, load_index, save_index
from .ranking import Bm25, TfIdf, format_results, retrieve

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract reserves 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _expansion_k(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 4:
        raise argparse.ArgumentTypeError(f"k must be in 1..4, got {text}")
    return value


def _open_unit_float(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must be strictly between 0 and 1, got {text}")
    return value


def _nonnegative_float(text: str) -> float:
    value = float(text)
    if value < 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _closed_unit_float(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {text}")
    return value


def _add_expansion_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=_expansion_k, default=4,
                        help="expansion candidates per seed term, 1..4 (default 4)")
    parser.add_argument("--min-sim", type=_open_unit_float, default=0.6,
                        help="similarity threshold, strict (default 0.6)")
    parser.add_argument("--stopwords", metavar="FILE",
                        help="stop word file, one lowercase word per line (default: built-in)")


def _add_scorer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scorer", choices=("tfidf", "bm25"), default="tfidf")
    parser.add_argument("--threshold", type=_nonnegative_float, default=0.0,
                        help="keep documents scoring strictly above this (default 0)")
    parser.add_argument("--bm25-k1", type=_positive_float, default=1.2)
    parser.add_argument("--bm25-b", type=_closed_unit_float, default=0.75)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eventsearch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("ingest", help="split a corpus file into per-month corpus files")
    p.add_argument("--input", required=True, help="TSV corpus: doc_id, date, category, title")
    p.add_argument("--out-dir", required=True, help="directory for YYYY-MM.tsv partitions")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="train embeddings for one month partition")
    p.add_argument("--input", required=True, help="TSV corpus file")
    p.add_argument("--month", help="YYYY-MM selector when the corpus spans several months")
    p.add_argument("--output", required=True, help="vectors file (word2vec text format)")
    p.add_argument("--dim", type=_positive_int, default=50)
    p.add_argument("--window", type=_positive_int, default=4)
    p.add_argument("--negatives", type=_positive_int, default=5)
    p.add_argument("--epochs", type=_positive_int, default=5)
    p.add_argument("--lr", type=_positive_float, default=0.025, help="initial learning rate")
    p.add_argument("--lr-final", type=_positive_float, default=1e-4)
    p.add_argument("--min-count", type=_positive_int, default=2)
    p.add_argument("--seed", type=int, default=42, help="RNG seed for reproducible training")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("neighbors", help="list nearest vocabulary terms for a word")
    p.add_argument("--model", required=True, help="vectors file")
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=_positive_int, default=4)
    p.add_argument("--min-sim", type=float, default=0.6)
    p.set_defaults(func=cmd_neighbors)

    p = sub.add_parser("expand", help="expand seed keywords into a weighted query")
    p.add_argument("--model", required=True, help="vectors file")
    p.add_argument("--seed", required=True, help="seed keywords, e.g. 'valentines day jewelry'")
    _add_expansion_flags(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("index", help="build an inverted index for one month partition")
    p.add_argument("--input", required=True, help="TSV corpus file")
    p.add_argument("--month", help="YYYY-MM selector when the corpus spans several months")
    p.add_argument("--output", required=True, help="index file")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", help="rank indexed documents against a (expanded) query")
    p.add_argument("--index", required=True, help="index file")
    p.add_argument("--seed", required=True, help="seed keywords")
    p.add_argument("--model", help="vectors file; omit to search with the seed terms only")
    p.add_argument("--limit", type=_positive_int, help="truncate the result list")
    _add_expansion_flags(p)
    _add_scorer_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval", help="report recall increase of expansion vs seed-only")
    p.add_argument("--index", required=True, help="index file")
    p.add_argument("--model", required=True, help="vectors file")
    p.add_argument("--seed", required=True, help="seed keywords")
    _add_expansion_flags(p)
    _add_scorer_flags(p)
    p.set_defaults(func=cmd_eval)
    return parser


def _read_documents(path: str):
    with open(path, encoding="utf-8") as handle:
        result = ingest(handle)
    for lineno, message in result.errors:
        log.warning("%s:%d: skipped: %s", path, lineno, message)
    if result.errors:
        log.warning("%s: skipped %d malformed line(s)", path, result.error_count)
    return result.documents


def _pick_partition(partitions: list[MonthlyCorpus], month_text: str | None) -> MonthlyCorpus:
    if not partitions:
        raise EventSearchError("corpus contains no documents")
    available = ", ".join(format_month(p.month_key) for p in partitions)
    if month_text is None:
        if len(partitions) > 1:
            raise EventSearchError(f"corpus spans several months ({available}); pass --month")
        return partitions[0]
    wanted = parse_month(month_text)
    for part in partitions:
        if part.month_key == wanted:
            return part
    raise EventSearchError(f"month {month_text} not in corpus (have: {available})")


def _stopwords(args) -> StopwordList | None:
    return StopwordList.from_file(args.stopwords) if args.stopwords else None


def _scorer(args):
    if args.scorer == "bm25":
        return Bm25(k1=args.bm25_k1, b=args.bm25_b)
    return TfIdf()


def cmd_ingest(args) -> int:
    documents = _read_documents(args.input)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for part in segment_by_month(documents):
        path = out_dir / f"{format_month(part.month_key)}.tsv"
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for doc in part.documents:
                handle.write(
                    f"{doc.doc_id}\t{doc.sold_date.isoformat()}\t{doc.category}\t{doc.title}\n"
                )
        print(f"{format_month(part.month_key)}\t{len(part)}\t{path}")
    return 0


def cmd_train(args) -> int:
    documents = _read_documents(args.input)
    part = _pick_partition(segment_by_month(documents), args.month)
    cfg = TrainConfig(
        dim=args.dim,
        window=args.window,
        negatives=args.negatives,
        epochs=args.epochs,
        lr_initial=args.lr,
        lr_final=args.lr_final,
        min_count=args.min_count,
        rng_seed=args.seed,
    )
    model = train(part, cfg)
    save_vectors(model, args.output)
    log.info(
        "trained %s: %d terms, dim %d, %d docs -> %s",
        format_month(part.month_key), len(model), model.dim, len(part), args.output,
    )
    return 0


def cmd_neighbors(args) -> int:
    model = load_vectors(args.model)
    for term, score in most_similar(model, args.word, args.k, args.min_sim):
        print(f"{term}\t{score:.6f}")
    return 0


def cmd_expand(args) -> int:
    model = load_vectors(args.model)
    query = expand_query([args.seed], model, _stopwords(args), k=args.k, min_sim=args.min_sim)
    print(format_expansion(query))
    return 0


def cmd_index(args) -> int:
    documents = _read_documents(args.input)
    part = _pick_partition(segment_by_month(documents), args.month)
    index = build_index(part)
    save_index(index, args.output)
    log.info(
        "indexed %s: %d docs, %d terms -> %s",
        format_month(part.month_key), index.doc_count, len(index.postings), args.output,
    )
    return 0


def cmd_search(args) -> int:
    index = load_index(args.index)
    if args.model:
        model = load_vectors(args.model)
        query = expand_query([args.seed], model, _stopwords(args), k=args.k, min_sim=args.min_sim)
    else:
        query = seed_only_query([args.seed], _stopwords(args), k=args.k, min_sim=args.min_sim)
    results = retrieve(index, query, _scorer(args), threshold=args.threshold, limit=args.limit)
    if results:
        print(format_results(results))
    return 0


def cmd_eval(args) -> int:
    index = load_index(args.index)
    model = load_vectors(args.model)
    report = recall_increase(
        index,
        [args.seed],
        model,
        _stopwords(args),
        k=args.k,
        min_sim=args.min_sim,
        threshold=args.threshold,
        scorer=_scorer(args),
    )
    print(format_report(report))
    return 0


def _setup_logging() -> None:
    # rebind to the current sys.stderr so repeated in-process calls behave
    root = logging.getLogger("eventsearch")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.INFO)
    root.propagate = False


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _setup_logging()
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"eventsearch: error: {exc}", file=sys.stderr)
        return 1
    except (EventSearchError, OSError) as exc:
        print(f"eventsearch: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
