"""Command-line front end.

Subcommands: ``index`` (build an index and print its statistics), ``count``
(answer one query), ``analyze`` (full study report), ``scan`` (rank candidate
exemplars for double overextension), ``fetch`` (record counts into a fixture).

Exit codes: 0 success, 1 usage error, 2 provider/data error, 3 internal
error. Diagnostics go to stderr; data goes to stdout.
"""

import argparse
import sys
from pathlib import Path

from meaningbound import __version__
from meaningbound.analysis import (
    ConceptTriple,
    StudyConfig,
    StudyError,
    guppy_scan,
    run_study,
)
from meaningbound.corpus import load_corpus
from meaningbound.errors import MeaningBoundError, QuerySyntaxError
from meaningbound.providers import (
    DEFAULT_TOTAL_PAGES,
    CountCache,
    FixtureProvider,
    LocalIndexProvider,
    ProviderConfig,
    WebProvider,
    record_fixture,
)
from meaningbound.query import TermPattern, parse_query
from meaningbound.render import render_csv, render_json, render_scan, render_table

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; route through UsageError to exit 1.
    def error(self, message):
        raise UsageError(message)


def _add_provider_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--corpus", metavar="PATH", help="local corpus (JSONL file or text directory)")
    group.add_argument("--fixture", metavar="PATH", help="recorded fixture file to replay")
    group.add_argument("--web", metavar="CONFIG", help="web provider config (JSON file)")
    parser.add_argument(
        "--corpus-format",
        choices=["auto", "jsonl", "dir"],
        default="auto",
        help="corpus input layout (default: auto-detect by path type)",
    )
    parser.add_argument("--cache", metavar="PATH", help="count cache journal (web provider)")
    parser.add_argument(
        "--force-refresh",
        action="store_true",
        help="bypass the cache on web lookups",
    )


def _make_provider(args):
    if args.corpus:
        return LocalIndexProvider(load_corpus(args.corpus, args.corpus_format))
    if args.fixture:
        return FixtureProvider.from_path(args.fixture)
    config = ProviderConfig.from_path(args.web)
    cache = CountCache(args.cache) if args.cache else None
    return WebProvider(config, cache=cache)


def _resolve_n_www(args, provider) -> int:
    if args.n_www is not None:
        return args.n_www
    advertised = getattr(provider, "total_pages", None)
    if advertised:
        return advertised
    return DEFAULT_TOTAL_PAGES


def _parse_exemplars(raw: str) -> list[TermPattern]:
    parts = [chunk.strip() for chunk in raw.split(",")]
    return [TermPattern.parse(chunk) for chunk in parts if chunk]


def _triple_from_args(args) -> ConceptTriple:
    return ConceptTriple.from_texts(args.first, args.second, args.conjunction)


def _add_study_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--first", required=True, help="first concept (word or phrase)")
    parser.add_argument("--second", required=True, help="second concept (word or phrase)")
    parser.add_argument(
        "--conjunction",
        help='conjunction pattern (default: the exact phrase "FIRST SECOND")',
    )
    parser.add_argument(
        "--n-www",
        type=int,
        default=None,
        help="total page count behind absolute weights "
        "(default: provider total if known, else 55000000000)",
    )
    parser.add_argument("--eps", type=float, default=0.0, help="neutral band around M = 1")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="meaningbound", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_index = sub.add_parser("index", help="build a corpus index and print statistics")
    p_index.add_argument("--corpus", metavar="PATH", required=True)
    p_index.add_argument(
        "--corpus-format", choices=["auto", "jsonl", "dir"], default="auto"
    )

    p_count = sub.add_parser("count", help="answer one count query")
    _add_provider_flags(p_count)
    p_count.add_argument("--query", required=True, help="canonical query syntax")

    p_analyze = sub.add_parser("analyze", help="run a full study and render the report")
    _add_provider_flags(p_analyze)
    _add_study_flags(p_analyze)
    p_analyze.add_argument(
        "--exemplars",
        required=True,
        help="comma-separated exemplar words ('' for totals only)",
    )
    p_analyze.add_argument(
        "--format", choices=["table", "csv", "json"], default="table"
    )

    p_scan = sub.add_parser("scan", help="rank candidate exemplars for double overextension")
    _add_provider_flags(p_scan)
    _add_study_flags(p_scan)
    group = p_scan.add_mutually_exclusive_group(required=True)
    group.add_argument("--candidates", help="comma-separated candidate words")
    group.add_argument("--candidates-file", metavar="PATH", help="one candidate per line")

    p_fetch = sub.add_parser("fetch", help="record counts into a replayable fixture")
    _add_provider_flags(p_fetch)
    p_fetch.add_argument("--queries-file", metavar="PATH", required=True,
                         help="one canonical query per line ('#' comments allowed)")
    p_fetch.add_argument("--out", metavar="PATH", required=True)

    return parser


def cmd_index(args) -> int:
    index = load_corpus(args.corpus, args.corpus_format)
    print(f"documents  {index.total_docs}")
    print(f"vocabulary {index.vocabulary_size}")
    print(f"tokens     {index.total_tokens}")
    return EXIT_OK


def cmd_count(args) -> int:
    provider = _make_provider(args)
    query = parse_query(args.query)
    if isinstance(provider, WebProvider):
        record = provider.get_count(query, force_refresh=args.force_refresh)
    else:
        record = provider.get_count(query)
    print(record.count)
    return EXIT_OK


def _study_pieces(args, provider):
    triple = _triple_from_args(args)
    config = StudyConfig(n_www=_resolve_n_www(args, provider), eps=args.eps)
    return triple, config


def cmd_analyze(args) -> int:
    provider = _make_provider(args)
    triple, config = _study_pieces(args, provider)
    exemplars = _parse_exemplars(args.exemplars)
    report = run_study(triple, exemplars, provider, config)
    renderer = {"table": render_table, "csv": render_csv, "json": render_json}
    sys.stdout.write(renderer[args.format](report))
    return EXIT_OK


def cmd_scan(args) -> int:
    provider = _make_provider(args)
    triple, config = _study_pieces(args, provider)
    if args.candidates_file:
        lines = Path(args.candidates_file).read_text("utf-8").splitlines()
        candidates = [
            TermPattern.parse(line) for line in lines if line.strip()
        ]
    else:
        candidates = _parse_exemplars(args.candidates)
    entries = guppy_scan(triple, candidates, provider, config)
    sys.stdout.write(render_scan(entries))
    return EXIT_OK


def cmd_fetch(args) -> int:
    provider = _make_provider(args)
    lines = Path(args.queries_file).read_text("utf-8").splitlines()
    queries = [
        parse_query(line)
        for line in lines
        if line.strip() and not line.lstrip().startswith("#")
    ]
    records = record_fixture(
        provider, queries, args.out, force_refresh=args.force_refresh
    )
    print(f"wrote {len(records)} record(s) to {args.out}", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "index": cmd_index,
    "count": cmd_count,
    "analyze": cmd_analyze,
    "scan": cmd_scan,
    "fetch": cmd_fetch,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuerySyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StudyError as exc:
        for failure in exc.failures:
            print(f"error: {failure}", file=sys.stderr)
        return EXIT_DATA
    except (MeaningBoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
