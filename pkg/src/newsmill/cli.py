"""Command line interface.

Subcommands: ingest, build-reference, train-eurovoc, run, export, serve,
search.  Every subcommand takes --config pointing at a key=value config
file; see docs/config.md for the keys.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import Config, load_config
from .corpus import parse_feed, read_jsonl, write_jsonl
from .eurovoc import load_labeled_corpus, save_profiles, train_profiles
from .extract import build_reference, load_reference, save_reference
from .lexicon import Lexicon, load_gazetteer, load_suffix_table, load_title_lexicon
from .pipeline import Engine, run_pipeline
from .snapshot import export_snapshot
from .search import run_search
from .store import Store

logger = logging.getLogger(__name__)


def _load_config(args) -> Config:
    if args.config:
        return load_config(args.config)
    return Config()


def _open_store(config: Config) -> Store:
    Path(config.store_path).parent.mkdir(parents=True, exist_ok=True)
    return Store(config.store_path)


def _build_lexicon(config: Config) -> Lexicon:
    entries = load_gazetteer(config.gazetteer_path)
    suffixes = load_suffix_table(config.suffix_paths())
    titles = load_title_lexicon(config.title_paths())
    return Lexicon(entries, suffixes, config.languages, titles)


def cmd_ingest(args) -> int:
    """Parse feeds and partition normalized documents by date and language."""
    config = _load_config(args)
    docs_dir = Path(config.docs_dir)
    total, skipped = 0, 0
    buckets: dict[tuple[str, str], list] = {}
    for path in args.inputs:
        data = Path(path).read_bytes()
        parsed = parse_feed(data, args.format)
        for reason in parsed.skipped:
            logger.warning("%s: skipped %s", path, reason)
        skipped += len(parsed.skipped)
        for doc in parsed.documents:
            buckets.setdefault((doc.date, doc.language), []).append(doc)
            total += 1
    for (date, language), docs in sorted(buckets.items()):
        out_dir = docs_dir / date
        out_dir.mkdir(parents=True, exist_ok=True)
        out_path = out_dir / f"{language}.jsonl"
        existing = read_jsonl(out_path) if out_path.exists() else []
        merged = {d.doc_id: d for d in existing}
        merged.update({d.doc_id: d for d in docs})
        write_jsonl(out_path, sorted(merged.values(), key=lambda d: d.doc_id))
        print(f"{date}/{language}: {len(docs)} new, {len(merged)} total")
    print(f"ingested {total} documents, skipped {skipped} items")
    return 0


def cmd_build_reference(args) -> int:
    """Build one language's reference model from a JSONL corpus."""
    config = _load_config(args)
    parsed = parse_feed(Path(args.corpus).read_bytes(), "jsonl")
    for reason in parsed.skipped:
        logger.warning("%s: skipped %s", args.corpus, reason)
    docs = parsed.documents
    lexicon = _build_lexicon(config)
    model = build_reference(docs, args.lang, lexicon, config.stopword_top_n)
    out = Path(args.out) if args.out else Path(config.reference_path(args.lang))
    out.parent.mkdir(parents=True, exist_ok=True)
    save_reference(model, out)
    print(f"reference model for {args.lang}: {model.doc_count} docs, "
          f"{model.total_tokens} tokens, {len(model.word_counts)} words -> {out}")
    return 0


def cmd_train_eurovoc(args) -> int:
    """Train descriptor profiles from a labeled JSONL corpus."""
    config = _load_config(args)
    labeled = load_labeled_corpus(args.corpus)
    references = {}
    for language in config.languages:
        path = Path(config.reference_path(language))
        if path.exists():
            references[language] = load_reference(path)
    profiles = train_profiles(labeled, references, config.top_k_keywords)
    out = Path(args.out) if args.out else Path(config.profiles_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_profiles(profiles, out)
    print(f"trained {len(profiles.profiles)} profiles "
          f"({len(set(d for _, d in profiles.profiles))} descriptors) -> {out}")
    return 0


def cmd_run(args) -> int:
    """Run the full pipeline for one date."""
    config = _load_config(args)
    engine = Engine(config)
    languages = args.langs.split(",") if args.langs else None
    with _open_store(config) as store:
        report = run_pipeline(engine, store, args.date, languages)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return 0 if report.ok else 1


def cmd_export(args) -> int:
    """Export one date's snapshot files."""
    config = _load_config(args)
    out_dir = args.out or config.snapshot_dir
    with _open_store(config) as store:
        files = export_snapshot(store, args.date, out_dir)
    for f in files:
        print(f)
    return 0


def cmd_serve(args) -> int:
    """Serve the JSON API (and built explorer assets under /ui)."""
    import uvicorn

    from .api import create_app

    config = _load_config(args)
    store = Store(config.store_path)
    app = create_app(store, config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_search(args) -> int:
    """Query entities, keywords and countries from the command line."""
    config = _load_config(args)
    with _open_store(config) as store:
        result = run_search(store, args.query, config.search_threshold)
    print(json.dumps(result, indent=2, sort_keys=True, ensure_ascii=False))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="newsmill", description=__doc__)
    parser.add_argument("--config", help="path to key=value config file")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse feeds into normalized daily JSONL")
    p.add_argument("inputs", nargs="+", help="feed files")
    p.add_argument("--format", choices=("rss", "jsonl"), required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("build-reference", help="build a language reference model")
    p.add_argument("--corpus", required=True, help="JSONL corpus of normalized documents")
    p.add_argument("--lang", required=True)
    p.add_argument("--out", help="output TSV (default: reference_dir/<lang>.tsv)")
    p.set_defaults(func=cmd_build_reference)

    p = sub.add_parser("train-eurovoc", help="train descriptor profiles")
    p.add_argument("--corpus", required=True, help="labeled JSONL corpus")
    p.add_argument("--out", help="output TSV (default: profiles_path)")
    p.set_defaults(func=cmd_train_eurovoc)

    p = sub.add_parser("run", help="run the daily pipeline")
    p.add_argument("--date", required=True, help="YYYY-MM-DD")
    p.add_argument("--langs", help="comma-separated subset of configured languages")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("export", help="export a date's snapshot files")
    p.add_argument("--date", required=True)
    p.add_argument("--out", help="output directory (default: snapshot_dir)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the JSON API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("search", help="search entities, keywords and countries")
    p.add_argument("query")
    p.set_defaults(func=cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        logger.error("%s", exc)
        if args.verbose:
            raise
        return 2


if __name__ == "__main__":
    sys.exit(main())
