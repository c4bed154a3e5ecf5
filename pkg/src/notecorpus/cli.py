"""Command-line entry points: ingest, extract, serve, seed-demo."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus.store import CorpusStore
from .features import extract_features
from .score.musicxml import ScoreParseError, parse_mxl


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="notecorpus",
        description="Corpus analytics for symbolic sheet music.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="parse a directory of scores into a corpus")
    ingest.add_argument("source", help="directory of .mxl/.xml/.musicxml files")
    ingest.add_argument(
        "--corpus-dir",
        default=os.environ.get("CORPUS_DIR", "corpus"),
        help="corpus directory (default: $CORPUS_DIR or ./corpus)",
    )
    ingest.add_argument(
        "--public-domain-only",
        action="store_true",
        help="skip compositions whose composer died fewer than 70 years ago",
    )

    extract = sub.add_parser("extract", help="extract the feature vector of one file")
    extract.add_argument("file", help="path to a .mxl or .xml score")
    extract.add_argument("--json", action="store_true", help="print JSON")

    serve = sub.add_parser("serve", help="run the HTTP analytics API")
    serve.add_argument(
        "--port", type=int, default=int(os.environ.get("PORT", "8000"))
    )
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--corpus-dir",
        default=os.environ.get("CORPUS_DIR", "corpus"),
    )
    serve.add_argument(
        "--frontend-dir",
        default=None,
        help="serve a built workspace UI from this directory",
    )

    demo = sub.add_parser(
        "seed-demo", help="build a synthetic demo corpus with saved use cases"
    )
    demo.add_argument(
        "--corpus-dir",
        default=os.environ.get("CORPUS_DIR", "corpus"),
    )
    demo.add_argument("--seed", type=int, default=7)

    args = parser.parse_args(argv)
    if args.command == "ingest":
        return _cmd_ingest(args)
    if args.command == "extract":
        return _cmd_extract(args)
    if args.command == "serve":
        return _cmd_serve(args)
    if args.command == "seed-demo":
        return _cmd_seed_demo(args)
    return 2


def _cmd_ingest(args) -> int:
    store = CorpusStore(args.corpus_dir)
    report = store.ingest_directory(
        args.source, enforce_public_domain=args.public_domain_only
    )
    print(
        f"parsed {report.parsed_count}, duplicates {report.duplicate_count}, "
        f"failed {report.failed_count}, skipped {len(report.skipped)}"
    )
    for name, reason in report.failed:
        print(f"  failed {name}: {reason}", file=sys.stderr)
    return 0 if not report.failed else 1


def _cmd_extract(args) -> int:
    try:
        doc = parse_mxl(Path(args.file).read_bytes())
    except (OSError, ScoreParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    vector = extract_features(doc)
    if args.json:
        print(
            json.dumps(
                {
                    "title": doc.title,
                    "composer": doc.composer_name,
                    "values": vector.values,
                    "flags": sorted(vector.flags),
                },
                indent=1,
                sort_keys=True,
            )
        )
    else:
        for fid, value in vector.values.items():
            print(f"{fid}: {value:g}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    store = CorpusStore(args.corpus_dir)
    frontend = Path(args.frontend_dir) if args.frontend_dir else None
    app = create_app(store, frontend_dir=frontend)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _cmd_seed_demo(args) -> int:
    from .synth import seed_demo_corpus

    store, report = seed_demo_corpus(args.corpus_dir, seed=args.seed)
    print(
        f"seeded {report.parsed_count} compositions into {args.corpus_dir} "
        f"({len(store.list_use_cases())} use cases)"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
