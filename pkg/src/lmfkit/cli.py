"""Command-line interface.

Exit status: 0 when no errors were found, 1 for validation errors or a failed
query, 2 for usage errors and unreadable inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import LmfError, ParseError, ProfileSyntaxError
from .interchange import dumps
from .store import export_json, etym_trace, ingest, lookup, stats
from .tei import canonicalize, load_profile, parse_document, serialize_document
from .tei.profile import PROFILE_ENV

OK, FAILED, USAGE = 0, 1, 2


def _status(report) -> int:
    if any(d.code == "E-IO" for d in report.diagnostics):
        return USAGE
    return FAILED if report.errors else OK


def _emit(data, out=None):
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _complain(report):
    sys.stderr.write(report.render_text())


def cmd_validate(args, profile) -> int:
    _, report = ingest(args.files, profile)
    if args.format == "json":
        sys.stdout.write(report.render_json())
    else:
        sys.stdout.write(report.render_text())
        counts = report.counts
        sys.stdout.write(
            f"{len(args.files)} file(s): {counts['error']} error(s), "
            f"{counts['warning']} warning(s), {counts['info']} info\n"
        )
    return _status(report)


def cmd_convert(args, profile) -> int:
    try:
        data = Path(args.file).read_bytes()
    except OSError as exc:
        print(f"lmfkit: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return USAGE
    if args.canonical:
        if args.to != "tei":
            print("lmfkit: --canonical only applies to TEI output", file=sys.stderr)
            return USAGE
        try:
            _emit(canonicalize(data, profile), args.output)
        except ParseError as exc:
            sys.stderr.write("".join(d.render() + "\n" for d in exc.diagnostics))
            return FAILED
        return OK
    external = ()
    if args.corpus:
        store, report = ingest(args.corpus, profile)
        if report.errors:
            _complain(report)
            return _status(report)
        external = tuple(store.resource.id_index)
    parsed = parse_document(data, profile, filename=args.file, external_ids=external)
    if not parsed.ok:
        sys.stderr.write("".join(d.render() + "\n" for d in parsed.diagnostics))
        return FAILED
    if args.to == "json":
        _emit(dumps(parsed.value), args.output)
    else:
        _emit(serialize_document(parsed.value, profile, root=parsed.root), args.output)
    return OK


def _corpus(args, profile):
    store, report = ingest(args.corpus, profile)
    if report.errors:
        _complain(report)
    return store, report


def cmd_lookup(args, profile) -> int:
    store, report = _corpus(args, profile)
    hits = lookup(store, args.headword)
    for hit in hits:
        print(hit.render())
    if not hits:
        print(f"lmfkit: no entry for {args.headword!r}", file=sys.stderr)
    return _status(report)


def cmd_etym(args, profile) -> int:
    store, report = _corpus(args, profile)
    try:
        print(etym_trace(store, args.headword))
    except LmfError as exc:
        print(f"lmfkit: {exc}", file=sys.stderr)
        return max(FAILED, _status(report))
    return _status(report)


def cmd_stats(args, profile) -> int:
    store, report = _corpus(args, profile)
    result = stats(store)
    if args.format == "json":
        sys.stdout.write(json.dumps(result.as_dict(), sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(result.render_text())
    return _status(report)


def cmd_export(args, profile) -> int:
    store, report = _corpus(args, profile)
    if report.errors:
        return _status(report)
    _emit(export_json(store), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--profile", metavar="FILE",
        help=f"serialization profile file (default: ${PROFILE_ENV} or the built-in profile)",
    )
    parser = argparse.ArgumentParser(prog="lmfkit", description="LMF lexicon toolkit for constrained TEI dictionaries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate documents as one corpus")
    p.add_argument("files", nargs="+")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", parents=[common], help="re-serialize one document")
    p.add_argument("file")
    p.add_argument("--canonical", action="store_true", help="canonicalize the input without model mapping")
    p.add_argument("--to", choices=("tei", "json"), default="tei")
    p.add_argument("--corpus", nargs="+", metavar="FILE", help="documents whose ids the input may reference")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("lookup", parents=[common], help="find entries by lemma orthography")
    p.add_argument("headword")
    p.add_argument("--corpus", nargs="+", required=True, metavar="FILE")
    p.set_defaults(func=cmd_lookup)

    p = sub.add_parser("etym", parents=[common], help="print the etymological chain of a headword")
    p.add_argument("headword")
    p.add_argument("--corpus", nargs="+", required=True, metavar="FILE")
    p.set_defaults(func=cmd_etym)

    p = sub.add_parser("stats", parents=[common], help="corpus counts")
    p.add_argument("--corpus", nargs="+", required=True, metavar="FILE")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", parents=[common], help="write the corpus as interchange JSON")
    p.add_argument("--corpus", nargs="+", required=True, metavar="FILE")
    p.add_argument("-o", "--output", metavar="OUT")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        profile = load_profile(args.profile)
    except (OSError, ProfileSyntaxError) as exc:
        print(f"lmfkit: cannot load profile: {exc}", file=sys.stderr)
        return USAGE
    return args.func(args, profile)


if __name__ == "__main__":
    sys.exit(main())
