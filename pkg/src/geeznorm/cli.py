"""Command-line entry point: ``geeznorm <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import ethiopic, metrics, normalize, pipeline

log = logging.getLogger("geeznorm")


def _read_corpus_lines(path):
    if path is None:
        return None
    return corpus_mod.read_lines(path)


def _build(kind, lang, table=None, corpus_path=None):
    return normalize.build_scheme(kind, lang, corpus=_read_corpus_lines(corpus_path), table_file=table)


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="\n")


def _emit(text, path):
    out = _open_out(path)
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()


def _load(args):
    if args.tsv:
        return corpus_mod.load_parallel(args.tsv)
    if not (args.src and args.tgt):
        raise ValueError("give --tsv, or both --src and --tgt")
    return corpus_mod.load_parallel(args.src, args.tgt)


def cmd_normalize(args):
    table = _build(args.scheme, args.lang, args.table, args.corpus)
    src = sys.stdin if args.input in (None, "-") else open(args.input, encoding="utf-8", newline="")
    out = _open_out(args.output)
    try:
        for line in src:
            body = line.rstrip("\r\n")
            out.write(normalize.apply(table, body) + "\n")
    finally:
        if src is not sys.stdin:
            src.close()
        if out is not sys.stdout:
            out.close()


def _parse_tables(specs):
    tables = {}
    for item in specs or []:
        kind, sep, path = item.partition("=")
        if not sep:
            raise ValueError(f"--table for score takes SCHEME=PATH, got {item!r}")
        tables[normalize.SchemeKind.parse(kind)] = path
    return tables


def cmd_score(args):
    table_files = _parse_tables(args.table)
    corpus_lines = _read_corpus_lines(args.corpus)
    tables = []
    for name in args.post_norm.split(","):
        if not name.strip():
            continue
        kind = normalize.SchemeKind.parse(name)
        tables.append(normalize.build_scheme(kind, args.lang, corpus=corpus_lines, table_file=table_files.get(kind)))
    if not tables:
        tables = [normalize.identity_table(args.lang)]
    comparison = pipeline.score_run(
        args.hyp, args.ref, tables, smoothing=args.smoothing, run_id=args.run_id,
        norm_side=args.norm_side, word_order=args.chrf_word_order,
    )
    _emit(pipeline.compare_report(comparison, args.format), args.output)


def _groups_for(lang, table):
    if table is None or table == "default":
        spec = normalize.default_table_spec(normalize.SchemeKind.H_ONLY, lang)
    else:
        spec = normalize.load_table_file(table)
    return spec.groups


def cmd_filter(args):
    if args.lang == "geez" and args.table is None:
        raise ValueError("no default homophone groups for geez; pass --table")
    groups = _groups_for(args.lang, args.table)
    data = _load(args)
    kept = corpus_mod.filter_by_homophones(data, args.side, groups, args.threshold)
    log.info("kept %d of %d pairs", len(kept), len(data))
    if args.out_tsv:
        _emit("".join(f"{s}\t{t}\n" for s, t in kept.pairs), args.out_tsv)
    elif args.out_src and args.out_tgt:
        _emit("".join(s + "\n" for s in kept.sources), args.out_src)
        _emit("".join(t + "\n" for t in kept.targets), args.out_tgt)
    else:
        _emit("".join(f"{s}\t{t}\n" for s, t in kept.pairs), None)


def cmd_split(args):
    data = _load(args)
    ratios = corpus_mod.parse_ratios(args.ratios)
    parts = corpus_mod.split(data, ratios, args.seed)
    out_dir = Path(args.out_dir) if args.out_dir else None

    def target(p):
        p = Path(p)
        return (out_dir / p.name) if out_dir else p

    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    if args.tsv:
        written = corpus_mod.write_split(parts, target(args.tsv))
    else:
        written = corpus_mod.write_split(parts, target(args.src), target(args.tgt))
    for p in written:
        print(p)


def cmd_stats(args):
    rows = []
    for path in args.files:
        lines = corpus_mod.read_lines(path)
        if args.strip_punct:
            lines = [metrics.strip_punctuation(x) for x in lines]
        rows.append((str(path), corpus_mod.vocab_stats(lines)))
    if args.histogram:
        merged = sum((st.histogram for _, st in rows), corpus_mod.Counter())
        _emit(corpus_mod.histogram_to_csv(merged), args.histogram)
    if args.format == "csv":
        _emit(corpus_mod.stats_to_csv(rows), args.output)
    else:
        doc = {label: st.as_dict() for label, st in rows}
        _emit(corpus_mod.to_json(doc) + "\n", args.output)


def cmd_coverage(args):
    alphabet = ethiopic.load_alphabet(args.alphabet or args.lang)
    hyps, refs = corpus_mod.read_lines(args.hyp), corpus_mod.read_lines(args.ref)
    report = corpus_mod.char_coverage(hyps, refs, alphabet)
    if args.format == "csv":
        _emit(corpus_mod.coverage_to_csv(report), args.output)
    else:
        _emit(corpus_mod.to_json(report.as_dict()) + "\n", args.output)


def cmd_validate_table(args):
    spec = normalize.load_table_file(args.path)
    groups = spec.groups
    if args.corpus:
        groups = normalize.select_canonical_by_frequency(groups, _read_corpus_lines(args.corpus))
    elif any(g.target is None for g in groups):
        raise ValueError("groups without targets; pass --corpus to choose them by frequency")
    spec.groups = groups
    try:
        table = normalize.table_from_spec(spec)
    except ValueError as exc:
        print(f"{args.path}: {exc}", file=sys.stderr)
        return 1
    problems = normalize.validate(table)
    if problems:
        for p in problems:
            print(f"{args.path}: {p}", file=sys.stderr)
        return 1
    print(f"{args.path}: ok ({len(table.char_rules)} char rules, {len(table.seq_rules)} seq rules)")
    return 0


def _add_corpus_inputs(p):
    p.add_argument("--src", help="source side, one sentence per line")
    p.add_argument("--tgt", help="target side, line-aligned with --src")
    p.add_argument("--tsv", help="two-column TSV instead of --src/--tgt")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geeznorm", description="Ge'ez-script normalization and MT scoring tools")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    langs = list(normalize.SUPPORTED_SCHEMES)
    schemes = [k.value for k in normalize.SchemeKind]

    p = sub.add_parser("normalize", help="normalize text line by line")
    p.add_argument("--lang", required=True, choices=langs)
    p.add_argument("--scheme", required=True, choices=schemes)
    p.add_argument("--table", default=None, help="scheme table file, or 'default'")
    p.add_argument("--corpus", help="pick canonical characters by frequency in this file")
    p.add_argument("-i", "--input", help="input file (default stdin)")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("score", help="BLEU/ChrF with post-inference normalization")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--lang", required=True, choices=langs)
    p.add_argument("--post-norm", default="identity", help="comma list of schemes, e.g. identity,h-only,hsl")
    p.add_argument("--table", action="append", metavar="SCHEME=PATH", help="override a scheme's table file")
    p.add_argument("--corpus", help="pick canonical characters by frequency in this file")
    p.add_argument("--smoothing", choices=metrics.SMOOTHING_METHODS, default="exp")
    p.add_argument("--norm-side", choices=pipeline.NORM_SIDES, default="both",
                   help="diagnostic only: normalize one side")
    p.add_argument("--chrf-word-order", type=int, choices=(0, 2), default=0, help="2 gives chrF++")
    p.add_argument("--format", choices=pipeline.REPORT_FORMATS, default="table")
    p.add_argument("--run-id")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("filter", help="keep pairs with enough homophone characters")
    _add_corpus_inputs(p)
    p.add_argument("--lang", required=True, choices=langs)
    p.add_argument("--threshold", type=int, required=True)
    p.add_argument("--side", choices=("source", "target"), default="target")
    p.add_argument("--table", help="table file whose groups define homophones (default: the language's h-only table)")
    p.add_argument("--out-src")
    p.add_argument("--out-tgt")
    p.add_argument("--out-tsv")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("split", help="seeded train/eval/test split")
    _add_corpus_inputs(p)
    p.add_argument("--ratios", default="8:1:1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", help="write <name>.train/.eval/.test here instead of next to the input")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("stats", help="token, vocabulary and character counts")
    p.add_argument("files", nargs="+")
    p.add_argument("--strip-punct", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--histogram", help="also write a per-character CSV here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("coverage", help="missing and foreign characters in hypotheses")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--lang", choices=langs, default=None)
    p.add_argument("--alphabet", help="alphabet file instead of a shipped language")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("validate-table", help="check a scheme table file")
    p.add_argument("path")
    p.add_argument("--corpus", help="choose group targets by frequency in this file")
    p.set_defaults(func=cmd_validate_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "coverage" and not (args.lang or args.alphabet):
        parser.error("coverage needs --lang or --alphabet")
    try:
        return args.func(args) or 0
    except (ValueError, OSError) as exc:
        msg = str(exc).replace("\n", "; ")
        print(f"geeznorm {args.command}: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
