"""Parallel corpus loading, homophone filtering, splitting and diagnostics."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .ethiopic import LanguageAlphabet, decompose, foreign_chars, is_syllable
from .normalize import FamilyGroup

PathLike = Union[str, Path]


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class ParallelCorpus:
    pairs: tuple
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        for i, (src, tgt) in enumerate(self.pairs):
            if "\n" in src or "\n" in tgt:
                raise CorpusError(f"pair {i} contains a line break")

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def sources(self) -> list[str]:
        return [s for s, _ in self.pairs]

    @property
    def targets(self) -> list[str]:
        return [t for _, t in self.pairs]


def read_lines(path: PathLike) -> list[str]:
    """Read a UTF-8 file as trimmed lines, dropping byte-order marks."""
    path = Path(path)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path}: invalid UTF-8 at byte {exc.start}") from None
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        return []
    return [line.replace("\ufeff", "").strip() for line in text.split("\n")]


def load_parallel(src_path: PathLike, tgt_path: Optional[PathLike] = None, meta: Optional[dict] = None) -> ParallelCorpus:
    """Load line-aligned files, or a two-column TSV when ``tgt_path`` is omitted."""
    meta = dict(meta or {})
    if tgt_path is None:
        pairs = []
        for lineno, line in enumerate(read_lines(src_path), 1):
            cols = line.split("\t")
            if len(cols) != 2:
                raise CorpusError(f"{src_path}:{lineno}: expected 2 tab-separated columns, found {len(cols)}")
            pairs.append((cols[0].strip(), cols[1].strip()))
        meta.setdefault("source", str(src_path))
        return ParallelCorpus(tuple(pairs), meta)
    src, tgt = read_lines(src_path), read_lines(tgt_path)
    if len(src) != len(tgt):
        raise CorpusError(f"line count mismatch: {src_path} has {len(src)} lines, {tgt_path} has {len(tgt)}")
    meta.setdefault("source", str(src_path))
    meta.setdefault("target", str(tgt_path))
    return ParallelCorpus(tuple(zip(src, tgt)), meta)


def homophone_families(groups: Sequence[FamilyGroup]) -> frozenset:
    return frozenset(f for g in groups for f in g.members)


def count_homophone_chars(text: str, groups: Sequence[FamilyGroup]) -> int:
    """Characters whose row belongs to any group, canonical rows included."""
    families = homophone_families(groups)
    count = 0
    for ch in text:
        syl = decompose(ch)
        if syl is not None and syl.family in families:
            count += 1
    return count


def filter_by_homophones(corpus: ParallelCorpus, side: str, groups: Sequence[FamilyGroup], min_count: int) -> ParallelCorpus:
    if min_count < 0:
        raise ValueError("min_count must be non-negative")
    if side not in ("source", "target"):
        raise ValueError(f"side must be 'source' or 'target', got {side!r}")
    idx = 0 if side == "source" else 1
    kept = tuple(p for p in corpus.pairs if count_homophone_chars(p[idx], groups) >= min_count)
    return replace(corpus, pairs=kept, meta={**corpus.meta, "filter": {"side": side, "min_count": min_count}})


def parse_ratios(text: str) -> tuple:
    parts = text.split(":")
    try:
        ratios = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"ratios must look like 8:1:1, got {text!r}") from None
    if len(ratios) != 3 or min(ratios) <= 0:
        raise ValueError(f"ratios must be three positive integers, got {text!r}")
    return ratios


def split_sizes(n: int, ratios: Sequence[int] = (8, 1, 1)) -> tuple:
    total = sum(ratios)
    n_train = n * ratios[0] // total
    n_eval = n * ratios[1] // total
    return n_train, n_eval, n - n_train - n_eval


def split(corpus: ParallelCorpus, ratios: Sequence[int] = (8, 1, 1), seed: int = 0) -> tuple:
    """Shuffle with a seeded generator, then cut into train/eval/test.

    The permutation is ``numpy.random.default_rng(seed).permutation(n)``
    (PCG64). Train and eval sizes are floored; the remainder goes to test.
    """
    if len(ratios) != 3 or min(ratios) <= 0:
        raise ValueError("ratios must be three positive numbers")
    n = len(corpus)
    if n < 3:
        raise CorpusError(f"need at least 3 pairs to split, got {n}")
    order = np.random.default_rng(seed).permutation(n)
    n_train, n_eval, _ = split_sizes(n, ratios)
    cuts = (order[:n_train], order[n_train : n_train + n_eval], order[n_train + n_eval :])
    names = ("train", "eval", "test")
    return tuple(
        ParallelCorpus(tuple(corpus.pairs[i] for i in part), {**corpus.meta, "split": name, "seed": seed})
        for name, part in zip(names, cuts)
    )


@dataclass
class CorpusStats:
    sentences: int
    tokens: int
    unique_words: int
    characters: int
    histogram: Counter

    def as_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "tokens": self.tokens,
            "unique_words": self.unique_words,
            "characters": self.characters,
            "histogram": dict(sorted(self.histogram.items())),
        }


def vocab_stats(texts: Iterable[str]) -> CorpusStats:
    """Whitespace tokens, distinct tokens and a histogram of non-space characters."""
    sentences = tokens = 0
    vocab: set = set()
    hist: Counter = Counter()
    for text in texts:
        sentences += 1
        toks = text.split()
        tokens += len(toks)
        vocab.update(toks)
        hist.update(c for c in text if not c.isspace())
    return CorpusStats(sentences, tokens, len(vocab), sum(hist.values()), hist)


@dataclass
class CoverageReport:
    missing_from_hyp: Counter
    foreign: Counter
    language: str

    def as_dict(self) -> dict:
        return {
            "language": self.language,
            "missing_from_hyp": dict(sorted(self.missing_from_hyp.items())),
            "foreign": dict(sorted(self.foreign.items())),
        }


def char_coverage(hyps: Iterable[str], refs: Iterable[str], lang: LanguageAlphabet) -> CoverageReport:
    """Syllables the references use but the hypotheses never produce, plus
    syllables the hypotheses produce that the language does not have.

    Missing characters are counted by their occurrences in the references.
    """
    hyps = list(hyps)
    hyp_chars = {c for line in hyps for c in line}
    ref_counts: Counter = Counter(c for line in refs for c in line if is_syllable(c))
    missing = Counter({c: k for c, k in ref_counts.items() if c not in hyp_chars})
    return CoverageReport(missing, foreign_chars(hyps, lang), lang.language)


def write_split(parts: Sequence[ParallelCorpus], src_out: PathLike, tgt_out: Optional[PathLike] = None) -> list[Path]:
    """Write ``<name>.train/.eval/.test``; TSV when ``tgt_out`` is omitted."""
    written = []
    for name, part in zip(("train", "eval", "test"), parts):
        if tgt_out is None:
            p = Path(f"{src_out}.{name}")
            p.write_text("".join(f"{s}\t{t}\n" for s, t in part.pairs), "utf-8")
            written.append(p)
        else:
            for base, lines in ((src_out, part.sources), (tgt_out, part.targets)):
                p = Path(f"{base}.{name}")
                p.write_text("".join(line + "\n" for line in lines), "utf-8")
                written.append(p)
    return written


def stats_to_csv(rows: Sequence[tuple]) -> str:
    """``rows`` are ``(run_label, CorpusStats)``; one CSV row per run."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["run", "sentences", "tokens", "unique_words", "characters"])
    for label, st in rows:
        w.writerow([label, st.sentences, st.tokens, st.unique_words, st.characters])
    return buf.getvalue()


def histogram_to_csv(hist: Counter) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["char", "codepoint", "count"])
    for ch, n in sorted(hist.items()):
        w.writerow([ch, f"U+{ord(ch):04X}", n])
    return buf.getvalue()


def coverage_to_csv(report: CoverageReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "char", "codepoint", "count"])
    for kind, counts in (("missing", report.missing_from_hyp), ("foreign", report.foreign)):
        for ch, n in sorted(counts.items()):
            w.writerow([kind, ch, f"U+{ord(ch):04X}", n])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=False)
