"""Post-inference normalization scoring.

Each scheme is applied to hypotheses and references alike after
punctuation has been stripped, and BLEU/ChrF are compared with the
unnormalized baseline.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from . import metrics
from .corpus import CorpusError, read_lines
from .metrics import BleuReport, ChrfReport
from .normalize import SchemeKind, SchemeTable, TableValidationError, apply, identity_table, validate

NORM_SIDES = ("both", "hyp", "ref")


@dataclass
class SchemeScore:
    scheme: str
    table_hash: str
    bleu: BleuReport
    chrf: ChrfReport
    char_only: bool = True


@dataclass
class ScoreComparison:
    run_id: str
    entries: list
    params: dict = field(default_factory=dict)

    @property
    def baseline(self) -> SchemeScore:
        return self.entries[0]

    def bleu_delta(self, entry: SchemeScore) -> float:
        return entry.bleu.score - self.baseline.bleu.score

    def chrf_delta(self, entry: SchemeScore) -> float:
        return entry.chrf.score - self.baseline.chrf.score

    def entry(self, scheme: str) -> SchemeScore:
        for e in self.entries:
            if e.scheme == scheme:
                return e
        raise KeyError(scheme)

    def as_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "params": self.params,
            "entries": [
                {
                    "scheme": e.scheme,
                    "table_hash": e.table_hash,
                    "char_only": e.char_only,
                    "bleu": e.bleu.as_dict(),
                    "chrf": e.chrf.as_dict(),
                    "bleu_delta": self.bleu_delta(e),
                    "chrf_delta": self.chrf_delta(e),
                }
                for e in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ScoreComparison":
        entries = [
            SchemeScore(
                e["scheme"], e["table_hash"], BleuReport(**e["bleu"]), ChrfReport(**e["chrf"]), e["char_only"]
            )
            for e in doc["entries"]
        ]
        return cls(doc["run_id"], entries, doc.get("params", {}))


def _prepare(tables: Sequence[SchemeTable]) -> list[SchemeTable]:
    ordered = [t for t in tables if t.kind is not SchemeKind.IDENTITY]
    language = tables[0].language if tables else "unknown"
    for t in ordered:
        problems = validate(t)
        if problems:
            raise TableValidationError(problems)
    return [identity_table(language)] + ordered


def score_lines(
    hyps: Sequence[str],
    refs: Sequence[str],
    schemes: Sequence[SchemeTable],
    smoothing: str = "exp",
    run_id: str = "run",
    norm_side: str = "both",
    word_order: int = 0,
) -> ScoreComparison:
    """Score one hypothesis set under every scheme.

    Per scheme: strip punctuation, normalize (both sides by default),
    tokenize on whitespace, then corpus BLEU and ChrF. The identity scheme
    is always scored first as the baseline.
    """
    if len(hyps) != len(refs):
        raise CorpusError(f"line count mismatch: {len(hyps)} hypotheses vs {len(refs)} references")
    if norm_side not in NORM_SIDES:
        raise ValueError(f"norm_side must be one of {NORM_SIDES}")
    hyps = [metrics.strip_punctuation(h) for h in hyps]
    refs = [metrics.strip_punctuation(r) for r in refs]
    entries = []
    for table in _prepare(schemes):
        h = [apply(table, x) for x in hyps] if norm_side in ("both", "hyp") else hyps
        r = [apply(table, x) for x in refs] if norm_side in ("both", "ref") else refs
        pairs = list(zip(h, r))
        entries.append(
            SchemeScore(
                table.kind.value,
                table.content_hash(),
                metrics.corpus_bleu(pairs, smoothing=smoothing),
                metrics.corpus_chrf(pairs, word_order=word_order),
                table.is_char_only,
            )
        )
    params = metrics.parameter_block(smoothing=smoothing, word_order=word_order)
    params["norm_side"] = norm_side
    params["tables"] = {e.scheme: e.table_hash for e in entries}
    return ScoreComparison(run_id, entries, params)


def score_run(
    hyp_file: Union[str, Path],
    ref_file: Union[str, Path],
    schemes: Sequence[SchemeTable],
    smoothing: str = "exp",
    run_id: Optional[str] = None,
    **kwargs,
) -> ScoreComparison:
    hyps, refs = read_lines(hyp_file), read_lines(ref_file)
    if len(hyps) != len(refs):
        raise CorpusError(f"line count mismatch: {hyp_file} has {len(hyps)} lines, {ref_file} has {len(refs)}")
    return score_lines(hyps, refs, schemes, smoothing, run_id or Path(hyp_file).name, **kwargs)


REPORT_FORMATS = ("table", "csv", "json")
_COLUMNS = ("scheme", "BLEU", "ChrF", "dBLEU", "dChrF")


def _rows(comparison: ScoreComparison) -> list[tuple]:
    return [
        (e.scheme, e.bleu.score, e.chrf.score, comparison.bleu_delta(e), comparison.chrf_delta(e))
        for e in comparison.entries
    ]


def compare_report(comparison: ScoreComparison, format: str = "table") -> str:
    if format == "json":
        return json.dumps(comparison.as_dict(), ensure_ascii=False, indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["run_id", *_COLUMNS])
        for row in _rows(comparison):
            w.writerow([comparison.run_id, row[0], *(repr(x) for x in row[1:])])
        return buf.getvalue()
    if format == "table":
        lines = [f"run: {comparison.run_id}", "{:<10} {:>8} {:>8} {:>8} {:>8}".format(*_COLUMNS)]
        for scheme, bleu, chrf, db, dc in _rows(comparison):
            lines.append(f"{scheme:<10} {bleu:8.2f} {chrf:8.2f} {db:+8.2f} {dc:+8.2f}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r}; expected one of {REPORT_FORMATS}")


def parse_report(text: str) -> ScoreComparison:
    return ScoreComparison.from_dict(json.loads(text))
