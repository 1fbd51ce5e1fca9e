"""Corpus-level BLEU and ChrF.

Both metrics are computed from sufficient statistics that are summed over
sentences, so shards can be scored separately and merged with ``+``.

Default parameters (pinned; sacreBLEU names the same switches):

* BLEU: orders 1..4, exponential smoothing, effective order (orders for
  which the hypotheses have no n-grams at all are left out of the mean, so
  a short sentence scored against itself gets 100).
* ChrF: character orders 1..6, beta 2, whitespace ignored, no word n-grams.
  ``word_order=2`` gives the chrF++ variant.

Scores combine their terms in harmonic form, ``(1 + b²) / (b²/R + 1/P)``,
which keeps the floating-point result monotone in P and R.
"""

from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .ethiopic import CharClass, classify

BLEU_ORDER = 4
CHRF_ORDER = 6
CHRF_BETA = 2.0
SMOOTHING_METHODS = ("none", "exp")


def is_punctuation(ch: str) -> bool:
    return classify(ch) is CharClass.PUNCTUATION or unicodedata.category(ch).startswith("P")


def strip_punctuation(text: str) -> str:
    """Remove punctuation without gluing words together.

    A run of punctuation between two non-space characters becomes one space;
    a run touching whitespace or either end of the string is dropped.
    """
    out = []
    i, n = 0, len(text)
    while i < n:
        if not is_punctuation(text[i]):
            out.append(text[i])
            i += 1
            continue
        j = i
        while j < n and is_punctuation(text[j]):
            j += 1
        before = out[-1] if out else None
        after = text[j] if j < n else None
        if before is not None and after is not None and not before.isspace() and not after.isspace():
            out.append(" ")
        i = j
    return "".join(out)


def tokenize(text: str) -> list[str]:
    return text.split()


def ngrams(items: Sequence, n: int) -> Counter:
    return Counter(tuple(items[i : i + n]) for i in range(len(items) - n + 1))


@dataclass
class BleuStats:
    matches: list = field(default_factory=lambda: [0] * BLEU_ORDER)
    totals: list = field(default_factory=lambda: [0] * BLEU_ORDER)
    hyp_len: int = 0
    ref_len: int = 0

    def __add__(self, other: "BleuStats") -> "BleuStats":
        return BleuStats(
            [a + b for a, b in zip(self.matches, other.matches)],
            [a + b for a, b in zip(self.totals, other.totals)],
            self.hyp_len + other.hyp_len,
            self.ref_len + other.ref_len,
        )


def bleu_sentence_stats(hyp: str, ref: str, max_order: int = BLEU_ORDER) -> BleuStats:
    hyp_toks, ref_toks = tokenize(hyp), tokenize(ref)
    stats = BleuStats([0] * max_order, [0] * max_order, len(hyp_toks), len(ref_toks))
    for n in range(1, max_order + 1):
        h, r = ngrams(hyp_toks, n), ngrams(ref_toks, n)
        stats.matches[n - 1] = sum(min(c, r[g]) for g, c in h.items())
        stats.totals[n - 1] = max(len(hyp_toks) - n + 1, 0)
    return stats


@dataclass
class BleuReport:
    score: float
    precisions: list
    brevity_penalty: float
    hyp_len: int
    ref_len: int
    matches: list
    totals: list
    smoothing: str = "exp"
    effective_order: bool = True
    max_order: int = BLEU_ORDER

    def as_dict(self) -> dict:
        return asdict(self)


def _check_pairs(pairs) -> list:
    pairs = list(pairs)
    if not pairs:
        raise ValueError("cannot score an empty corpus")
    for i, pair in enumerate(pairs):
        if len(pair) != 2:
            raise ValueError(f"pair {i} is not a (hypothesis, reference) pair")
    return pairs


def bleu_from_stats(stats: BleuStats, smoothing: str = "exp", effective_order: bool = True) -> BleuReport:
    if smoothing not in SMOOTHING_METHODS:
        raise ValueError(f"unknown smoothing {smoothing!r}; expected one of {SMOOTHING_METHODS}")
    max_order = len(stats.totals)
    precisions = [0.0] * max_order
    if stats.hyp_len < stats.ref_len:
        bp = math.exp(1 - stats.ref_len / stats.hyp_len) if stats.hyp_len > 0 else 0.0
    else:
        bp = 1.0

    def report(score):
        return BleuReport(
            score, precisions, bp, stats.hyp_len, stats.ref_len, list(stats.matches),
            list(stats.totals), smoothing, effective_order, max_order,
        )

    if not any(stats.matches):
        return report(0.0)

    order = max_order
    k = 1.0
    for n in range(max_order):
        if stats.totals[n] == 0:
            break
        if effective_order:
            order = n + 1
        if stats.matches[n] > 0:
            precisions[n] = stats.matches[n] / stats.totals[n]
        elif smoothing == "exp":
            k *= 2
            precisions[n] = 1.0 / (k * stats.totals[n])

    used = precisions[:order]
    if min(used) <= 0.0:
        return report(0.0)
    log_mean = sum(math.log(p) for p in used) / order
    return report(100.0 * bp * math.exp(log_mean))


def corpus_bleu(pairs: Iterable[tuple], smoothing: str = "exp", effective_order: bool = True) -> BleuReport:
    """BLEU over ``(hypothesis, reference)`` pairs, one reference each.

    Texts are split on whitespace; strip punctuation beforehand.
    """
    pairs = _check_pairs(pairs)
    total = BleuStats()
    for hyp, ref in pairs:
        total = total + bleu_sentence_stats(hyp, ref)
    return bleu_from_stats(total, smoothing, effective_order)


@dataclass
class ChrfStats:
    # per order: [hyp n-grams, ref n-grams, matches]; character orders first, then word orders
    counts: list

    def __add__(self, other: "ChrfStats") -> "ChrfStats":
        return ChrfStats([[a + b for a, b in zip(x, y)] for x, y in zip(self.counts, other.counts)])


def _extract_words(text: str) -> list[str]:
    # chrF++ peels one punctuation mark off either end of a word
    words = []
    for tok in text.split():
        if len(tok) > 1 and is_punctuation(tok[-1]):
            words.extend([tok[:-1], tok[-1]])
        elif len(tok) > 1 and is_punctuation(tok[0]):
            words.extend([tok[0], tok[1:]])
        else:
            words.append(tok)
    return words


def chrf_sentence_stats(hyp: str, ref: str, char_order: int = CHRF_ORDER, word_order: int = 0) -> ChrfStats:
    counts = []
    hyp_chars = [c for c in hyp if not c.isspace()]
    ref_chars = [c for c in ref if not c.isspace()]
    for n in range(1, char_order + 1):
        h, r = ngrams(hyp_chars, n), ngrams(ref_chars, n)
        counts.append([sum(h.values()), sum(r.values()), sum(min(c, r[g]) for g, c in h.items())])
    if word_order:
        hyp_words, ref_words = _extract_words(hyp), _extract_words(ref)
        for n in range(1, word_order + 1):
            h, r = ngrams(hyp_words, n), ngrams(ref_words, n)
            counts.append([sum(h.values()), sum(r.values()), sum(min(c, r[g]) for g, c in h.items())])
    return ChrfStats(counts)


@dataclass
class ChrfReport:
    score: float
    precision: float
    recall: float
    beta: float
    char_order: int
    word_order: int
    effective_order: int
    order_precisions: list
    order_recalls: list
    counts: list

    def as_dict(self) -> dict:
        return asdict(self)


def f_beta(precision: float, recall: float, beta: float) -> float:
    if precision <= 0.0 or recall <= 0.0:
        return 0.0
    b2 = beta * beta
    return (1.0 + b2) / (b2 / recall + 1.0 / precision)


def chrf_from_stats(stats: ChrfStats, beta: float = CHRF_BETA, char_order: int = CHRF_ORDER, word_order: int = 0) -> ChrfReport:
    """Average P and R over the orders both sides have n-grams for, then F-beta."""
    precs, recs = [], []
    sum_p = sum_r = 0.0
    effective = 0
    for n_hyp, n_ref, n_match in stats.counts:
        p = n_match / n_hyp if n_hyp > 0 else 0.0
        r = n_match / n_ref if n_ref > 0 else 0.0
        precs.append(p)
        recs.append(r)
        if n_hyp > 0 and n_ref > 0:
            effective += 1
            sum_p += p
            sum_r += r
    if effective == 0:
        avg_p = avg_r = 0.0
    else:
        avg_p, avg_r = sum_p / effective, sum_r / effective
    score = 100.0 * f_beta(avg_p, avg_r, beta)
    return ChrfReport(
        score, avg_p, avg_r, beta, char_order, word_order, effective, precs, recs,
        [list(c) for c in stats.counts],
    )


def corpus_chrf(pairs: Iterable[tuple], beta: float = CHRF_BETA, max_order: int = CHRF_ORDER, word_order: int = 0) -> ChrfReport:
    pairs = _check_pairs(pairs)
    if beta <= 0:
        raise ValueError("beta must be positive")
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    total = None
    for hyp, ref in pairs:
        stats = chrf_sentence_stats(hyp, ref, max_order, word_order)
        total = stats if total is None else total + stats
    return chrf_from_stats(total, beta, max_order, word_order)


def parameter_block(smoothing: str = "exp", effective_order: bool = True, beta: float = CHRF_BETA,
                    char_order: int = CHRF_ORDER, word_order: int = 0) -> dict:
    return {
        "bleu": {"max_order": BLEU_ORDER, "smoothing": smoothing, "effective_order": effective_order,
                 "tokenize": "whitespace"},
        "chrf": {"char_order": char_order, "word_order": word_order, "beta": beta, "whitespace": False},
        "punctuation": "stripped before scoring",
    }
