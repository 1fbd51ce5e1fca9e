"""Ge'ez-script homophone normalization, corpus tooling and MT scoring."""

from .ethiopic import (
    CharClass,
    LanguageAlphabet,
    Syllable,
    classify,
    compose,
    decompose,
    foreign_chars,
    load_alphabet,
)
from .metrics import corpus_bleu, corpus_chrf, strip_punctuation, tokenize
from .normalize import (
    FamilyGroup,
    SchemeKind,
    SchemeTable,
    apply,
    build_scheme,
    expand_family_groups,
    select_canonical_by_frequency,
    validate,
)
from .corpus import (
    ParallelCorpus,
    char_coverage,
    count_homophone_chars,
    filter_by_homophones,
    load_parallel,
    split,
    vocab_stats,
)
from .pipeline import ScoreComparison, compare_report, score_lines, score_run

__version__ = "0.1.0"
