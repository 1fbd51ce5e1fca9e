"""Structural model of the Ge'ez (Ethiopic) script.

Every syllable codepoint is addressed as a ``(family, order)`` pair where
``family`` is the 8-codepoint row counted from U+1200 and ``order`` is the
slot inside that row. Labiovelar series sit in rows of their own, so the
arithmetic never needs a special case.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Union

ETHIOPIC_BASE = 0x1200
ROW_SIZE = 8

# Inclusive ranges holding syllables, with the unassigned slots of each.
_SYLLABLE_RANGES = (
    (0x1200, 0x135A),  # Ethiopic
    (0x1380, 0x138F),  # Ethiopic Supplement
    (0x2D80, 0x2DDE),  # Ethiopic Extended
    (0xAB01, 0xAB2E),  # Ethiopic Extended-A
    (0x1E7E0, 0x1E7FE),  # Ethiopic Extended-B
)
_GAPS = frozenset(
    [0x1249, 0x124E, 0x124F, 0x1257, 0x1259, 0x125E, 0x125F, 0x1289,
     0x128E, 0x128F, 0x12B1, 0x12B6, 0x12B7, 0x12BF, 0x12C1, 0x12C6,
     0x12C7, 0x12D7, 0x1311, 0x1316, 0x1317]
    + list(range(0x2D97, 0x2DA0))
    + [0x2DA7, 0x2DAF, 0x2DB7, 0x2DBF, 0x2DC7, 0x2DCF, 0x2DD7]
    + [0xAB07, 0xAB08, 0xAB0F, 0xAB10] + list(range(0xAB17, 0xAB20))
    + [0xAB27]
    + [0x1E7E7, 0x1E7EC, 0x1E7EF]
)

PUNCTUATION = {
    "፠": "section mark",
    "፡": "wordspace",
    "።": "full stop",
    "፣": "comma",
    "፤": "semicolon",
    "፥": "colon",
    "፦": "preface colon",
    "፧": "question mark",
    "፨": "paragraph separator",
}
_DIGITS = range(0x1369, 0x137D)

MAIN_BLOCK = range(0x1200, 0x1380)


class NotEthiopicError(ValueError):
    pass


class UnassignedCodepointError(ValueError):
    """The (family, order) slot is a hole in the Unicode chart."""


class Syllable(NamedTuple):
    family: int
    order: int

    @property
    def char(self) -> str:
        return compose(self.family, self.order)


class CharClass(str, enum.Enum):
    SYLLABLE = "syllable"
    PUNCTUATION = "ethiopic-punctuation"
    DIGIT = "ethiopic-digit"
    OTHER = "other"


def is_syllable_codepoint(cp: int) -> bool:
    if cp in _GAPS:
        return False
    return any(lo <= cp <= hi for lo, hi in _SYLLABLE_RANGES)


def is_syllable(ch: str) -> bool:
    return len(ch) == 1 and is_syllable_codepoint(ord(ch))


def decompose(ch: str) -> Optional[Syllable]:
    """Split a syllable into its row and vowel slot.

    Returns ``None`` for anything that is not an assigned Ethiopic syllable
    (Latin letters, Ethiopic punctuation and digits, unassigned slots).
    """
    if not is_syllable(ch):
        return None
    offset = ord(ch) - ETHIOPIC_BASE
    return Syllable(offset // ROW_SIZE, offset % ROW_SIZE)


def compose(family: int, order: int) -> str:
    if not 0 <= order < ROW_SIZE:
        raise ValueError(f"order must be in 0..7, got {order}")
    if family < 0:
        raise ValueError(f"family must be non-negative, got {family}")
    cp = ETHIOPIC_BASE + family * ROW_SIZE + order
    if not any(lo <= cp <= hi for lo, hi in _SYLLABLE_RANGES):
        raise ValueError(f"family {family} is outside the Ethiopic syllable ranges")
    if cp in _GAPS:
        raise UnassignedCodepointError(
            f"(family={family}, order={order}) is the unassigned codepoint U+{cp:04X}"
        )
    return chr(cp)


def try_compose(family: int, order: int) -> Optional[str]:
    try:
        return compose(family, order)
    except ValueError:
        return None


def family_of(ch: str) -> int:
    """Family index of a syllable; raises :class:`NotEthiopicError` otherwise."""
    syl = decompose(ch)
    if syl is None:
        raise NotEthiopicError(f"{ch!r} is not an Ethiopic syllable")
    return syl.family


def family_members(family: int) -> list[str]:
    """All assigned characters of a row, in order."""
    out = []
    for order in range(ROW_SIZE):
        ch = try_compose(family, order)
        if ch is not None:
            out.append(ch)
    return out


def classify(ch: str) -> CharClass:
    cp = ord(ch)
    if ch in PUNCTUATION:
        return CharClass.PUNCTUATION
    if cp in _DIGITS:
        return CharClass.DIGIT
    if is_syllable_codepoint(cp):
        return CharClass.SYLLABLE
    return CharClass.OTHER


def main_block_syllables() -> list[str]:
    return [chr(cp) for cp in MAIN_BLOCK if is_syllable_codepoint(cp)]


@dataclass(frozen=True)
class LanguageAlphabet:
    language: str
    base_families: frozenset
    extra_chars: frozenset = frozenset()

    def __contains__(self, ch: str) -> bool:
        if ch in self.extra_chars:
            return True
        syl = decompose(ch)
        return syl is not None and syl.family in self.base_families

    @property
    def base_chars(self) -> list[str]:
        return [compose(f, 0) for f in sorted(self.base_families)]


LANGUAGES = ("amharic", "tigrinya", "geez")


def parse_alphabet(text: str, language: str) -> LanguageAlphabet:
    """Parse an alphabet listing.

    One character per line. A bare character names a base family (its
    whole row is permitted). A line of the form ``+ X`` permits the single
    character ``X`` only. ``#`` starts a comment.
    """
    families: set[int] = set()
    extras: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        extra = line.startswith("+")
        if extra:
            line = line[1:].strip()
        if len(line) != 1 or decompose(line) is None:
            raise ValueError(f"{language}: line {lineno}: expected one Ethiopic syllable, got {line!r}")
        if extra:
            extras.add(line)
        else:
            families.add(family_of(line))
    return LanguageAlphabet(language, frozenset(families), frozenset(extras))


def load_alphabet(language_or_path: Union[str, Path]) -> LanguageAlphabet:
    """Load a shipped alphabet by language id, or any alphabet file by path.

    For a path, the language id is the file stem.
    """
    if isinstance(language_or_path, str) and language_or_path in LANGUAGES:
        language = language_or_path
        text = resources.files("geeznorm.data.alphabets").joinpath(f"{language}.txt").read_text("utf-8")
    else:
        path = Path(language_or_path)
        if not path.exists():
            raise ValueError(f"unknown language or missing alphabet file: {language_or_path}")
        language = path.stem
        text = path.read_text("utf-8")
    return parse_alphabet(text, language)


def foreign_chars(text: Iterable[str], lang: LanguageAlphabet) -> Counter:
    """Ethiopic syllables in ``text`` that the language does not use.

    ``text`` may be a string or any iterable of strings. Non-Ethiopic
    characters are ignored.
    """
    if isinstance(text, str):
        text = [text]
    counts: Counter = Counter()
    for line in text:
        for ch in line:
            if is_syllable(ch) and ch not in lang:
                counts[ch] += 1
    return counts
