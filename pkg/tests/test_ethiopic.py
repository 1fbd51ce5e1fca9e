import unicodedata
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from geeznorm.ethiopic import (
    MAIN_BLOCK,
    CharClass,
    LanguageAlphabet,
    Syllable,
    UnassignedCodepointError,
    classify,
    compose,
    decompose,
    family_members,
    foreign_chars,
    is_syllable_codepoint,
    load_alphabet,
    parse_alphabet,
)


def test_first_codepoint_is_family_zero():
    assert decompose("ሀ") == Syllable(0, 0)
    assert compose(0, 0) == "ሀ"


def test_lu_is_second_slot_of_la_row():
    la = decompose("ለ")
    assert decompose("ሉ") == Syllable(la.family, 1)


def test_latin_is_not_ethiopic():
    assert decompose("a") is None
    assert decompose("።") is None
    assert decompose("፩") is None


@pytest.mark.parametrize("cp", [0x1249, 0x124E, 0x1289, 0x12B1, 0x12C1, 0x1311])
def test_compose_reports_labiovelar_gaps(cp):
    fam, order = divmod(cp - 0x1200, 8)
    with pytest.raises(UnassignedCodepointError):
        compose(fam, order)


def test_compose_rejects_bad_arguments():
    with pytest.raises(ValueError):
        compose(0, 8)
    with pytest.raises(ValueError):
        compose(-1, 0)
    with pytest.raises(ValueError):
        compose(44, 0)  # U+1360, punctuation


def test_syllable_table_agrees_with_unicodedata():
    # independent check of the hard-coded gap table
    for cp in list(MAIN_BLOCK) + list(range(0x1380, 0x13A0)) + list(range(0x2D80, 0x2DE0)) + list(range(0xAB00, 0xAB30)):
        assert is_syllable_codepoint(cp) == (unicodedata.category(chr(cp)) == "Lo"), hex(cp)


def test_round_trip_main_block():
    n = 0
    for cp in MAIN_BLOCK:
        ch = chr(cp)
        syl = decompose(ch)
        if syl is None:
            continue
        assert 0 <= syl.order <= 7
        assert compose(*syl) == ch
        n += 1
    assert n == 326


@given(st.integers(0, 0x10FFFF))
def test_classification_is_a_partition(cp):
    ch = chr(cp)
    cls = classify(ch)
    assert isinstance(cls, CharClass)
    assert (cls is CharClass.SYLLABLE) == (decompose(ch) is not None)


def test_classify_examples():
    assert classify("።") is CharClass.PUNCTUATION
    assert classify("፡") is CharClass.PUNCTUATION
    assert classify("፨") is CharClass.PUNCTUATION
    assert classify("ሀ") is CharClass.SYLLABLE
    assert classify("ⶀ") is CharClass.SYLLABLE  # Ethiopic Extended
    assert classify("፩") is CharClass.DIGIT
    assert classify("፼") is CharClass.DIGIT
    assert classify(".") is CharClass.OTHER
    assert classify("፝") is CharClass.OTHER  # combining mark


def test_family_members_skips_gaps():
    assert family_members(decompose("ቈ").family) == list("ቈቊቋቌቍ")
    assert len(family_members(0)) == 8


@pytest.mark.parametrize("lang, size", [("amharic", 33), ("tigrinya", 32), ("geez", 26)])
def test_alphabet_sizes(lang, size):
    alpha = load_alphabet(lang)
    assert len(alpha.base_families) == size
    assert all(decompose(c) is not None for c in alpha.extra_chars)


def test_parse_alphabet_rejects_garbage():
    with pytest.raises(ValueError, match="line 2"):
        parse_alphabet("ሀ\nab\n", "x")
    alpha = parse_alphabet("# comment\nሀ  # h\n+ ቈ\n", "x")
    assert alpha.base_families == {0}
    assert "ቈ" in alpha and "ቊ" not in alpha and "ሁ" in alpha


def test_load_alphabet_from_path(tmp_path):
    p = tmp_path / "mini.txt"
    p.write_text("ሀ\nለ\n", "utf-8")
    alpha = load_alphabet(p)
    assert alpha.language == "mini" and len(alpha.base_families) == 2


def test_foreign_chars_geez():
    geez = load_alphabet("geez")
    text = "ሸጋ ቨላ ጨዋ ሀገር ቪ"
    assert foreign_chars(text, geez) == Counter({"ሸ": 1, "ቨ": 1, "ቪ": 1, "ጨ": 1})
    assert foreign_chars("", geez) == Counter()
    assert foreign_chars("ሀለሐመ abc ።", geez) == Counter()


def test_foreign_chars_empty_for_own_alphabet():
    for lang in ("amharic", "tigrinya", "geez"):
        alpha = load_alphabet(lang)
        text = "".join(ch for f in alpha.base_families for ch in family_members(f))
        assert foreign_chars(text, alpha) == Counter()
