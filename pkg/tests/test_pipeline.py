import json
import random

import pytest

from conftest import random_char_table, random_ethiopic
from geeznorm.corpus import CorpusError
from geeznorm.normalize import SchemeKind, SchemeTable, TableValidationError, build_scheme, identity_table
from geeznorm.pipeline import compare_report, parse_report, score_lines, score_run

H_ONLY = build_scheme("h-only", "amharic")
HSL = build_scheme("hsl", "amharic")


def test_self_scores_are_perfect():
    lines = ["ሰላም ነው።", "ዓይን አለ", "ጸሐይ ወጣ"]
    comp = score_lines(lines, lines, [H_ONLY, HSL])
    assert [e.scheme for e in comp.entries] == ["identity", "h-only", "hsl"]
    for e in comp.entries:
        assert e.bleu.score == 100.0 and e.chrf.score == 100.0
        assert comp.bleu_delta(e) == 0.0 and comp.chrf_delta(e) == 0.0


def test_homophone_swaps_recovered():
    refs = ["ዓይን አለ እዚህ ዛሬ", "ዐይኑ አየ ሰማይ"]
    hyps = ["ኣይን ዐለ እዚህ ዛሬ", "አይኑ ዐየ ሠማይ"]
    comp = score_lines(hyps, refs, [H_ONLY])
    assert comp.entry("h-only").bleu.score == 100.0
    assert comp.bleu_delta(comp.entry("h-only")) > 0
    assert comp.chrf_delta(comp.entry("h-only")) > 0


def test_identity_always_first():
    comp = score_lines(["ሀ"], ["ሀ"], [HSL, identity_table("amharic"), H_ONLY])
    assert [e.scheme for e in comp.entries] == ["identity", "hsl", "h-only"]


def test_superset_scheme_scores_at_least_as_high():
    rng = random.Random(11)
    for _ in range(30):
        refs = [random_ethiopic(rng, rng.randint(5, 30)) for _ in range(8)]
        hyps = [random_ethiopic(rng, rng.randint(5, 30)) for _ in range(8)]
        comp = score_lines(hyps, refs, [H_ONLY], smoothing="none")
        base, h = comp.entries
        assert h.bleu.score >= base.bleu.score
        assert h.chrf.score >= base.chrf.score


def test_report_formats(tmp_path):
    comp = score_lines(["ሀ ለ", "መ"], ["ሐ ለ", "መ"], [H_ONLY, HSL], run_id="r1")
    rows = compare_report(comp, "csv").splitlines()
    assert rows[0] == "run_id,scheme,BLEU,ChrF,dBLEU,dChrF"
    assert len(rows) == 1 + 3 and all(r.startswith("r1,") for r in rows[1:])
    back = parse_report(compare_report(comp, "json"))
    assert back.as_dict() == json.loads(json.dumps(comp.as_dict()))
    assert "h-only" in compare_report(comp, "table")
    with pytest.raises(ValueError):
        compare_report(comp, "xml")


def test_params_record_tables():
    comp = score_lines(["ሀ"], ["ሀ"], [H_ONLY])
    assert comp.params["tables"]["h-only"] == H_ONLY.content_hash()
    assert comp.params["bleu"]["smoothing"] == "exp"


def test_unvalidated_table_rejected():
    chained = SchemeTable("amharic", SchemeKind.H_ONLY, {"ሀ": "ሐ", "ሐ": "ኀ"})
    with pytest.raises(TableValidationError):
        score_lines(["ሀ"], ["ሀ"], [chained])


def test_line_mismatch(tmp_path):
    (tmp_path / "h").write_text("ሀ\nለ\n", "utf-8")
    (tmp_path / "r").write_text("ሀ\n", "utf-8")
    with pytest.raises(CorpusError, match="mismatch"):
        score_run(tmp_path / "h", tmp_path / "r", [H_ONLY])
    with pytest.raises(CorpusError):
        score_lines(["a"], [], [H_ONLY])


def test_norm_side_one_sided():
    comp = score_lines(["ዐ"], ["አ"], [H_ONLY], norm_side="hyp")
    assert comp.entry("h-only").chrf.score == 100.0
    comp = score_lines(["ዐ"], ["አ"], [H_ONLY], norm_side="ref")
    assert comp.entry("h-only").chrf.score == 0.0


def test_random_tables_accepted(rng):
    table = random_char_table(rng, 20)
    comp = score_lines(["ሀ ለ"], ["ሀ ለ"], [table])
    assert len(comp.entries) == 2
