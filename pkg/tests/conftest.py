import random
import sys

import pytest
from hypothesis import strategies as st

from geeznorm.ethiopic import main_block_syllables
from geeznorm.normalize import SchemeKind, SchemeTable

SYLLABLES = main_block_syllables()
# rows that the shipped tables touch, so fuzzed text actually hits rules
HOMOPHONE_ROWS = "ሀሁሂሃሄህሆሐሑሒሓሔሕሖኀኁኂኃኄኅኆሰሱሲሳሴስሶሠሡሢሣሤሥሦአኡኢኣኤእኦዐዑዒዓዔዕዖጸጹጺጻጼጽጾፀፁፂፃፄፅፆ"
LABIAL = "ሉሙቱሩሱቁጹዋአጪኸኻቊኵ"

ethiopic_char = st.sampled_from(SYLLABLES)
rich_char = st.sampled_from(list(HOMOPHONE_ROWS + LABIAL + " "))
ethiopic_text = st.text(st.one_of(ethiopic_char, rich_char, st.just(" ")), max_size=40)


def random_ethiopic(rng: random.Random, length: int) -> str:
    pool = HOMOPHONE_ROWS + LABIAL
    out = []
    for _ in range(length):
        r = rng.random()
        if r < 0.15:
            out.append(" ")
        elif r < 0.75:
            out.append(rng.choice(pool))
        else:
            out.append(rng.choice(SYLLABLES))
    return "".join(out)


def random_char_table(rng: random.Random, n_rules: int, pool=None) -> SchemeTable:
    """A random chain-free char-only table over Ethiopic syllables."""
    pool = list(pool or SYLLABLES)
    rng.shuffle(pool)
    sources = pool[:n_rules]
    targets = pool[n_rules:] or pool[:1]
    rules = {s: rng.choice(targets) for s in sources}
    return SchemeTable("amharic", SchemeKind.H_ONLY, rules)


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split("] ")[1].split(".")[0])):
        terminalreporter.write_line(line)
