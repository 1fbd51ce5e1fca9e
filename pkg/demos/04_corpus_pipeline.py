"""Filter a synthetic parallel corpus by homophone density, split it and report stats."""

import random
import tempfile
from pathlib import Path

from geeznorm.corpus import ParallelCorpus, filter_by_homophones, split, vocab_stats, write_split
from geeznorm.normalize import SchemeKind, default_table_spec

rng = random.Random(0)
syllables = "ሀሐኀለመሰሠረቀበተነአዐከወዘየደገጠጸፀፈ"
pairs = [(f"sentence {i}", " ".join("".join(rng.choices(syllables, k=3)) for _ in range(rng.randint(2, 14))))
         for i in range(500)]
corpus = ParallelCorpus(tuple(pairs))

groups = default_table_spec(SchemeKind.H_ONLY, "amharic").groups
for threshold in (0, 9, 17):
    print("threshold", threshold, "keeps", len(filter_by_homophones(corpus, "target", groups, threshold)))

train, dev, test = split(corpus, (8, 1, 1), seed=42)
print("split sizes", len(train), len(dev), len(test))

with tempfile.TemporaryDirectory() as tmp:
    for path in write_split((train, dev, test), Path(tmp) / "toy.en", Path(tmp) / "toy.am"):
        print("wrote", path.name)

st = vocab_stats(train.targets)
print(st.tokens, "tokens,", st.unique_words, "types,", st.characters, "characters")
