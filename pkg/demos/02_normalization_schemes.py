"""Build the shipped normalization tables and apply them to a few sentences."""

from geeznorm.normalize import apply, build_scheme, dump_table

sentences = ["ዓይን አለው", "ኣይን ዐለው", "ሠላም ፀሐይ", "ኸበደ ሉዋም ጪስ"]

tables = {kind: build_scheme(kind, "amharic") for kind in ("identity", "h-only", "hsl")}
for text in sentences:
    print(" | ".join(f"{kind}: {apply(t, text)}" for kind, t in tables.items()))

# Picking targets from a corpus instead of the defaults in the table file.
corpus = ["ዐይን ዐለ ዐመት ፀሐይ ሰላም"] * 5
freq = build_scheme("h-only", "amharic", corpus=corpus)
print("corpus-picked:", apply(freq, "ዓይን አለው"))

print(dump_table(tables["h-only"])[:300])

try:
    build_scheme("hsl", "tigrinya")
except ValueError as exc:
    print("rejected:", exc)
