"""Walk through how Ethiopic syllables decompose into a consonant row and a vowel order."""

from geeznorm import ethiopic

word = "ሰላም"
for ch in word:
    syl = ethiopic.decompose(ch)
    print(ch, f"U+{ord(ch):04X}", "family", syl.family, "order", syl.order)

# the whole ሰ row, and the reserved slot in a labiovelar row
print("".join(ethiopic.family_members(ethiopic.decompose("ሰ").family)))
try:
    ethiopic.compose(ethiopic.decompose("ቈ").family, 7)
except ethiopic.UnassignedCodepointError as exc:
    print("gap:", exc)

for lang in ("amharic", "tigrinya", "geez"):
    alpha = ethiopic.load_alphabet(lang)
    print(lang, len(alpha.base_families), "base characters")

print(ethiopic.foreign_chars("ሸጋ ቨላ ጨዋ ሀገር", ethiopic.load_alphabet("geez")))
