"""Score a toy hypothesis set before and after normalizing both sides."""

from geeznorm.normalize import build_scheme
from geeznorm.pipeline import compare_report, score_lines

refs = ["ዓይኑ ታመመ።", "ሰላም ነው፤ ፀሐይ ወጣ።", "ኸበደ ወደ ቤት ሄደ።"]
hyps = ["ኣይኑ ታመመ።", "ሠላም ነው ጸሀይ ወጣ።", "ሀበደ ወደ ቤት ሄደ።"]

schemes = [build_scheme("h-only", "amharic"), build_scheme("hsl", "amharic")]
comparison = score_lines(hyps, refs, schemes, run_id="toy")
print(compare_report(comparison, "table"))

hsl = comparison.entry("hsl")
print("HSL BLEU precisions:", [round(p, 3) for p in hsl.bleu.precisions])
