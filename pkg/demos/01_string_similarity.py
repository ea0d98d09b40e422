"""
Comparing word forms as strings
===============================

Inflection mostly happens at the end of a word, so the string half of the
distance uses Jaro-Winkler, which rewards a shared beginning. Each pair is
scored twice, once as written and once on the simplified variants, and the
two scores are averaged.
"""

from formclust import avg_jw, jaro, jaro_winkler, simplify, transliterate

# Simplification: case folding, ASCII folding, and dropping every vowel
# except a leading one.
for form in ["Praha", "Praze", "Prahou", "Ústí", "Oslo", "łódź", "東京"]:
    print(f"{form:8s} -> {transliterate(form.casefold())!r:10s} -> {simplify(form)!r}")

# %%
# Jaro counts characters that match within a sliding window and penalises
# transpositions; Winkler adds a bonus for up to four shared leading characters.
print(jaro("martha", "marhta"), jaro_winkler("martha", "marhta"))

# %%
# The averaged score is softer than either half: vowel alternations and
# diacritics stop mattering in the simplified half.
pairs = [("Praha", "Praze"), ("walk", "walked"), ("walk", "talk"), ("kůň", "koně"), ("go", "went")]
for a, b in pairs:
    raw = jaro_winkler(a, b)
    simp = jaro_winkler(simplify(a), simplify(b))
    print(f"{a:6s} {b:7s} raw {raw:.3f}  simplified {simp:.3f}  mean {avg_jw(a, b):.3f}")
